# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled random-walk stepper; see walk_mc_py.py for the reference twin.

The RNG contract is shared with the fallback: uniforms come from the caller's
numpy Generator in chunks of CHUNK, consumed one per step, and the step picks
the first neighbor whose cumulative probability strictly exceeds the uniform.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef Py_ssize_t CHUNK = 65536


def sample_hitting_times(cnp.int64_t[::1] indptr, cnp.int64_t[::1] neighbor,
                         double[::1] cumprob, Py_ssize_t start,
                         Py_ssize_t target, Py_ssize_t trials, object rng):
    """Step counts of `trials` walks from start until first arrival at target."""
    out = np.empty(trials, dtype=np.int64)
    cdef cnp.int64_t[::1] out_view = out
    cdef double[::1] chunk = rng.random(CHUNK)
    cdef Py_ssize_t pos = 0
    cdef Py_ssize_t trial, v, lo, hi, mid, base
    cdef cnp.int64_t steps
    cdef double u
    for trial in range(trials):
        v = start
        steps = 0
        while v != target:
            if pos == CHUNK:
                chunk = rng.random(CHUNK)
                pos = 0
            u = chunk[pos]
            pos += 1
            base = indptr[v]
            lo = base
            hi = indptr[v + 1]
            if lo == hi:
                raise ValueError(f"walk reached dead-end vertex {v}")
            # first index with cumprob > u (cumprob rows end at exactly 1.0)
            while lo < hi:
                mid = (lo + hi) >> 1
                if cumprob[mid] > u:
                    hi = mid
                else:
                    lo = mid + 1
            v = neighbor[lo]
            steps += 1
        out_view[trial] = steps
    return out
