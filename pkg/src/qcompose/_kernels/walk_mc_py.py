"""Pure-Python twin of the compiled random-walk kernel.

Must match `_walk_mc.pyx` decision for decision: uniforms are drawn from the
generator in chunks of CHUNK and consumed one per step, and each step moves
to the first neighbor whose cumulative transition probability exceeds the
uniform.  Keeping the consumption order identical makes the two backends
produce bit-identical walks for the same seeded generator.
"""

from bisect import bisect_right

import numpy as np

CHUNK = 65536


def sample_hitting_times(indptr, neighbor, cumprob, start, target, trials, rng):
    """Step counts of `trials` walks from start until first arrival at target.

    indptr/neighbor/cumprob describe the walk in CSR form; cumprob rows are
    cumulative transition probabilities whose last entry is pinned to 1.0.
    """
    rows = []
    for u in range(len(indptr) - 1):
        lo, hi = int(indptr[u]), int(indptr[u + 1])
        rows.append((cumprob[lo:hi].tolist(), neighbor[lo:hi].tolist()))
    out = np.empty(trials, dtype=np.int64)
    chunk = rng.random(CHUNK)
    pos = 0
    for trial in range(trials):
        v = start
        steps = 0
        while v != target:
            if pos == CHUNK:
                chunk = rng.random(CHUNK)
                pos = 0
            u = chunk[pos]
            pos += 1
            probs, nbrs = rows[v]
            if not probs:
                raise ValueError(f"walk reached dead-end vertex {v}")
            v = nbrs[bisect_right(probs, u)]
            steps += 1
        out[trial] = steps
    return out
