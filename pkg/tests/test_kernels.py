import os
import subprocess
import sys

import numpy as np
import pytest

from qcompose._kernels import BACKEND, walk_mc_py
from qcompose.graphs import WeightedGraph, _transition_csr

from conftest import random_connected_graph

try:
    from qcompose._kernels._walk_mc import sample_hitting_times as compiled
except ImportError:  # pragma: no cover
    compiled = None

needs_compiled = pytest.mark.skipif(
    compiled is None, reason="compiled kernel not built")


def csr_for(graph):
    return _transition_csr(graph)


class TestPurePython:
    def test_single_edge_walk_is_one_step(self):
        g = WeightedGraph(n=2, edges=((0, 1, 1.0),), boundary={})
        steps = walk_mc_py.sample_hitting_times(
            *csr_for(g), 0, 1, 100, np.random.default_rng(0))
        assert steps.dtype == np.int64
        assert np.all(steps == 1)

    def test_start_at_target(self):
        g = WeightedGraph(n=2, edges=((0, 1, 1.0),), boundary={})
        steps = walk_mc_py.sample_hitting_times(
            *csr_for(g), 1, 1, 10, np.random.default_rng(0))
        assert np.all(steps == 0)

    def test_dead_end_raises(self):
        # 0 -> 1, vertex 1 has no outgoing edges, target 2 is unreachable
        indptr = np.array([0, 1, 1, 1], dtype=np.int64)
        neighbor = np.array([1], dtype=np.int64)
        cumprob = np.array([1.0])
        with pytest.raises(ValueError):
            walk_mc_py.sample_hitting_times(
                indptr, neighbor, cumprob, 0, 2, 1, np.random.default_rng(0))

    def test_long_walks_cross_chunk_refills(self):
        # expected hitting time ~ n**2 forces many more draws than one chunk
        n = 40
        g = WeightedGraph(
            n=n, edges=tuple((i, i + 1, 1.0) for i in range(n - 1)),
            boundary={})
        steps = walk_mc_py.sample_hitting_times(
            *csr_for(g), 0, n - 1, 200, np.random.default_rng(3))
        assert steps.min() >= n - 1
        assert steps.mean() > (n - 1) ** 2 / 2


@needs_compiled
class TestCompiledBackend:
    def test_import_selected_it(self):
        assert BACKEND == "cython"

    @pytest.mark.parametrize("seed", [0, 1, 7])
    def test_bit_identical_to_pure_python(self, seed, rng):
        for _ in range(5):
            g = random_connected_graph(rng, int(rng.integers(2, 9)))
            args = csr_for(g)
            a = compiled(*args, 0, g.n - 1, 4096,
                         np.random.default_rng(seed))
            b = walk_mc_py.sample_hitting_times(
                *args, 0, g.n - 1, 4096, np.random.default_rng(seed))
            assert np.array_equal(a, b)

    def test_dead_end_raises(self):
        indptr = np.array([0, 1, 1, 1], dtype=np.int64)
        neighbor = np.array([1], dtype=np.int64)
        cumprob = np.array([1.0])
        with pytest.raises(ValueError):
            compiled(indptr, neighbor, cumprob, 0, 2, 1,
                     np.random.default_rng(0))


class TestBackendSelection:
    def test_env_override_forces_pure_python(self):
        code = ("import qcompose._kernels as k; print(k.BACKEND)")
        env = dict(os.environ, QCOMPOSE_PURE_PYTHON="1")
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True, check=True)
        assert out.stdout.strip() == "python"

    def test_hitting_time_mc_same_result_under_override(self):
        g = WeightedGraph(n=3, edges=((0, 1, 1.0), (1, 2, 2.0)), boundary={})
        code = (
            "from qcompose.graphs import WeightedGraph, hitting_time_mc\n"
            "g = WeightedGraph(n=3, edges=((0, 1, 1.0), (1, 2, 2.0)), "
            "boundary={})\n"
            "print(repr(hitting_time_mc(g, 0, 2, seed=5, trials=2000)))\n")
        results = set()
        for force in ("0", "1"):
            env = dict(os.environ, QCOMPOSE_PURE_PYTHON=force)
            out = subprocess.run([sys.executable, "-c", code], env=env,
                                 capture_output=True, text=True, check=True)
            results.add(out.stdout.strip())
        assert len(results) == 1
