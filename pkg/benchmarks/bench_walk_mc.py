"""Benchmark the Monte-Carlo hitting-time kernel: compiled vs pure Python.

Runs the same seeded workload through both backends (they produce
bit-identical step counts by construction) and reports wall-clock times.

    python3 benchmarks/bench_walk_mc.py [--trials 200000] [--n 64]
"""

import argparse
import time

import numpy as np

from qcompose._kernels import walk_mc_py
from qcompose.graphs import WeightedGraph, _transition_csr

try:
    from qcompose._kernels._walk_mc import sample_hitting_times as compiled
except ImportError:
    compiled = None


def ring_with_chords(n: int) -> WeightedGraph:
    edges = [(i, (i + 1) % n, 1.0 + (i % 3)) for i in range(n)]
    edges += [(i, (i + n // 2) % n, 0.5) for i in range(0, n, 4)]
    canon = {(min(u, v), max(u, v)): w for u, v, w in edges}
    return WeightedGraph(
        n=n, edges=tuple((u, v, w) for (u, v), w in canon.items()), boundary={})


def timed(func, *args):
    start = time.perf_counter()
    result = func(*args)
    return result, time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=200_000)
    parser.add_argument("--n", type=int, default=64)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    graph = ring_with_chords(args.n)
    indptr, neighbor, cumprob = _transition_csr(graph)
    start, target = 0, args.n // 2

    py_steps, py_time = timed(
        walk_mc_py.sample_hitting_times, indptr, neighbor, cumprob,
        start, target, args.trials, np.random.default_rng(args.seed))
    print(f"pure python : {py_time:8.3f} s   "
          f"({args.trials / py_time:,.0f} walks/s, mean steps {py_steps.mean():.2f})")

    if compiled is None:
        print("compiled    : not built (install ran without a C toolchain)")
        return

    cy_steps, cy_time = timed(
        compiled, indptr, neighbor, cumprob,
        start, target, args.trials, np.random.default_rng(args.seed))
    print(f"compiled    : {cy_time:8.3f} s   "
          f"({args.trials / cy_time:,.0f} walks/s, mean steps {cy_steps.mean():.2f})")
    print(f"speedup     : {py_time / cy_time:8.1f}x   "
          f"bit-identical: {np.array_equal(py_steps, cy_steps)}")


if __name__ == "__main__":
    main()
