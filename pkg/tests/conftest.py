import numpy as np
import pytest

from qcompose.graphs import WeightedGraph


def random_connected_graph(rng: np.random.Generator, n: int) -> WeightedGraph:
    """Random spanning tree plus a few extra edges, weights in [0.1, 10)."""
    edges = {}
    order = rng.permutation(n)
    for i in range(1, n):
        u, v = int(order[rng.integers(0, i)]), int(order[i])
        edges[(min(u, v), max(u, v))] = float(rng.uniform(0.1, 10.0))
    for _ in range(int(rng.integers(0, n))):
        u, v = int(rng.integers(0, n)), int(rng.integers(0, n))
        if u != v:
            edges.setdefault((min(u, v), max(u, v)),
                             float(rng.uniform(0.1, 10.0)))
    return WeightedGraph(
        n=n,
        edges=tuple((u, v, w) for (u, v), w in sorted(edges.items())),
        boundary={},
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
