"""Weighted undirected graphs with boundary edges, flows, and hitting times.

A boundary edge hangs off a single vertex (its other end is open); it carries
weight but is not part of the edge set proper, so total weight, flows, and the
classical random walk all ignore it.  Effective resistance comes from a dense
grounded-Laplacian solve, which also yields the optimal unit flow; hitting
times come from the usual first-step linear system.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ._kernels import sample_hitting_times
from .errors import (
    BadParameter,
    BoundaryPresent,
    Disconnected,
    EmptyGraph,
    ParseError,
    SameVertex,
)


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph, positive edge weights, optional boundary weights."""

    n: int
    edges: tuple[tuple[int, int, float], ...]
    boundary: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise EmptyGraph(f"need at least two vertices, got n={self.n!r}")
        canonical = []
        seen = set()
        for entry in self.edges:
            u, v, w = entry
            u, v, w = int(u), int(v), float(w)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) outside vertex range")
            if not (w > 0 and np.isfinite(w)):
                raise ValueError(f"edge ({u},{v}) needs a positive finite weight")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            canonical.append((key[0], key[1], w))
        if not canonical:
            raise EmptyGraph("graph has no edges")
        canonical.sort()
        boundary = {}
        for u, w in dict(self.boundary).items():
            u, w = int(u), float(w)
            if not 0 <= u < self.n:
                raise ValueError(f"boundary vertex {u} outside range")
            if w < 0 or not np.isfinite(w):
                raise ValueError(f"boundary weight at {u} must be >= 0 and finite")
            if w > 0:
                boundary[u] = w
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(canonical))
        object.__setattr__(self, "boundary", boundary)
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for u, v, w in canonical:
            adj[u].append((v, w))
            adj[v].append((u, w))
        for row in adj:
            row.sort()
        object.__setattr__(self, "_adj", adj)

    def neighbors(self, u: int) -> list[tuple[int, float]]:
        return list(self._adj[u])

    @property
    def has_boundary(self) -> bool:
        return bool(self.boundary)

    def weight_matrix(self) -> np.ndarray:
        mat = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            mat[u, v] = w
            mat[v, u] = w
        return mat

    def laplacian(self) -> np.ndarray:
        mat = -self.weight_matrix()
        np.fill_diagonal(mat, -mat.sum(axis=1))
        return mat

    def component_of(self, v: int) -> frozenset[int]:
        """Vertices reachable from v along internal edges."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} outside range")
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for nbr, _ in self._adj[u]:
                if nbr not in seen:
                    seen.add(nbr)
                    queue.append(nbr)
        return frozenset(seen)

    def is_connected(self) -> bool:
        return len(self.component_of(0)) == self.n


@dataclass(frozen=True)
class Flow:
    """A unit flow from source to sink together with its energy."""

    source: int
    sink: int
    theta: dict[tuple[int, int], float]
    energy: float

    def value(self, u: int, v: int) -> float:
        return self.theta.get((u, v), 0.0)


@dataclass(frozen=True)
class HittingTimes:
    """Expected steps to reach `target` from every vertex in its component."""

    target: int
    values: dict[int, float]


def total_weight(graph: WeightedGraph) -> float:
    """Sum of internal edge weights; boundary edges do not count."""
    if not graph.edges:
        raise EmptyGraph("graph has no edges")
    return float(sum(w for _, _, w in graph.edges))


def _shared_component(graph: WeightedGraph, s: int, t: int) -> list[int]:
    if s == t:
        raise SameVertex(f"source and sink are both {s}")
    comp = graph.component_of(s)
    if t not in comp:
        raise Disconnected(f"vertices {s} and {t} are not connected")
    return sorted(comp)


def min_energy_flow(graph: WeightedGraph, s: int, t: int) -> Flow:
    """The unit s-t flow minimizing sum theta(e)^2 / w_e.

    Solves the weighted-Laplacian system for vertex potentials with the sink
    grounded, then reads the flow off the potential differences.
    """
    vertices = _shared_component(graph, s, t)
    index = {u: i for i, u in enumerate(vertices)}
    lap = graph.laplacian()[np.ix_(vertices, vertices)]
    keep = [i for i, u in enumerate(vertices) if u != t]
    rhs = np.zeros(len(keep))
    rhs[keep.index(index[s])] = 1.0
    solution = np.linalg.solve(lap[np.ix_(keep, keep)], rhs)
    potential = {u: 0.0 for u in vertices}
    for i, idx in enumerate(keep):
        potential[vertices[idx]] = float(solution[i])
    theta: dict[tuple[int, int], float] = {}
    energy = 0.0
    for u, v, w in graph.edges:
        if u not in index:
            continue
        flow = w * (potential[u] - potential[v])
        theta[(u, v)] = flow
        theta[(v, u)] = -flow
        energy += flow * flow / w
    return Flow(source=s, sink=t, theta=theta, energy=float(energy))


def effective_resistance(graph: WeightedGraph, s: int, t: int) -> float:
    """Minimum unit-flow energy between s and t."""
    return min_energy_flow(graph, s, t).energy


def hitting_times(graph: WeightedGraph, target: int) -> HittingTimes:
    """Expected steps of the weighted walk to reach `target`, per start vertex.

    The walk moves along internal edges with probability proportional to the
    edge weight; boundary edges are excluded.
    """
    comp = sorted(graph.component_of(target))
    index = {u: i for i, u in enumerate(comp)}
    others = [u for u in comp if u != target]
    if not others:
        raise Disconnected(f"target {target} has no reachable companions")
    weights = graph.weight_matrix()[np.ix_(comp, comp)]
    transition = weights / weights.sum(axis=1, keepdims=True)
    rows = [index[u] for u in others]
    system = np.eye(len(others)) - transition[np.ix_(rows, rows)]
    expected = np.linalg.solve(system, np.ones(len(others)))
    values = {target: 0.0}
    values.update({u: float(expected[i]) for i, u in enumerate(others)})
    return HittingTimes(target=target, values=values)


def hitting_time_exact(graph: WeightedGraph, u: int, target: int) -> float:
    """Expected steps from u to target under the weighted random walk."""
    if u == target:
        return 0.0
    comp = graph.component_of(target)
    if u not in comp:
        raise Disconnected(f"vertices {u} and {target} are not connected")
    return hitting_times(graph, target).values[u]


def _transition_csr(graph: WeightedGraph):
    """CSR-style arrays for the internal-edge walk: indptr, neighbor, cumprob."""
    indptr = np.zeros(graph.n + 1, dtype=np.int64)
    neighbor: list[int] = []
    cumprob: list[float] = []
    for u in range(graph.n):
        row = graph._adj[u]
        indptr[u + 1] = indptr[u] + len(row)
        if row:
            weights = np.array([w for _, w in row])
            cums = np.cumsum(weights / weights.sum())
            cums[-1] = 1.0  # pin so u ~ U[0,1) always lands inside the row
            neighbor.extend(v for v, _ in row)
            cumprob.extend(cums)
    return indptr, np.array(neighbor, dtype=np.int64), np.array(cumprob)


def hitting_time_mc(graph: WeightedGraph, u: int, target: int,
                    seed: int, trials: int) -> tuple[float, float]:
    """Monte-Carlo estimate (mean, stderr) of the hitting time from u to target."""
    if trials < 1:
        raise BadParameter(f"trials must be >= 1, got {trials!r}")
    if target not in graph.component_of(u):
        raise Disconnected(f"vertices {u} and {target} are not connected")
    indptr, neighbor, cumprob = _transition_csr(graph)
    rng = np.random.default_rng(seed)
    steps = sample_hitting_times(indptr, neighbor, cumprob, u, target, trials, rng)
    mean = float(np.mean(steps))
    stderr = float(np.std(steps, ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return mean, stderr


def commute_identity_residual(graph: WeightedGraph, s: int, t: int) -> float:
    """Relative defect of H_st + H_ts = 2 * W * R on a boundary-free graph."""
    if graph.has_boundary:
        raise BoundaryPresent("commute identity is stated for ordinary graphs")
    if not graph.is_connected():
        raise Disconnected("commute identity needs a connected graph")
    h_st = hitting_time_exact(graph, s, t)
    h_ts = hitting_time_exact(graph, t, s)
    reference = 2.0 * total_weight(graph) * effective_resistance(graph, s, t)
    return abs(h_st + h_ts - reference) / max(1.0, reference)


# --- JSON graph format -----------------------------------------------------

def graph_to_json(graph: WeightedGraph) -> str:
    payload = {
        "n": graph.n,
        "edges": [[u, v, w] for u, v, w in graph.edges],
        "boundary": {str(u): w for u, w in sorted(graph.boundary.items())},
    }
    return json.dumps(payload, indent=2) + "\n"


def graph_from_json(text: str) -> WeightedGraph:
    """Parse {"n": int, "edges": [[u,v,w],...], "boundary": {"v": w}} JSON."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid graph JSON: {exc}") from exc
    if not isinstance(payload, dict) or "n" not in payload or "edges" not in payload:
        raise ParseError("graph JSON needs fields 'n' and 'edges'")
    if not isinstance(payload["n"], int):
        raise ParseError("'n' must be an integer")
    edges = payload["edges"]
    if not isinstance(edges, list) or not all(
            isinstance(e, list) and len(e) == 3 for e in edges):
        raise ParseError("'edges' must be a list of [u, v, weight] triples")
    boundary_raw = payload.get("boundary", {})
    if not isinstance(boundary_raw, dict):
        raise ParseError("'boundary' must map vertex to weight")
    try:
        boundary = {int(k): float(v) for k, v in boundary_raw.items()}
        parsed = [(int(u), int(v), float(w)) for u, v, w in edges]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed graph entries: {exc}") from exc
    # semantically invalid graphs (self-loops, bad weights, ...) surface as
    # validation errors from the constructor, not as parse errors
    return WeightedGraph(n=payload["n"], edges=tuple(parsed), boundary=boundary)
