"""Quantum walks on edge spaces of weighted graphs, and the line purifier.

The walk lives on one basis vector per edge (boundary edges included).  Each
vertex contributes a "star state" with amplitude proportional to the square
root of each incident weight; the walk operator is the product of the two
reflections through the spans of the star states on the odd and even sides of
the bipartition.

The purifier is the special case of a path v_1..v_D whose internal edge l
has weight r**l with r = (1-p0)/p0, an entrance boundary edge of weight 1 at
v_1 and a terminal boundary edge of weight r**D at v_D.  Every star state on
that line is simply (sqrt(p0), sqrt(1-p0)) on its (left, right) edge pair, so
the operator can also be built directly from the coin bias; that direct form
stays well-conditioned for p0 arbitrarily close to (or exactly at) 0 and 1,
where the literal edge weights would over- or underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg

from .errors import (
    BadParameter,
    DimensionMismatch,
    IsolatedVertex,
    NotBipartite,
    NumericalFailure,
    PromiseViolation,
)
from .graphs import WeightedGraph, effective_resistance, total_weight
from .states import StateVector, UnitaryMatrix, basis_state

EIGENVALUE_ONE_TOL = 1e-8

EdgeLabel = tuple[int, "int | None"]  # (u, v) internal with u < v, (u, None) boundary


@dataclass(frozen=True)
class EdgeSpace:
    """Indexed basis of all internal plus all (positive-weight) boundary edges."""

    graph: WeightedGraph
    basis: tuple[EdgeLabel, ...] = field(init=False)

    def __post_init__(self):
        internal = [(u, v) for u, v, _ in self.graph.edges]
        bound = [(u, None) for u in sorted(self.graph.boundary)]
        basis = tuple(internal) + tuple(bound)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(basis)})

    @property
    def dim(self) -> int:
        return len(self.basis)

    def edge_index(self, u: int, v: int) -> int:
        return self._index[(min(u, v), max(u, v))]

    def boundary_index(self, u: int) -> int:
        return self._index[(u, None)]


def star_state(space: EdgeSpace, u: int) -> StateVector:
    """Normalized amplitudes sqrt(w) on every edge incident to u."""
    graph = space.graph
    vec = np.zeros(space.dim)
    for v, w in graph.neighbors(u):
        vec[space.edge_index(u, v)] = math.sqrt(w)
    if u in graph.boundary:
        vec[space.boundary_index(u)] = math.sqrt(graph.boundary[u])
    norm = np.linalg.norm(vec)
    if norm == 0.0:
        raise IsolatedVertex(f"vertex {u} has no incident edges")
    return StateVector(vec / norm)


def _bipartition(graph: WeightedGraph) -> dict[int, int]:
    """Two-color the internal edges; raises NotBipartite on an odd cycle."""
    color: dict[int, int] = {}
    for root in range(graph.n):
        if root in color:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for v, _ in graph.neighbors(u):
                if v not in color:
                    color[v] = color[u] ^ 1
                    stack.append(v)
                elif color[v] == color[u]:
                    raise NotBipartite(f"odd cycle through edge ({u},{v})")
    return color


@dataclass(frozen=True)
class WalkOperator:
    """One walk step: reflection through odd stars after reflection through even."""

    unitary: UnitaryMatrix
    parts: tuple[UnitaryMatrix, UnitaryMatrix]  # (even-side, odd-side)


def _reflection(columns: list[np.ndarray], dim: int) -> np.ndarray:
    if not columns:
        return -np.eye(dim)
    v = np.column_stack(columns)
    return 2.0 * (v @ v.T) - np.eye(dim)


def build_walk_operator(space: EdgeSpace) -> WalkOperator:
    """Two-reflection walk operator over the graph's bipartition."""
    color = _bipartition(space.graph)
    sides: tuple[list[np.ndarray], list[np.ndarray]] = ([], [])
    for u in range(space.graph.n):
        if not space.graph.neighbors(u) and u not in space.graph.boundary:
            continue  # vertex without edges contributes no star
        sides[color[u]].append(star_state(space, u).amplitudes.real)
    r_even = _reflection(sides[0], space.dim)
    r_odd = _reflection(sides[1], space.dim)
    try:
        return WalkOperator(
            unitary=UnitaryMatrix(r_odd @ r_even),
            parts=(UnitaryMatrix(r_even), UnitaryMatrix(r_odd)),
        )
    except ValueError as exc:  # star states degenerate beyond tolerance
        raise NumericalFailure(f"walk operator failed unitarity check: {exc}")


@dataclass(frozen=True)
class PurifierLine:
    """The weighted line encoding a coin with bias p0 toward the entrance."""

    p0: float
    epsilon: float
    D: int
    graph: WeightedGraph


def _check_epsilon(epsilon) -> None:
    if not 0 < epsilon < 0.5:
        raise BadParameter(f"epsilon must lie in (0, 1/2), got {epsilon!r}")


def purifier_line(p0, epsilon, D: int) -> PurifierLine:
    """Build the line graph with geometric weights r**l, r = (1-p0)/p0."""
    if not 0 < p0 < 1:
        raise BadParameter(f"p0 must lie in (0, 1), got {p0!r}")
    _check_epsilon(epsilon)
    if not isinstance(D, (int, np.integer)) or D < 2:
        raise BadParameter(f"D must be an integer >= 2, got {D!r}")
    ratio = (1 - p0) / p0
    try:
        weights = [float(ratio ** level) for level in range(1, D + 1)]
    except OverflowError:
        weights = [math.inf]
    if not all(w > 0 and math.isfinite(w) for w in weights):
        raise BadParameter(
            f"weights ((1-p0)/p0)**l are not representable for p0={p0!r}, D={D}")
    edges = tuple((level - 1, level, weights[level - 1]) for level in range(1, D))
    boundary = {0: 1.0, D - 1: weights[D - 1]}
    graph = WeightedGraph(n=D, edges=edges, boundary=boundary)
    return PurifierLine(p0=p0, epsilon=epsilon, D=int(D), graph=graph)


def purifier_walk_operator(p0, D: int) -> WalkOperator:
    """Walk operator of the purifier line, built directly from the coin bias.

    Identical to build_walk_operator(EdgeSpace(purifier_line(...).graph)) —
    every star state on the line is (sqrt(p0), sqrt(1-p0)) on its left/right
    edge pair — but defined for the closed interval p0 in [0, 1].

    Basis layout matches EdgeSpace: internal edges first (edge l at index
    l-1), then the entrance boundary at index D-1 and the terminal at D.
    """
    if not 0 <= p0 <= 1:
        raise BadParameter(f"p0 must lie in [0, 1], got {p0!r}")
    if not isinstance(D, (int, np.integer)) or D < 2:
        raise BadParameter(f"D must be an integer >= 2, got {D!r}")
    dim = D + 1
    amp_left, amp_right = math.sqrt(p0), math.sqrt(1 - p0)

    def edge_index(level: int) -> int:
        if level == 0:
            return D - 1  # entrance boundary
        if level == D:
            return D  # terminal boundary
        return level - 1

    sides: tuple[list[np.ndarray], list[np.ndarray]] = ([], [])
    for vertex in range(D):
        star = np.zeros(dim)
        star[edge_index(vertex)] = amp_left
        star[edge_index(vertex + 1)] = amp_right
        sides[vertex % 2].append(star)
    r_even = _reflection(sides[0], dim)
    r_odd = _reflection(sides[1], dim)
    return WalkOperator(
        unitary=UnitaryMatrix(r_odd @ r_even),
        parts=(UnitaryMatrix(r_even), UnitaryMatrix(r_odd)),
    )


def _decay_ratio(epsilon):
    return epsilon / (1 - epsilon)


def purifier_complexity(epsilon, D: int) -> float:
    """sqrt(W_max * R_max) where both extremes are the same geometric sum.

    The worst rejecting-case total weight (at p0 = 1-epsilon) and the worst
    accepting-case effective resistance (at p0 = epsilon) both equal
    sum_{l=1}^{D-1} (epsilon/(1-epsilon))**l.
    """
    _check_epsilon(epsilon)
    if not isinstance(D, (int, np.integer)) or D < 1:
        raise BadParameter(f"D must be a positive integer, got {D!r}")
    q = _decay_ratio(epsilon)
    w_max = sum(q ** level for level in range(1, D))
    r_max = w_max
    return math.sqrt(float(w_max * r_max))


def perturbation_bound(epsilon, D: int) -> float:
    """(epsilon/(1-epsilon))**D — the terminal boundary-weight ceiling.

    Exact when epsilon is handed in as a Fraction (arithmetic stays in the
    caller's numeric type until the final float conversion).
    """
    _check_epsilon(epsilon)
    if not isinstance(D, (int, np.integer)) or D < 1:
        raise BadParameter(f"D must be a positive integer, got {D!r}")
    return float(_decay_ratio(epsilon) ** D)


def stationary_overlap(op: WalkOperator, initial: StateVector) -> float:
    """Squared overlap of `initial` with the eigenvalue-1 eigenspace of the walk.

    Ordered complex Schur decomposition clusters the eigenvalues within
    EIGENVALUE_ONE_TOL of 1; for a unitary (normal) operator the leading
    Schur vectors are an orthonormal basis of that eigenspace.
    """
    if initial.dim != op.unitary.dim:
        raise DimensionMismatch(
            f"state dim {initial.dim} != operator dim {op.unitary.dim}")
    try:
        _, vectors, sdim = scipy.linalg.schur(
            np.asarray(op.unitary.entries),
            output="complex",
            sort=lambda z: abs(z - 1.0) <= EIGENVALUE_ONE_TOL,
        )
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericalFailure(f"Schur decomposition failed: {exc}")
    if sdim == 0:
        return 0.0
    projected = vectors[:, :sdim].conj().T @ initial.amplitudes
    return float(min(1.0, np.real(np.vdot(projected, projected))))


@lru_cache(maxsize=None)
def default_decision_threshold(epsilon, D: int) -> float:
    """Midpoint of the overlap statistic at the two promise extremes."""
    _check_epsilon(epsilon)
    entrance = basis_state(D + 1, D - 1)
    accepting = stationary_overlap(purifier_walk_operator(epsilon, D), entrance)
    rejecting = stationary_overlap(purifier_walk_operator(1 - epsilon, D), entrance)
    return 0.5 * (accepting + rejecting)


def decide_purifier(p0, epsilon, D: int, threshold: float | None = None) -> int:
    """1 (accept) iff the walk's stationary overlap clears the threshold.

    The promise requires p0 <= epsilon (accepting coin) or p0 >= 1 - epsilon
    (rejecting coin).  With the default calibrated threshold the decision is
    correct on both promise sides.
    """
    _check_epsilon(epsilon)
    if not 0 <= p0 <= 1:
        raise BadParameter(f"p0 must lie in [0, 1], got {p0!r}")
    if epsilon < p0 < 1 - epsilon:
        raise PromiseViolation(
            f"p0={p0!r} is on neither promise side for epsilon={epsilon!r}")
    op = purifier_walk_operator(p0, D)
    statistic = stationary_overlap(op, basis_state(D + 1, D - 1))
    cut = default_decision_threshold(epsilon, D) if threshold is None else threshold
    return 1 if statistic >= cut else 0


def purifier_record(p0, epsilon, D: int) -> dict:
    """One experiment row: electric quantities plus the walk decision."""
    line = purifier_line(p0, epsilon, D)
    op = purifier_walk_operator(p0, D)
    statistic = stationary_overlap(op, basis_state(D + 1, D - 1))
    decision = int(statistic >= default_decision_threshold(epsilon, D))
    return {
        "p0": float(p0),
        "epsilon": float(epsilon),
        "D": int(D),
        "W": total_weight(line.graph),
        "R": effective_resistance(line.graph, 0, D - 1),
        "complexity": purifier_complexity(epsilon, D),
        "perturbation_bound": perturbation_bound(epsilon, D),
        "overlap": statistic,
        "decision": decision,
    }
