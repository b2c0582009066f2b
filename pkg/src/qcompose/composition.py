"""Cost models for composed algorithms and the early-stopping experiment.

The cost side is plain arithmetic over a profile of subroutine times: the
classical average-case formula, the naive quantum formula that pays the
maximum subroutine time per query, and the walk-based formula that pays the
amplitude-weighted average (reported with its hidden constant set to 1 so the
three live on one scale).

The experiment side runs the single-query constant-vs-balanced algorithm
exactly, and then re-runs it with each query replaced by the inner
subroutine's amplitude model: if the subroutine is stopped after t steps,
branch i contributes exited amplitude sqrt(P_i(t)) carrying the sign
(-1)**h(block_i), and the not-yet-exited mass is simply absent from the final
transform.  Letting t grow to FULL recovers the exact algorithm; stopping
early leaves a nonzero accept amplitude on balanced instances.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import BadDimension, BadParameter, InvalidProfile, ParseError
from .promise import (
    ComposedInstance,
    GInput,
    exit_within_prob,
    h_eval,
    majority_vote_error,
)
from .states import (
    apply_phase_oracle,
    basis_probability,
    basis_state,
    hadamard_transform,
    uniform_transform,
)
from .walks import perturbation_bound, purifier_complexity

ROW_SUM_TOL = 1e-12


class _Full:
    """Sentinel for "let every branch finish" in run_composed_dj_h."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FULL"


FULL = _Full()


@dataclass(frozen=True)
class CostProfile:
    """Q queries, N subroutines with times T_i, extra work L, Q x N weights."""

    Q: int
    subroutine_times: tuple[float, ...]
    L: float
    weights: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if not isinstance(self.Q, (int, np.integer)) or self.Q < 1:
            raise InvalidProfile(f"Q must be a positive integer, got {self.Q!r}")
        try:
            times = tuple(float(t) for t in self.subroutine_times)
            level = float(self.L)
            rows = tuple(tuple(float(x) for x in row) for row in self.weights)
        except (TypeError, ValueError) as exc:
            raise InvalidProfile(f"non-numeric profile entry: {exc}") from exc
        if not times or any(t < 0 or not math.isfinite(t) for t in times):
            raise InvalidProfile("subroutine times must be finite and >= 0")
        if level < 0 or not math.isfinite(level):
            raise InvalidProfile(f"L must be finite and >= 0, got {self.L!r}")
        if len(rows) != self.Q or any(len(row) != len(times) for row in rows):
            raise InvalidProfile(
                f"weights must be a {self.Q} x {len(times)} matrix")
        for j, row in enumerate(rows):
            if any(x < 0 for x in row):
                raise InvalidProfile(f"weights row {j} has a negative entry")
            if abs(sum(row) - 1.0) > ROW_SUM_TOL:
                raise InvalidProfile(f"weights row {j} sums to {sum(row)}, not 1")
        object.__setattr__(self, "Q", int(self.Q))
        object.__setattr__(self, "subroutine_times", times)
        object.__setattr__(self, "L", level)
        object.__setattr__(self, "weights", rows)


def classical_avg_cost(profile: CostProfile) -> float:
    """Average-case cost: sum_j sum_i weights[j][i] * T_i + L."""
    total = sum(w * t
                for row in profile.weights
                for w, t in zip(row, profile.subroutine_times))
    return float(total + profile.L)


def quantum_naive_cost(profile: CostProfile) -> float:
    """Worst-branch cost: Q * max_i T_i + L."""
    return float(profile.Q * max(profile.subroutine_times) + profile.L)


def quantum_walk_cost(profile: CostProfile) -> float:
    """Amplitude-weighted cost, hidden constant reported as 1.

    Identical formula (and float result) to classical_avg_cost by design, so
    the naive-vs-walk gap is exactly the max-vs-average gap.
    """
    return classical_avg_cost(profile)


def run_dj(x: GInput | str) -> float:
    """Accept probability of the exact single-query algorithm on input x.

    Transform, phase oracle, transform again, then read the probability of
    the all-zeros outcome: 1 on constant inputs, 0 on balanced ones.
    """
    if not isinstance(x, GInput):
        x = GInput(x)
    if x.m < 2 or x.m & (x.m - 1):
        raise BadDimension(f"input length must be a power of two, got {x.m}")
    state = hadamard_transform(basis_state(x.m, 0))
    state = apply_phase_oracle(state, x.bits)
    state = hadamard_transform(state)
    return basis_probability(state, 0)


@dataclass(frozen=True)
class ComposedRunResult:
    stop_time: object  # positive int or FULL
    accept_amplitude: float
    accept_probability: float
    exited_mass: float


def run_composed_dj_h(inst: ComposedInstance, stop_time) -> ComposedRunResult:
    """Outer single-query run with inner subroutines cut off at stop_time.

    Branch i carries amplitude sign_i * sqrt(P_i) / sqrt(m) into the final
    transform, where P_i is the exact probability that the inner zero-error
    algorithm on block i has terminated within stop_time steps and sign_i is
    (-1)**h(block_i); mass still inside a subroutine is excluded.
    """
    arity = inst.outer_arity
    if arity < 2 or arity & (arity - 1):
        raise BadDimension(f"outer arity must be a power of two, got {arity}")
    if stop_time is FULL:
        exit_probs = [1.0] * arity
    else:
        if not isinstance(stop_time, (int, np.integer)) or stop_time < 1:
            raise BadParameter(
                f"stop_time must be a positive integer or FULL, got {stop_time!r}")
        exit_probs = [exit_within_prob(b, int(stop_time)) for b in inst.blocks]
    signs = [-1.0 if h_eval(b) else 1.0 for b in inst.blocks]
    exited = np.array([s * math.sqrt(p) / math.sqrt(arity)
                       for s, p in zip(signs, exit_probs)])
    final = uniform_transform(arity).entries @ exited
    amplitude = float(final[0].real)
    return ComposedRunResult(
        stop_time=stop_time if stop_time is FULL else int(stop_time),
        accept_amplitude=amplitude,
        accept_probability=amplitude * amplitude,
        exited_mass=float(np.mean(exit_probs)),
    )


def majority_vs_purifier_table(epsilon, target_perturbations) -> list[dict]:
    """Per target error delta: minimal majority votes vs. purifier overhead.

    Majority pays k calls for error <= delta; the purifier pays a constant
    bounded by 1/(1 - epsilon/(1-epsilon)) while its depth D absorbs delta.
    Rows are sorted by delta descending.
    """
    if not 0 < epsilon < 0.5:
        raise BadParameter(f"epsilon must lie in (0, 1/2), got {epsilon!r}")
    targets = list(target_perturbations)
    if not targets:
        raise BadParameter("need at least one target perturbation")
    for delta in targets:
        if not 0 < delta < 0.5:
            raise BadParameter(f"targets must lie in (0, 1/2), got {delta!r}")
    rows = []
    for delta in sorted(targets, key=float, reverse=True):
        k = 1
        while majority_vote_error(k, epsilon) > delta:
            k += 2
        depth = 1
        while perturbation_bound(epsilon, depth) > delta:
            depth += 1
        rows.append({
            "delta": float(delta),
            "majority_k": k,
            "majority_error": majority_vote_error(k, epsilon),
            "purifier_D": depth,
            "perturbation": perturbation_bound(epsilon, depth),
            "purifier_overhead": purifier_complexity(epsilon, depth),
        })
    return rows


# --- JSON profile format ----------------------------------------------------

def profile_to_json(profile: CostProfile) -> str:
    payload = {
        "Q": profile.Q,
        "subroutine_times": list(profile.subroutine_times),
        "L": profile.L,
        "weights": [list(row) for row in profile.weights],
    }
    return json.dumps(payload, indent=2) + "\n"


def profile_from_json(text: str) -> CostProfile:
    """Parse {"Q": int, "subroutine_times": [...], "L": x, "weights": [[...]]}."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid profile JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ParseError("profile JSON must be an object")
    missing = {"Q", "subroutine_times", "L", "weights"} - payload.keys()
    if missing:
        raise ParseError(f"profile JSON missing fields: {sorted(missing)}")
    try:
        return CostProfile(
            Q=payload["Q"],
            subroutine_times=tuple(payload["subroutine_times"]),
            L=payload["L"],
            weights=tuple(tuple(row) for row in payload["weights"]),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed profile entries: {exc}") from exc
