"""qcompose: desk-scale simulators for composing exact quantum algorithms.

Five layers, importable a la carte:

- states: normalized state vectors, unitaries, the uniform +/-1 transform.
- promise: the constant-vs-balanced and one-sided-zero promise problems, the
  zero-error sampler, exit-probability enumeration, majority-vote errors.
- graphs: weighted graphs with optional boundary weights, flows, effective
  resistance, exact and Monte-Carlo hitting times, the commute identity.
- walks: edge-space walk operators from star-state reflections, the weighted
  line purifier, spectral decision statistics.
- composition: cost models and the early-stopping composition experiment.

The `qcompose` console script (see cli.py) drives the same code paths.
"""

from .composition import (
    FULL,
    ComposedRunResult,
    CostProfile,
    classical_avg_cost,
    majority_vs_purifier_table,
    profile_from_json,
    profile_to_json,
    quantum_naive_cost,
    quantum_walk_cost,
    run_composed_dj_h,
    run_dj,
)
from .errors import (
    BadArity,
    BadDimension,
    BadParameter,
    BadRepetitionCount,
    BoundaryPresent,
    DimensionMismatch,
    Disconnected,
    EmptyGraph,
    IndexOutOfRange,
    InvalidProfile,
    IsolatedVertex,
    NotBipartite,
    NumericalFailure,
    ParseError,
    PromiseViolation,
    QComposeError,
    SameVertex,
    ZeroVector,
)
from .graphs import (
    Flow,
    HittingTimes,
    WeightedGraph,
    commute_identity_residual,
    effective_resistance,
    graph_from_json,
    graph_to_json,
    hitting_time_exact,
    hitting_time_mc,
    hitting_times,
    min_energy_flow,
    total_weight,
)
from .promise import (
    ComposedInstance,
    GInput,
    HInput,
    LasVegasTrace,
    exit_within_prob,
    expected_steps_exact,
    g_eval,
    h_eval,
    h_first_step_exit_prob,
    instance_from_json,
    instance_to_json,
    las_vegas_h,
    las_vegas_h_with_order,
    majority_vote_error,
    structured_counterexample,
)
from .states import (
    StateVector,
    UnitaryMatrix,
    apply_phase_oracle,
    basis_probability,
    basis_state,
    hadamard_transform,
    l2_distance,
    make_state,
    uniform_transform,
)
from .walks import (
    EdgeSpace,
    PurifierLine,
    WalkOperator,
    build_walk_operator,
    decide_purifier,
    default_decision_threshold,
    perturbation_bound,
    purifier_complexity,
    purifier_line,
    purifier_record,
    purifier_walk_operator,
    star_state,
    stationary_overlap,
)

__version__ = "0.1.0"
