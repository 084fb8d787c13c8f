"""Groverian (geometric) entanglement of small qubit registers.

Computes the maximal squared overlap of an n-qubit pure state with fully
separable states (multi-start alternating solver plus brute-force and
Schmidt-value oracles), the closed forms for symmetric families, the
stationarity analysis exposing why a popular angle-substitution shortcut
overestimates that maximum, and entanglement traces through Grover search.
"""

from .analytic import AnalyticResult, groverian_from_pmax, pmax_dicke, pmax_gghz, pmax_w
from .grover import (
    TRACE_CSV_HEADER,
    GroverConfig,
    TraceRow,
    diffusion_apply,
    iterate_states,
    optimal_iterations,
    oracle_apply,
    run_trace,
    success_probability_closed_form,
    trace_to_csv,
)
from .refutation import (
    ConstraintSearchReport,
    FlawedMaximum,
    InfeasibleTransform,
    JVector,
    JZeroSolution,
    TransformedAngles,
    canonical_angle,
    constraint4_residual,
    constraint4_sums,
    constraint5_search,
    flawed_max_ghz,
    ghz_objective_3param,
    ghz_objective_4param,
    hyperplane_residual,
    inverse_transform,
    j_vector,
    j_vector_shifted_cosine,
    refutation_report,
    sign_resolved_min_residual,
    substitution_identity_check,
    transform_to_wxyz,
)
from .solver import (
    PmaxResult,
    SolverConfig,
    ascent_history,
    gradient_real,
    groverian,
    objective_real,
    pmax_alternating,
    pmax_gridsearch,
)
from .states import (
    NormalizationError,
    ProductState,
    PureState,
    RealAngles,
    SingleQubitState,
    apply_single_qubit_unitary,
    basis_state,
    dicke,
    environment_vector,
    ghz,
    gghz,
    load_state_json,
    make_family,
    overlap,
    permute_qubits,
    random_single_qubit_unitary,
    random_state,
    real_angles_to_product,
    save_state_json,
    schmidt_pmax_2qubit,
    state_from_dict,
    state_to_dict,
    uniform,
    w,
)

__all__ = [
    "AnalyticResult",
    "TRACE_CSV_HEADER",
    "ConstraintSearchReport",
    "FlawedMaximum",
    "GroverConfig",
    "InfeasibleTransform",
    "JVector",
    "JZeroSolution",
    "NormalizationError",
    "PmaxResult",
    "ProductState",
    "PureState",
    "RealAngles",
    "SingleQubitState",
    "SolverConfig",
    "TraceRow",
    "TransformedAngles",
    "apply_single_qubit_unitary",
    "ascent_history",
    "basis_state",
    "canonical_angle",
    "constraint4_residual",
    "constraint4_sums",
    "constraint5_search",
    "dicke",
    "diffusion_apply",
    "environment_vector",
    "flawed_max_ghz",
    "ghz",
    "gghz",
    "ghz_objective_3param",
    "ghz_objective_4param",
    "gradient_real",
    "groverian",
    "groverian_from_pmax",
    "hyperplane_residual",
    "inverse_transform",
    "iterate_states",
    "j_vector",
    "j_vector_shifted_cosine",
    "load_state_json",
    "make_family",
    "objective_real",
    "optimal_iterations",
    "oracle_apply",
    "overlap",
    "permute_qubits",
    "pmax_alternating",
    "pmax_dicke",
    "pmax_gghz",
    "pmax_gridsearch",
    "pmax_w",
    "random_single_qubit_unitary",
    "random_state",
    "real_angles_to_product",
    "refutation_report",
    "run_trace",
    "save_state_json",
    "schmidt_pmax_2qubit",
    "sign_resolved_min_residual",
    "state_from_dict",
    "state_to_dict",
    "substitution_identity_check",
    "success_probability_closed_form",
    "trace_to_csv",
    "transform_to_wxyz",
    "uniform",
    "w",
]
