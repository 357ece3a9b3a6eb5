"""Statevector toolkit for Grover search dynamics and the Groverian measure."""

__version__ = "0.1.0"

from .entanglement import (
    MeasureResult,
    OptimizerOptions,
    entropy_from_pmax,
    groverian_measure,
    p_max_balanced,
    p_max_generalized_ghz,
    p_max_two_qubit,
    p_max_w,
)
from .grover_engine import (
    GroverSchedule,
    MarkedSet,
    TrajectoryPoint,
    diffusion_apply,
    grover_step,
    optimal_iterations,
    oracle_apply,
    run,
    success_probability,
    success_probability_estimate,
)
from .qstate import (
    ProductAngles,
    RegisterState,
    fidelity,
    hadamard_transform,
    inner_product,
    load_state,
    overlap_gradient,
    overlap_probability,
    product_amplitudes,
    save_state,
)
from .state_zoo import (
    MixSpec,
    RandomStateSpec,
    balanced_state,
    eta,
    eta_ghz_mix,
    even_odd_mix,
    generalized_ghz,
    ghz,
    parse_state_spec,
    random_state,
    w_state,
)

__all__ = [
    "GroverSchedule",
    "MarkedSet",
    "MeasureResult",
    "MixSpec",
    "OptimizerOptions",
    "ProductAngles",
    "RandomStateSpec",
    "RegisterState",
    "TrajectoryPoint",
    "balanced_state",
    "diffusion_apply",
    "entropy_from_pmax",
    "eta",
    "eta_ghz_mix",
    "even_odd_mix",
    "fidelity",
    "generalized_ghz",
    "ghz",
    "grover_step",
    "groverian_measure",
    "hadamard_transform",
    "inner_product",
    "load_state",
    "optimal_iterations",
    "oracle_apply",
    "overlap_gradient",
    "overlap_probability",
    "p_max_balanced",
    "p_max_generalized_ghz",
    "p_max_two_qubit",
    "p_max_w",
    "parse_state_spec",
    "product_amplitudes",
    "random_state",
    "run",
    "save_state",
    "success_probability",
    "success_probability_estimate",
    "w_state",
]
