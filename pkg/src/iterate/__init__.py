# Iterate layer package
from .overlap_iteration import (
    iterate_overlap_to_convergence,
    overlap_iterate,
    overlap_lambda_at,
    overlap_q,
    overlap_seminorm,
    small_angle_guess,
)
from .povm_iteration import iterate_povm_to_convergence, povm_factors
from .reimpell_werner import (
    RwFunctional,
    channel_fidelity_functional,
    iterate_rw_to_convergence,
    recovery_functional,
    rw_iterate,
    rw_lambda,
)
from .trace import IterationTrace, StopReason, run_to_convergence

__all__ = [
    "IterationTrace",
    "RwFunctional",
    "StopReason",
    "channel_fidelity_functional",
    "iterate_overlap_to_convergence",
    "iterate_povm_to_convergence",
    "iterate_rw_to_convergence",
    "overlap_iterate",
    "overlap_lambda_at",
    "overlap_q",
    "overlap_seminorm",
    "povm_factors",
    "recovery_functional",
    "run_to_convergence",
    "rw_iterate",
    "rw_lambda",
    "small_angle_guess",
]
