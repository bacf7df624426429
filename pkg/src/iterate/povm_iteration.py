"""
JRF iteration of POVMs to a plateau
"""
from typing import Optional, Tuple

import numpy as np

from config import DEFAULT_MAX_ITERS, DEFAULT_TOL
from ..measure import (
    Ensemble,
    GeneralizedMeasurement,
    Povm,
    directional_lambda,
    helstrom_optimal,
    jrf_iterate,
    p_succ,
    quadratic_measurement,
)
from ..numlin import pseudo_power
from .trace import IterationTrace, run_to_convergence


def povm_factors(m: Povm) -> GeneralizedMeasurement:
    """Square-root factors E_k = sqrt(M_k)."""
    return GeneralizedMeasurement(dim=m.dim, factors=tuple(pseudo_power(mk, 0.5) for mk in m.elements))


def iterate_povm_to_convergence(
    e: Ensemble,
    start: Optional[Povm] = None,
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    oracle_value: Optional[float] = None,
) -> Tuple[Povm, IterationTrace]:
    """
    Run jrf_iterate until the success rate plateaus.

    With no start the identity guess is used; its first iterate, the
    quadratic measurement, is the first recorded point and counts as one
    step. Two-state ensembles get the Helstrom optimum as oracle.

    Args:
        e: Ensemble
        start: Starting POVM, or None for the identity guess
        tol: Plateau tolerance on the success rate
        max_iters: Maximum number of steps
        oracle_value: Known optimal success rate

    Returns:
        (final POVM, IterationTrace)
    """
    if oracle_value is None and e.size == 2:
        oracle_value = helstrom_optimal(e)[0]
    steps_taken = 0
    if start is None:
        start = quadratic_measurement(e)
        steps_taken = 1

    def evaluate(m: Povm):
        success = p_succ(e, m)
        norm = np.sqrt(max(success, 0.0))
        lam = directional_lambda(e, povm_factors(m)) / norm if norm > 0 else 0.0
        return success, lam

    return run_to_convergence(
        start,
        step=lambda m: jrf_iterate(e, m),
        evaluate=evaluate,
        tol=tol,
        max_iters=max_iters,
        oracle_value=oracle_value,
        steps_taken=steps_taken,
        name="JRF iteration",
    )
