"""
Iteration traces and the shared convergence loop for monotone iterate maps.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Tuple, TypeVar

import numpy as np

from config import DEFAULT_MAX_ITERS, DEFAULT_TOL, MONOTONE_SLACK, REPORT_SLACK, TRACE_LABEL
from ..errors import DegenerateInput, NormalizationError

logger = logging.getLogger(__name__)

State = TypeVar("State")


class StopReason(Enum):
    TOLERANCE = "tolerance"
    MAX_ITERS = "max_iters"
    DEGENERATE = "degenerate"


@dataclass
class IterationTrace:
    """
    Per-step record of a directional iteration.

    seminorms[i] is ||g_i||, objectives[i] = ||g_i||^2 (success rate, overlap
    or f(R)), lambda_values[i] is Lambda(g_i) = Re<g_i^+, g_i> / ||g_i||.
    oracle_value, when known, is the optimal objective.
    """
    seminorms: List[float] = field(default_factory=list)
    lambda_values: List[float] = field(default_factory=list)
    objectives: List[float] = field(default_factory=list)
    steps: int = 0
    converged: bool = False
    stop_reason: Optional[StopReason] = None
    oracle_value: Optional[float] = None
    label: str = TRACE_LABEL

    def record(self, objective: float, lam: float) -> None:
        self.objectives.append(float(objective))
        self.seminorms.append(float(np.sqrt(max(objective, 0.0))))
        self.lambda_values.append(float(lam))

    @property
    def final_objective(self) -> float:
        return self.objectives[-1] if self.objectives else 0.0

    def decreases(self, slack: float = MONOTONE_SLACK) -> List[int]:
        """Indices i at which seminorms[i] < seminorms[i-1] - slack."""
        return [
            i for i in range(1, len(self.seminorms))
            if self.seminorms[i] < self.seminorms[i - 1] - slack
        ]

    def is_monotone(self, slack: float = MONOTONE_SLACK) -> bool:
        return not self.decreases(slack)

    def satisfies_oracle_sandwich(self, slack: float = REPORT_SLACK) -> bool:
        """
        ||x_max|| >= ||g_{i+1}|| >= Lambda(g_i) at every recorded step.

        Vacuously true without an oracle value.
        """
        if self.oracle_value is None:
            return True
        best = float(np.sqrt(max(self.oracle_value, 0.0)))
        if any(s > best + slack for s in self.seminorms):
            return False
        return all(
            self.seminorms[i + 1] >= self.lambda_values[i] - slack
            for i in range(len(self.seminorms) - 1)
        )

    def to_dict(self):
        return {
            "label": self.label,
            "seminorms": self.seminorms,
            "lambda": self.lambda_values,
            "objectives": self.objectives,
            "stop_reason": self.stop_reason.value if self.stop_reason else None,
            "steps": self.steps,
            "converged": self.converged,
            "oracle_value": self.oracle_value,
        }


def run_to_convergence(
    start: State,
    step: Callable[[State], State],
    evaluate: Callable[[State], Tuple[float, float]],
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    oracle_value: Optional[float] = None,
    steps_taken: int = 0,
    name: str = "iteration",
) -> Tuple[State, IterationTrace]:
    """
    Iterate until the objective changes by less than tol, max_iters is hit,
    or a step becomes degenerate.

    Args:
        start: Feasible starting point
        step: The directional iterate map
        evaluate: Returns (objective, Lambda) for a point
        tol: Plateau tolerance on the objective
        max_iters: Maximum number of steps, counting steps_taken
        oracle_value: Known optimal objective, if any
        steps_taken: Steps already spent producing start
        name: Label for log messages

    Returns:
        (final point, IterationTrace)
    """
    if tol <= 0:
        raise NormalizationError(f"tolerance must be positive, got {tol}")
    if max_iters < 1:
        raise NormalizationError(f"max_iters must be at least 1, got {max_iters}")
    trace = IterationTrace(oracle_value=oracle_value, steps=steps_taken)
    current = start
    objective, lam = evaluate(current)
    trace.record(objective, lam)
    logger.info(f"{name}: starting at objective {objective:.12g}")
    while trace.steps < max_iters:
        try:
            successor = step(current)
        except DegenerateInput:
            if trace.steps == steps_taken:
                raise
            trace.stop_reason = StopReason.DEGENERATE
            logger.warning(f"{name}: degenerate step after {trace.steps} iterations")
            break
        trace.steps += 1
        new_objective, lam = evaluate(successor)
        trace.record(new_objective, lam)
        current = successor
        if abs(new_objective - objective) < tol:
            trace.converged = True
            trace.stop_reason = StopReason.TOLERANCE
            break
        objective = new_objective
    else:
        trace.stop_reason = StopReason.MAX_ITERS
    logger.info(
        f"{name}: stopped ({trace.stop_reason.value}) after {trace.steps} steps at {trace.final_objective:.12g}"
    )
    if trace.decreases():
        logger.error(f"{name}: seminorm decreased at steps {trace.decreases()}")
    return current, trace
