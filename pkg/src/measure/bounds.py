"""
Two-sided bound reports and the generalized Holevo-Curlander bounds
"""
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from config import REPORT_SLACK
from ..numlin import gram_root_trace
from .ensemble import Ensemble, p_succ
from .measurements import helstrom_optimal, quadratic_measurement


@dataclass
class BoundReport:
    """
    Computable sandwich lambda_sq <= achieved <= optimum <= upper.

    lam is Lambda itself; lambda_sq is the (possibly normalized) lower leg;
    ceiling, when set, is the a-priori bound Lambda may not exceed.
    """
    lam: float
    lambda_sq: float
    achieved: float
    upper: float
    oracle_optimal: Optional[float] = None
    ceiling: Optional[float] = None
    label: str = ""

    def violations(self, slack: float = REPORT_SLACK) -> List[str]:
        """Human-readable descriptions of every broken report inequality."""
        problems = []
        if self.lambda_sq > self.achieved + slack:
            problems.append(f"lower bound {self.lambda_sq:.12g} exceeds achieved {self.achieved:.12g}")
        if self.achieved > self.upper + slack:
            problems.append(f"achieved {self.achieved:.12g} exceeds upper bound {self.upper:.12g}")
        if self.lam < -slack:
            problems.append(f"Lambda {self.lam:.12g} is negative")
        if self.ceiling is not None and self.lam > self.ceiling + slack:
            problems.append(f"Lambda {self.lam:.12g} exceeds its ceiling {self.ceiling:.12g}")
        if self.oracle_optimal is not None:
            if self.oracle_optimal < self.achieved - slack:
                problems.append(f"oracle optimum {self.oracle_optimal:.12g} below achieved {self.achieved:.12g}")
            if self.oracle_optimal > self.upper + slack:
                problems.append(f"oracle optimum {self.oracle_optimal:.12g} above upper {self.upper:.12g}")
        if not all(np.isfinite([self.lam, self.lambda_sq, self.achieved, self.upper])):
            problems.append("report contains non-finite values")
        return problems

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    def to_dict(self):
        return {
            "label": self.label,
            "lambda": self.lam,
            "lambda_sq": self.lambda_sq,
            "achieved": self.achieved,
            "upper": self.upper,
            "oracle_optimal": self.oracle_optimal,
        }


def holevo_curlander_bounds(e: Ensemble, with_oracle: bool = True) -> BoundReport:
    """
    Lambda^2 <= P_succ(M^QW) <= P_succ(M^opt) <= Lambda with Lambda = Tr sqrt(sum rho_k^2).

    Args:
        e: Ensemble
        with_oracle: Attach the Helstrom optimum when the ensemble has two states

    Returns:
        BoundReport with ceiling 1
    """
    lam = gram_root_trace(np.vstack(e.states))
    achieved = p_succ(e, quadratic_measurement(e))
    oracle = helstrom_optimal(e)[0] if with_oracle and e.size == 2 else None
    return BoundReport(
        lam=lam,
        lambda_sq=lam * lam,
        achieved=achieved,
        upper=lam,
        oracle_optimal=oracle,
        ceiling=1.0,
        label="discrimination",
    )
