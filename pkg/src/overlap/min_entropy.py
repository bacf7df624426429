"""
Conditional min-entropy bounds from the restricted overlap estimates
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from config import DEFAULT_S_GRID, NORMALIZATION_TOL, REPORT_SLACK
from ..errors import DimensionMismatch, NormalizationError
from ..numlin import (
    TensorFactorization,
    gram_root_trace,
    partial_trace,
    permute_factors,
    pseudo_power,
    require_psd,
    tensor,
)
from .bounds import quadratic_overlapper
from .instance import OverlapInstance, overlap_value

logger = logging.getLogger(__name__)


@dataclass
class MinEntropyReport:
    """Bounds on H_min(A|B) in bits for one value of the free parameter s."""
    s: float
    lower: float
    upper: float
    achieved: Optional[float] = None

    def violations(self, slack: float = REPORT_SLACK) -> List[str]:
        problems = []
        if self.lower > self.upper + slack:
            problems.append(f"s={self.s}: lower {self.lower:.12g} exceeds upper {self.upper:.12g}")
        if self.achieved is not None:
            if self.achieved < self.lower - slack:
                problems.append(f"s={self.s}: achieved {self.achieved:.12g} below lower {self.lower:.12g}")
            if self.achieved > self.upper + slack:
                problems.append(f"s={self.s}: achieved {self.achieved:.12g} above upper {self.upper:.12g}")
        return problems

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    def to_dict(self):
        return {"s": self.s, "lower": self.lower, "upper": self.upper, "achieved": self.achieved}


@dataclass
class MinEntropySweep:
    reports: List[MinEntropyReport] = field(default_factory=list)

    @property
    def best_lower(self) -> float:
        return max(r.lower for r in self.reports)

    @property
    def best_upper(self) -> float:
        return min(r.upper for r in self.reports)

    def to_dict(self):
        return {
            "reports": [r.to_dict() for r in self.reports],
            "best_lower": self.best_lower,
            "best_upper": self.best_upper,
        }


def _bipartite(rho_ab: np.ndarray, dims: TensorFactorization) -> np.ndarray:
    if dims.count != 2:
        raise DimensionMismatch(f"min-entropy needs a bipartite state, got factors {dims.dims}")
    rho = require_psd(dims.check(rho_ab, name="rho_AB"), name="rho_AB")
    trace = float(np.trace(rho).real)
    if abs(trace - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError(f"rho_AB has trace {trace:.12f}, expected 1")
    return rho


def _power_trace(rho_a: np.ndarray, s: float) -> float:
    return float(np.trace(pseudo_power(rho_a, s)).real)


def _conditioned_root_trace(rho: np.ndarray, dims: TensorFactorization, rho_a: np.ndarray, s: float) -> float:
    """Tr_B sqrt(Tr_A[rho_AB (rho_A^{-s} (x) 1) rho_AB])."""
    dim_b = dims.dims[1]
    c = tensor(pseudo_power(rho_a, -s / 2), np.eye(dim_b)) @ rho
    # Tr_A[C^dag C] = B^dag B with B[(x, a), b] = C[x, (a, b)]
    return gram_root_trace(c.reshape(-1, dim_b))


def min_entropy_instance(rho_ab: np.ndarray, dims: TensorFactorization, s: float) -> OverlapInstance:
    """
    Overlap instance whose maximum overlap is 2^{-H_min(A|B)}.

    K = B, H = A and L = A*; mu_s = Tr(rho_A^s) rho_A^{-s/2} rho_AB rho_A^{-s/2},
    reordered to B (x) A, and phi = |rho_A^{s/2}>> / sqrt(Tr rho_A^s).

    Args:
        rho_ab: Density operator on A (x) B
        dims: Factorization (dim_A, dim_B)
        s: Free real parameter

    Returns:
        OverlapInstance on K = B, H = A, L = A
    """
    rho = _bipartite(rho_ab, dims)
    dim_a, dim_b = dims.dims
    rho_a = partial_trace(rho, dims, keep=[0])
    norm = _power_trace(rho_a, s)
    damp = tensor(pseudo_power(rho_a, -s / 2), np.eye(dim_b))
    mu = norm * permute_factors(damp @ rho @ damp, dims, [1, 0])
    phi = pseudo_power(rho_a, s / 2).T / np.sqrt(norm)
    return OverlapInstance(dim_k=dim_b, dim_h=dim_a, dim_l=dim_a, mu=(mu + mu.conj().T) / 2, phi=phi)


def min_entropy_bounds(
    rho_ab: np.ndarray,
    dims: TensorFactorization,
    s: float,
    with_achieved: bool = True,
) -> MinEntropyReport:
    """
    Two-sided H_min(A|B) estimates in bits.

    lower = -log2( sqrt(Tr rho_A^s) Tr_B sqrt(Tr_A rho_AB rho_A^{-s} rho_AB) )
    upper = -log2( (Tr_B sqrt(Tr_A rho_AB rho_A^{-s} rho_AB))^2 / Tr rho_A^{1-s} )

    Non-positive powers of rho_A are pseudo powers, so rho_A^0 is the
    projection onto its support.

    Args:
        rho_ab: Density operator on A (x) B
        dims: Factorization (dim_A, dim_B)
        s: Free real parameter
        with_achieved: Also evaluate the quadratic overlapper on the reduced instance

    Returns:
        MinEntropyReport
    """
    rho = _bipartite(rho_ab, dims)
    rho_a = partial_trace(rho, dims, keep=[0])
    root_trace = _conditioned_root_trace(rho, dims, rho_a, s)
    lower = -float(np.log2(np.sqrt(_power_trace(rho_a, s)) * root_trace))
    upper = -float(np.log2(root_trace ** 2 / _power_trace(rho_a, 1.0 - s)))
    achieved = None
    if with_achieved:
        instance = min_entropy_instance(rho, dims, s)
        achieved = -float(np.log2(overlap_value(instance, quadratic_overlapper(instance))))
    logger.debug(f"min-entropy s={s}: lower={lower:.12g} upper={upper:.12g}")
    return MinEntropyReport(s=float(s), lower=lower, upper=upper, achieved=achieved)


def min_entropy_sweep(
    rho_ab: np.ndarray,
    dims: TensorFactorization,
    s_values: Sequence[float] = tuple(DEFAULT_S_GRID),
    with_achieved: bool = True,
) -> MinEntropySweep:
    """Reports over a grid of s; the sweep exposes the best lower and upper values."""
    return MinEntropySweep(
        reports=[min_entropy_bounds(rho_ab, dims, s, with_achieved=with_achieved) for s in s_values]
    )
