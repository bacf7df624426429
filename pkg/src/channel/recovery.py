"""
Entanglement fidelity, quadratic / Barnum-Knill recovery and the recovery bounds
"""
import logging

import numpy as np

from config import NORMALIZATION_TOL
from ..errors import DegenerateInput, DimensionMismatch, NormalizationError
from ..measure import BoundReport
from ..numlin import gram_power, gram_root_trace, pseudo_power, require_psd
from .cpmap import CpMap, adjoint_apply, apply, compose, map_from_action
from .rho_kraus import quadratic_reweighting

logger = logging.getLogger(__name__)


def _density(rho: np.ndarray, dim: int) -> np.ndarray:
    rho = require_psd(rho, name="state")
    if rho.shape != (dim, dim):
        raise DimensionMismatch(f"state has shape {rho.shape}, map input is {dim}")
    trace = float(np.trace(rho).real)
    if abs(trace - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError(f"state has trace {trace:.12f}, expected 1")
    return rho


def entanglement_fidelity(m: CpMap, rho: np.ndarray) -> float:
    """
    F_e(rho, m) = <psi_rho| (m (x) 1)(|psi_rho><psi_rho|) |psi_rho> = sum_k |Tr(F_k rho)|^2.

    Args:
        m: CP map from a space to itself
        rho: Density operator

    Returns:
        Entanglement fidelity
    """
    if m.dim_in != m.dim_out:
        raise DimensionMismatch(f"entanglement fidelity needs a map on one space, got {m.dim_in}->{m.dim_out}")
    rho = _density(rho, m.dim_in)
    return float(sum(abs(np.trace(f @ rho)) ** 2 for f in m.kraus))


def _output_factor(m: CpMap, sigma: np.ndarray) -> np.ndarray:
    """B with B^dag B = m(sigma^2), stacking sigma F_k^dag over the Kraus operators."""
    return np.vstack([sigma @ f.conj().T for f in m.kraus])


def _inverse_root_or_raise(factor: np.ndarray, what: str) -> np.ndarray:
    root = gram_power(factor, -0.5)
    if not np.any(root):
        raise DegenerateInput(f"{what} vanishes; the recovery map is undefined")
    return root


def quadratic_recovery(m: CpMap, rho: np.ndarray) -> CpMap:
    """
    R^QR(u) = rho (A^(2,rho))^dag(S^{-1/2+} u S^{-1/2+}) rho with S = A^(2,rho)(rho^2).

    Args:
        m: Quantum operation A
        rho: Density operator on the input of A

    Returns:
        Recovery operation from the output of A back to its input
    """
    rho = _density(rho, m.dim_in)
    reweighted = quadratic_reweighting(m, rho)
    root = _inverse_root_or_raise(_output_factor(reweighted, rho), "A^(2,rho)(rho^2)")

    def action(upsilon: np.ndarray) -> np.ndarray:
        return rho @ adjoint_apply(reweighted, root @ upsilon @ root) @ rho

    return map_from_action(action, dim_in=m.dim_out, dim_out=m.dim_in)


def barnum_knill_recovery(m: CpMap, rho: np.ndarray) -> CpMap:
    """R^BK(u) = sqrt(rho) A^dag((A rho)^{-1/2+} u (A rho)^{-1/2+}) sqrt(rho)."""
    rho = _density(rho, m.dim_in)
    sqrt_rho = pseudo_power(rho, 0.5)
    root = _inverse_root_or_raise(_output_factor(m, sqrt_rho), "A(rho)")

    def action(upsilon: np.ndarray) -> np.ndarray:
        return sqrt_rho @ adjoint_apply(m, root @ upsilon @ root) @ sqrt_rho

    return map_from_action(action, dim_in=m.dim_out, dim_out=m.dim_in)


def transpose_channel(m: CpMap) -> CpMap:
    return barnum_knill_recovery(m, np.eye(m.dim_in) / m.dim_in)


def recovery_lambda(m: CpMap, rho: np.ndarray) -> float:
    """Lambda = Tr sqrt(A^(2,rho)(rho^2))."""
    rho = _density(rho, m.dim_in)
    return gram_root_trace(_output_factor(quadratic_reweighting(m, rho), rho))


def recovery_bounds(m: CpMap, rho: np.ndarray) -> BoundReport:
    """
    Lambda^2 / Tr A(rho) <= F_e(rho, R^QR o A) <= max_R F_e(rho, R o A) <= Lambda.

    Args:
        m: Quantum operation A
        rho: Density operator on the input of A

    Returns:
        BoundReport with ceiling Tr A(rho)
    """
    rho = _density(rho, m.dim_in)
    lam = recovery_lambda(m, rho)
    output_trace = float(np.trace(apply(m, rho)).real)
    recovery = quadratic_recovery(m, rho)
    achieved = entanglement_fidelity(compose(recovery, m), rho)
    lambda_sq = lam * lam / output_trace if output_trace > 0 else 0.0
    logger.debug(f"recovery bounds: Lambda={lam:.12g} achieved={achieved:.12g} TrA(rho)={output_trace:.12g}")
    return BoundReport(
        lam=lam,
        lambda_sq=lambda_sq,
        achieved=achieved,
        upper=lam,
        ceiling=output_trace,
        label="recovery",
    )
