"""
Quadratic overlapper and two-sided estimates for the restricted maximum overlap
"""
import logging

import numpy as np

from config import NORMALIZATION_TOL
from ..channel import CpMap, map_from_action
from ..errors import DegenerateInput
from ..measure import BoundReport, Ensemble
from ..numlin import gram_power, gram_root_trace, operator_norm
from .instance import HattedInstance, OverlapInstance, hat, overlap_value, pulled_back_vectors

logger = logging.getLogger(__name__)


def _squared_blocks(instance: OverlapInstance, hatted: HattedInstance) -> np.ndarray:
    squared = hatted.mu_hat @ hatted.mu_hat
    return squared.reshape(instance.dim_k, instance.dim_h, instance.dim_k, instance.dim_h)


def _kernel_factor(instance: OverlapInstance, hatted: HattedInstance) -> np.ndarray:
    """B with B^dag B = Y: rows (l, k, h) of mu_hat (1_K (x) phi^T e_l), one block per l."""
    blocks = hatted.mu_hat.reshape(instance.dim_k, instance.dim_h, instance.dim_k, instance.dim_h)
    stacked = np.einsum("mnjg,rg->rmnj", blocks, instance.phi)
    return stacked.reshape(-1, instance.dim_k)


def overlap_kernel(instance: OverlapInstance) -> np.ndarray:
    """
    Y = Tr_H[mu_hat^2 (1_K (x) phi_H)], the operator on K whose root-trace is Lambda.
    """
    b = _kernel_factor(instance, hat(instance))
    y = b.conj().T @ b
    return (y + y.conj().T) / 2


def overlap_lambda(instance: OverlapInstance) -> float:
    """Lambda = Tr_K sqrt(Y)."""
    return gram_root_trace(_kernel_factor(instance, hat(instance)))


def quadratic_overlapper(instance: OverlapInstance) -> CpMap:
    """
    R^QO(u) = Tr_KH[ mu_hat^2 ((Y^{-1/2+} u Y^{-1/2+}) (x) |phi><phi|) ], an operation K -> L.

    In components, R^QO(u)[l, l'] = sum mu_hat^2[(k,h),(k',h')] v[k',k] phi[l,h'] conj(phi[l',h])
    with v = Y^{-1/2+} u Y^{-1/2+}.

    Args:
        instance: Overlap instance

    Returns:
        The quadratic overlapper as a CpMap
    """
    hatted = hat(instance)
    blocks = _squared_blocks(instance, hatted)
    root = gram_power(_kernel_factor(instance, hatted), -0.5)
    if not np.any(root):
        raise DegenerateInput("Tr_H[mu_hat^2 (1 (x) phi_H)] vanishes; the quadratic overlapper is undefined")
    phi = instance.phi

    def action(upsilon: np.ndarray) -> np.ndarray:
        v = root @ upsilon @ root
        return np.einsum("khjg,jk,lg,mh->lm", blocks, v, phi, phi.conj())

    return map_from_action(action, dim_in=instance.dim_k, dim_out=instance.dim_l)


def overlap_bounds(instance: OverlapInstance) -> BoundReport:
    """
    Lambda^2 / Tr mu_hat <= <phi|R^QO(mu)|phi> <= MO(mu, phi) <= Lambda.

    A vanishing mu_hat yields the all-zero report (0^2/0 read as 0).

    Args:
        instance: Overlap instance

    Returns:
        BoundReport with ceiling Tr mu_hat
    """
    hatted = hat(instance)
    trace = hatted.trace
    if trace <= NORMALIZATION_TOL * max(1.0, float(np.trace(instance.mu).real)):
        logger.debug("mu_hat vanishes; reporting zero overlap bounds")
        return BoundReport(lam=0.0, lambda_sq=0.0, achieved=0.0, upper=0.0, ceiling=0.0, label="overlap")
    lam = overlap_lambda(instance)
    achieved = overlap_value(instance, quadratic_overlapper(instance))
    logger.debug(f"overlap bounds: Lambda={lam:.12g} achieved={achieved:.12g} Tr mu_hat={trace:.12g}")
    return BoundReport(
        lam=lam,
        lambda_sq=lam * lam / trace,
        achieved=achieved,
        upper=lam,
        ceiling=trace,
        label="overlap",
    )


def refined_upper(instance: OverlapInstance, candidate: CpMap) -> float:
    """
    Lambda * ||(R^dag (x) 1)(|phi><phi|)||_inf^{1/2} for a caller-supplied R.

    This bounds the maximum overlap only when the candidate is an optimal
    operation; for any other candidate it is a diagnostic, not a bound.
    """
    vectors = pulled_back_vectors(instance, candidate)
    pulled = sum(np.outer(w, w.conj()) for w in vectors)
    return overlap_lambda(instance) * float(np.sqrt(operator_norm(pulled)))


def perfectly_overlappable(instance: OverlapInstance, r: CpMap, tol: float = NORMALIZATION_TOL) -> bool:
    """True when r attains the a-priori ceiling Tr mu_hat."""
    return abs(overlap_value(instance, r) - hat(instance).trace) <= tol


def ensemble_to_overlap(e: Ensemble) -> OverlapInstance:
    """
    Discrimination as a restricted overlap problem.

    K is the system, H and L are m-level registers, mu = sum_k rho_k (x) |k><k|
    and phi = (1/sqrt m)|1>>. For any POVM M, m times the overlap of the
    measurement channel of M equals the success rate of M.
    """
    m = e.size
    mu = np.zeros((e.dim * m, e.dim * m), dtype=complex)
    for k, rho in enumerate(e.states):
        label = np.zeros((m, m))
        label[k, k] = 1.0
        mu += np.kron(rho, label)
    return OverlapInstance(dim_k=e.dim, dim_h=m, dim_l=m, mu=mu, phi=np.eye(m) / np.sqrt(m))
