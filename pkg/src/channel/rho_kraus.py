"""
rho-Kraus decompositions, the rho-functional calculus and quadratic reweighting
"""
import logging
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from ..errors import DimensionMismatch, NotPsd
from ..numlin import hermitian_eig, positive_projection, pseudo_power, rank_cutoff, require_psd
from .cpmap import CpMap, map_from_action

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RhoKrausDecomposition:
    """
    A(mu) = sum_k p_k E_k mu E_k^dag on supp(rho), with Tr(E_k^dag E_l rho) = delta_kl.
    """
    weights: Tuple[float, ...]
    operators: Tuple[np.ndarray, ...]
    base_state: np.ndarray

    def gram(self) -> np.ndarray:
        """Matrix of Tr(E_k^dag E_l rho); the identity for a valid decomposition."""
        rho = self.base_state
        n = len(self.operators)
        g = np.zeros((n, n), dtype=complex)
        for k, ek in enumerate(self.operators):
            for l, el in enumerate(self.operators):
                g[k, l] = np.trace(ek.conj().T @ el @ rho)
        return g

    def to_dict(self):
        return {"weights": list(self.weights), "terms": len(self.operators)}


def _check_state(m: CpMap, rho: np.ndarray) -> np.ndarray:
    rho = require_psd(rho, name="base state")
    if rho.shape != (m.dim_in, m.dim_in):
        raise DimensionMismatch(f"base state has shape {rho.shape}, map input is {m.dim_in}")
    return rho


def purified_output(m: CpMap, rho: np.ndarray) -> np.ndarray:
    """(A (x) 1)(|psi_rho><psi_rho|) for the canonical purification psi_rho = |sqrt(rho)>>."""
    rho = _check_state(m, rho)
    root = pseudo_power(rho, 0.5)
    vectors = np.stack([(f @ root).reshape(-1) for f in m.kraus], axis=1)
    return vectors @ vectors.conj().T


def rho_kraus(m: CpMap, rho: np.ndarray) -> RhoKrausDecomposition:
    """
    Orthonormal branches of A relative to rho.

    The weights are the positive eigenvalues of (A (x) 1)(|psi_rho><psi_rho|);
    each eigenvector G_k, reshaped to an operator, gives E_k = G_k rho^{-1/2+}.

    Args:
        m: CP map
        rho: PSD base state on the input space

    Returns:
        RhoKrausDecomposition
    """
    rho = _check_state(m, rho)
    decomposition = hermitian_eig(purified_output(m, rho))
    lam = decomposition.eigenvalues
    keep = np.flatnonzero(lam > rank_cutoff(lam))[::-1]
    inverse_root = pseudo_power(rho, -0.5)
    operators = tuple(
        decomposition.eigenvectors[:, j].reshape(m.dim_out, m.dim_in) @ inverse_root for j in keep
    )
    logger.debug(f"rho-Kraus decomposition with {len(keep)} branches")
    return RhoKrausDecomposition(
        weights=tuple(float(lam[j]) for j in keep),
        operators=operators,
        base_state=rho,
    )


def functional_calculus(m: CpMap, rho: np.ndarray, f: Callable[[float], float]) -> CpMap:
    """
    f_rho(A)(mu) = sum_k f(p_k) E_k mu E_k^dag, acting on supp(rho).

    Args:
        m: CP map
        rho: PSD base state
        f: Function non-negative on [0, inf)

    Returns:
        Reweighted CP map
    """
    decomposition = rho_kraus(m, rho)
    kraus = []
    for p, ek in zip(decomposition.weights, decomposition.operators):
        weight = float(f(p))
        if weight < 0:
            raise NotPsd(f"f({p:.6g}) = {weight:.6g} is negative; the reweighted map is not CP")
        kraus.append(np.sqrt(weight) * ek)
    if not kraus:
        return CpMap.zero(m.dim_in, m.dim_out)
    return CpMap(dim_in=m.dim_in, dim_out=m.dim_out, kraus=tuple(kraus))


def functional_calculus_from_choi(m: CpMap, rho: np.ndarray, f: Callable[[float], float]) -> CpMap:
    """
    Decomposition-free form: f_rho(A)(mu) = contraction of f(C_rho) with rho^{-1/2+} mu rho^{-1/2+},
    where C_rho = (A (x) 1)(|psi_rho><psi_rho|).
    """
    rho = _check_state(m, rho)
    decomposition = hermitian_eig(purified_output(m, rho))
    lam = decomposition.eigenvalues
    v = decomposition.eigenvectors
    keep = lam > rank_cutoff(lam)
    weights = np.array([float(f(p)) for p in lam[keep]])
    if np.any(weights < 0):
        raise NotPsd("f is negative on the rho-Kraus weights")
    fc = (v[:, keep] * weights) @ v[:, keep].conj().T
    blocks = fc.reshape(m.dim_out, m.dim_in, m.dim_out, m.dim_in)
    inverse_root = pseudo_power(rho, -0.5)

    def action(mu: np.ndarray) -> np.ndarray:
        x = inverse_root @ mu @ inverse_root
        return np.einsum("aibj,ij->ab", blocks, x)

    return map_from_action(action, m.dim_in, m.dim_out)


def reweighting_kernel(m: CpMap, rho: np.ndarray) -> np.ndarray:
    """The PSD Gram matrix T[k, l] = Tr(F_k^dag F_l rho)."""
    rho = _check_state(m, rho)
    root = pseudo_power(rho, 0.5)
    vectors = np.stack([(f @ root).reshape(-1) for f in m.kraus], axis=1)
    return vectors.conj().T @ vectors


def quadratic_reweighting(m: CpMap, rho: np.ndarray) -> CpMap:
    """
    A^(2,rho)(mu) = sum_{k,l} F_k mu F_l^dag Tr(F_k^dag F_l rho), for any Kraus set of A.

    Inputs are projected onto supp(rho) first. The kernel T is diagonalized,
    T = V diag(t) V^dag, giving Kraus operators sqrt(t_a) sum_k V[k, a] F_k Pi.

    Args:
        m: CP map
        rho: PSD base state

    Returns:
        The quadratic reweighting as a CpMap
    """
    rho = _check_state(m, rho)
    projector = positive_projection(rho)
    kernel = hermitian_eig(reweighting_kernel(m, rho))
    t = kernel.eigenvalues
    keep = np.flatnonzero(t > rank_cutoff(t))[::-1]
    stacked = np.stack([f @ projector for f in m.kraus])
    kraus = tuple(
        np.sqrt(t[a]) * np.tensordot(kernel.eigenvectors[:, a], stacked, axes=1) for a in keep
    )
    if not kraus:
        return CpMap.zero(m.dim_in, m.dim_out)
    return CpMap(dim_in=m.dim_in, dim_out=m.dim_out, kraus=kraus)
