"""
Hermitian spectral calculus: eigendecompositions, pseudo matrix powers, norms
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from config import HERMITICITY_TOL, PSD_TOL, RANK_CUTOFF_FACTOR, SINGULAR_CUTOFF_FACTOR
from ..errors import ConvergenceFailure, DimensionMismatch, NonFiniteInput, NotHermitian, NotPsd


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and the unitary whose columns are eigenvectors."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def to_dict(self):
        return {
            "eigenvalues": self.eigenvalues.tolist(),
            "dim": int(self.eigenvectors.shape[0]),
        }


def require_finite(a: np.ndarray, name: str = "operator") -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(a)):
        raise NonFiniteInput(f"{name} has non-finite entries")
    return a


def as_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL, name: str = "operator") -> np.ndarray:
    """
    Validate a square matrix as Hermitian and return the averaged (A + A^dag)/2.

    Args:
        a: Square complex matrix
        tol: Allowed ||A - A^dag||_inf relative to max(1, ||A||_inf)
        name: Label used in error messages

    Returns:
        Hermitized copy of the input
    """
    a = require_finite(a, name)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {a.shape}")
    scale = max(1.0, operator_norm(a))
    skew = operator_norm(a - a.conj().T)
    if skew > tol * scale:
        raise NotHermitian(f"{name} deviates from Hermitian by {skew:.3e}")
    return (a + a.conj().T) / 2


def rank_cutoff(eigenvalues: np.ndarray, dim: Optional[int] = None) -> float:
    """Numerical-rank threshold dim * eps * max(lambda_max, 1)."""
    if dim is None:
        dim = len(eigenvalues)
    top = float(np.max(eigenvalues)) if len(eigenvalues) else 0.0
    return RANK_CUTOFF_FACTOR * dim * np.finfo(float).eps * max(top, 1.0)


def hermitian_eig(a: np.ndarray) -> SpectralDecomposition:
    """
    Spectral decomposition of a Hermitian operator.

    Args:
        a: Hermitian matrix (validated and Hermitized first)

    Returns:
        SpectralDecomposition with ascending real eigenvalues
    """
    h = as_hermitian(a)
    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh(h)
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(f"Hermitian eigensolver failed: {e}") from e
    return SpectralDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def pseudo_power(a: np.ndarray, s: float) -> np.ndarray:
    """
    A^s on the strictly positive eigenspace, zero elsewhere.

    s = 0 gives the positive projection; s = -1/2 the pseudo inverse square root.
    Eigenvalues at or below the rank cutoff count as zero for every s.

    Args:
        a: Hermitian matrix
        s: Real exponent

    Returns:
        Hermitian matrix sum_{lambda_j > cutoff} lambda_j^s P_j
    """
    decomposition = hermitian_eig(a)
    lam = decomposition.eigenvalues
    v = decomposition.eigenvectors
    keep = lam > rank_cutoff(lam, v.shape[0])
    if not np.any(keep):
        return np.zeros_like(v)
    vk = v[:, keep]
    weights = lam[keep] ** s if s != 0 else np.ones(int(keep.sum()))
    return (vk * weights) @ vk.conj().T


def positive_projection(a: np.ndarray) -> np.ndarray:
    """Projector onto the span of eigenvectors with eigenvalue above the rank cutoff."""
    return pseudo_power(a, 0.0)


def trace_of_sqrt(a: np.ndarray) -> float:
    """Tr sqrt(A) over the positive eigenspace of a PSD operator."""
    decomposition = hermitian_eig(a)
    lam = decomposition.eigenvalues
    keep = lam > rank_cutoff(lam)
    return float(np.sum(np.sqrt(lam[keep])))


def singular_cutoff(singular_values: np.ndarray, shape) -> float:
    """Numerical-rank threshold for singular values, factor * max(shape) * eps * max(sigma_max, 1)."""
    top = float(np.max(singular_values)) if len(singular_values) else 0.0
    return SINGULAR_CUTOFF_FACTOR * max(shape) * np.finfo(float).eps * max(top, 1.0)


def gram_power(b: np.ndarray, s: float) -> np.ndarray:
    """
    (B^dag B)^s on its strictly positive eigenspace, read off the SVD of the factor B.

    The numerical rank is cut on the singular values of B, accurate to eps * ||B||;
    eigenvalues of an explicitly formed B^dag B are only accurate to eps * ||B||^2.

    Args:
        b: Factor with Y = B^dag B
        s: Real exponent

    Returns:
        Hermitian matrix sum_{sigma_j > cutoff} sigma_j^{2s} v_j v_j^dag
    """
    b = require_finite(np.atleast_2d(b))
    try:
        _, sigma, vh = scipy.linalg.svd(b, full_matrices=False)
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(f"SVD failed: {e}") from e
    keep = sigma > singular_cutoff(sigma, b.shape)
    if not np.any(keep):
        return np.zeros((b.shape[1], b.shape[1]), dtype=complex)
    v = vh[keep].conj().T
    weights = sigma[keep] ** (2 * s) if s != 0 else np.ones(int(keep.sum()))
    return (v * weights) @ v.conj().T


def gram_root_trace(b: np.ndarray) -> float:
    """Tr sqrt(B^dag B) as the sum of singular values of B above the rank cutoff."""
    sigma = _singular_values(b)
    if not sigma.size:
        return 0.0
    return float(np.sum(sigma[sigma > singular_cutoff(sigma, np.atleast_2d(b).shape)]))


def _singular_values(a: np.ndarray) -> np.ndarray:
    a = require_finite(a)
    if a.size == 0:
        return np.zeros(0)
    try:
        return scipy.linalg.svdvals(np.atleast_2d(a))
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(f"SVD failed: {e}") from e


def trace_norm(a: np.ndarray) -> float:
    """||A||_1, the sum of singular values."""
    return float(np.sum(_singular_values(a)))


def operator_norm(a: np.ndarray) -> float:
    """||A||_inf, the largest singular value."""
    sv = _singular_values(a)
    return float(sv.max()) if sv.size else 0.0


def min_eigenvalue(a: np.ndarray) -> float:
    return float(hermitian_eig(a).eigenvalues[0])


def is_psd(a: np.ndarray, tol: float = PSD_TOL) -> bool:
    h = as_hermitian(a)
    return min_eigenvalue(h) >= -tol * max(1.0, operator_norm(h))


def require_psd(a: np.ndarray, name: str = "operator", tol: float = PSD_TOL) -> np.ndarray:
    """Hermitize and check positive semidefiniteness, raising NotPsd on failure."""
    try:
        h = as_hermitian(a, name=name)
    except NotHermitian as e:
        raise NotPsd(str(e)) from e
    low = min_eigenvalue(h)
    if low < -tol * max(1.0, operator_norm(h)):
        raise NotPsd(f"{name} has eigenvalue {low:.3e} below zero")
    return h
