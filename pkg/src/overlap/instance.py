"""
Restricted maximum-overlap instances, their hatted reductions and the overlap functional
"""
from dataclasses import dataclass

import numpy as np

from config import UNIT_VECTOR_TOL
from ..channel import CpMap
from ..errors import DegenerateInput, DimensionMismatch, NormalizationError
from ..numlin import (
    TensorFactorization,
    gram_power,
    require_finite,
    require_psd,
    tensor,
)


@dataclass(frozen=True)
class OverlapInstance:
    """
    A PSD operator mu on K (x) H and a unit vector phi on L (x) H.

    phi is held as a dim_l x dim_h matrix, phi[l, h] = <l, h|phi>, which is
    the row-major reshaping of the vector. The problem is
    MO(mu, phi) = sup_R <phi| (R (x) 1_H)(mu) |phi> over quantum operations R : K -> L.
    """
    dim_k: int
    dim_h: int
    dim_l: int
    mu: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        d = self.dim_k * self.dim_h
        mu = require_psd(self.mu, name="mu")
        if mu.shape != (d, d):
            raise DimensionMismatch(f"mu has shape {mu.shape}, K (x) H needs {d}x{d}")
        phi = require_finite(self.phi, name="phi")
        if phi.size != self.dim_l * self.dim_h:
            raise DimensionMismatch(f"phi has {phi.size} entries, L (x) H needs {self.dim_l * self.dim_h}")
        phi = phi.reshape(self.dim_l, self.dim_h)
        norm = float(np.linalg.norm(phi))
        if abs(norm - 1.0) > UNIT_VECTOR_TOL:
            raise NormalizationError(f"phi has norm {norm:.15f}, expected 1")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "phi", phi)

    @property
    def factors(self) -> TensorFactorization:
        return TensorFactorization((self.dim_k, self.dim_h))

    @property
    def phi_vector(self) -> np.ndarray:
        return self.phi.reshape(-1, 1)

    def scaled(self, c: float) -> "OverlapInstance":
        return OverlapInstance(self.dim_k, self.dim_h, self.dim_l, c * self.mu, self.phi)

    def to_dict(self):
        return {
            "dim_k": self.dim_k,
            "dim_h": self.dim_h,
            "dim_l": self.dim_l,
            "trace_mu": float(np.trace(self.mu).real),
        }


@dataclass(frozen=True)
class HattedInstance:
    """mu projected onto K (x) supp(phi_H), with both reduced states of phi."""
    mu_hat: np.ndarray
    phi_h: np.ndarray
    phi_l: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.trace(self.mu_hat).real)


def reduced_states(instance: OverlapInstance):
    """(phi_L, phi_H) with phi_L = Tr_H |phi><phi| and phi_H = Tr_L |phi><phi|."""
    phi = instance.phi
    return phi @ phi.conj().T, phi.T @ phi.conj()


def hat(instance: OverlapInstance) -> HattedInstance:
    """
    Project mu onto K (x) supp(phi_H).

    Since |phi> = (1 (x) Pi_+(phi_H))|phi>, every overlap against mu equals
    the overlap against the projected operator.
    """
    phi_l, phi_h = reduced_states(instance)
    projector = tensor(np.eye(instance.dim_k), gram_power(instance.phi.conj(), 0.0))
    mu_hat = projector @ instance.mu @ projector
    return HattedInstance(mu_hat=(mu_hat + mu_hat.conj().T) / 2, phi_h=phi_h, phi_l=phi_l)


def _check_operation(instance: OverlapInstance, r: CpMap) -> None:
    if (r.dim_in, r.dim_out) != (instance.dim_k, instance.dim_l):
        raise DimensionMismatch(
            f"operation maps {r.dim_in}->{r.dim_out}, instance needs {instance.dim_k}->{instance.dim_l}"
        )


def pulled_back_vectors(instance: OverlapInstance, r: CpMap):
    """The vectors (F_j^dag (x) 1)|phi> on K (x) H, one per Kraus operator of r."""
    _check_operation(instance, r)
    return [(f.conj().T @ instance.phi).reshape(-1) for f in r.kraus]


def overlap_value(instance: OverlapInstance, r: CpMap) -> float:
    """
    <phi| (R (x) 1_H)(mu) |phi> = sum_j <w_j| mu |w_j> with w_j = (F_j^dag (x) 1)|phi>.

    Args:
        instance: Overlap instance
        r: Operation from K to L

    Returns:
        The overlap attained by r
    """
    mu = instance.mu
    return float(sum(np.vdot(w, mu @ w).real for w in pulled_back_vectors(instance, r)))


def rescale(instance: OverlapInstance, x: np.ndarray) -> OverlapInstance:
    """
    Substitute phi -> X phi / ||X phi|| and mu -> ||X phi||^2 (X^-1)^dag mu X^-1, X acting on H.

    Overlaps of every operation are unchanged; the bounds of the rescaled
    instance may be sharper.
    """
    x = require_finite(x, name="X")
    if x.shape != (instance.dim_h, instance.dim_h):
        raise DimensionMismatch(f"X has shape {x.shape}, H has dimension {instance.dim_h}")
    try:
        x_inv = np.linalg.inv(x)
    except np.linalg.LinAlgError as e:
        raise DegenerateInput(f"X is not invertible: {e}") from e
    phi = instance.phi @ x.T
    norm_sq = float(np.vdot(phi, phi).real)
    lift = tensor(np.eye(instance.dim_k), x_inv)
    mu = norm_sq * lift.conj().T @ instance.mu @ lift
    return OverlapInstance(
        dim_k=instance.dim_k,
        dim_h=instance.dim_h,
        dim_l=instance.dim_l,
        mu=(mu + mu.conj().T) / 2,
        phi=phi / np.sqrt(norm_sq),
    )
