"""
Named channels: identity, depolarizing, amplitude damping, unitary and measurement channels
"""
from typing import Dict, List

import numpy as np

from config import NORMALIZATION_TOL
from ..errors import DimensionMismatch, NormalizationError
from ..measure import Povm
from ..numlin import operator_norm, pseudo_power
from .cpmap import CpMap

# Single-qubit gates accepted by the "unitary:<gate>" channel spec
GATES: Dict[str, np.ndarray] = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "T": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
}


def identity_channel(d: int) -> CpMap:
    return CpMap(dim_in=d, dim_out=d, kraus=(np.eye(d, dtype=complex),))


def weyl_operators(d: int) -> List[np.ndarray]:
    """
    The d^2 shift-and-clock operators X^a Z^b, (a, b) = (0, 0) first.

    X|j> = |j+1 mod d>, Z|j> = w^j |j> with w = exp(2 pi i / d). They are an
    orthogonal basis: Tr(W_ab^dag W_a'b') = d delta.
    """
    shift = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return [
        np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
        for a in range(d)
        for b in range(d)
    ]


def depolarizing(p: float, d: int = 2) -> CpMap:
    """
    A_p(rho) = (1 - p) rho + p Tr(rho) 1/d.

    Args:
        p: Depolarizing probability in [0, 1]
        d: Dimension

    Returns:
        The channel as d^2 Weyl-Kraus operators
    """
    if not 0.0 <= p <= 1.0:
        raise NormalizationError(f"depolarizing probability {p} outside [0, 1]")
    if d < 1:
        raise DimensionMismatch(f"dimension must be positive, got {d}")
    weyl = weyl_operators(d)
    weights = [1.0 - p + p / d ** 2] + [p / d ** 2] * (d * d - 1)
    return CpMap(dim_in=d, dim_out=d, kraus=tuple(np.sqrt(w) * op for w, op in zip(weights, weyl)))


def depolarizing_recovery_parameter(p: float, d: int) -> float:
    """Parameter f of the depolarizing channel that quadratic recovery of A_p on 1/d reduces to."""
    denominator = (1.0 - p) ** 2 * d ** 2 + (2.0 - p) * p
    return p * p / denominator if denominator > 0 else 0.0


def amplitude_damping(gamma: float) -> CpMap:
    if not 0.0 <= gamma <= 1.0:
        raise NormalizationError(f"damping rate {gamma} outside [0, 1]")
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - gamma)]], dtype=complex)
    k1 = np.array([[0.0, np.sqrt(gamma)], [0.0, 0.0]], dtype=complex)
    return CpMap(dim_in=2, dim_out=2, kraus=(k0, k1))


def unitary_channel(u: np.ndarray) -> CpMap:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionMismatch(f"unitary must be square, got shape {u.shape}")
    deviation = operator_norm(u.conj().T @ u - np.eye(u.shape[0]))
    if deviation > NORMALIZATION_TOL:
        raise NormalizationError(f"matrix is not unitary (deviation {deviation:.3g})")
    return CpMap(dim_in=u.shape[0], dim_out=u.shape[0], kraus=(u,))


def measurement_channel(povm: Povm) -> CpMap:
    """
    R^M(rho) = sum_k |k><k| Tr(M_k rho), Kraus operators |k><j| sqrt(M_k).

    The output register has one level per POVM outcome.
    """
    m = povm.size
    kraus = []
    for k, element in enumerate(povm.elements):
        root = pseudo_power(element, 0.5)
        for j in range(povm.dim):
            op = np.zeros((m, povm.dim), dtype=complex)
            op[k, :] = root[j, :]
            kraus.append(op)
    return CpMap(dim_in=povm.dim, dim_out=m, kraus=tuple(kraus))
