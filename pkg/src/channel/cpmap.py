"""
Completely positive maps: Kraus lists, Choi matrices and Stinespring dilations
"""
import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from config import NORMALIZATION_TOL
from ..errors import DimensionMismatch, LengthMismatch
from ..numlin import (
    TensorFactorization,
    hermitian_eig,
    operator_norm,
    partial_trace,
    pseudo_power,
    rank_cutoff,
    require_finite,
    require_psd,
    trace_norm,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CpMap:
    """
    Completely positive map mu -> sum_k F_k mu F_k^dag, F_k of shape dim_out x dim_in.

    Any CP map is representable; is_operation / is_channel report whether
    the map is trace non-increasing / trace preserving.
    """
    dim_in: int
    dim_out: int
    kraus: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.kraus:
            raise LengthMismatch("A CP map needs at least one Kraus operator")
        ops = []
        for k, f in enumerate(self.kraus):
            f = require_finite(f, name=f"Kraus operator {k}")
            if f.shape != (self.dim_out, self.dim_in):
                raise DimensionMismatch(
                    f"Kraus operator {k} has shape {f.shape}, expected {(self.dim_out, self.dim_in)}"
                )
            ops.append(f)
        object.__setattr__(self, "kraus", tuple(ops))

    @classmethod
    def from_kraus(cls, kraus: List[np.ndarray]) -> "CpMap":
        kraus = [np.atleast_2d(np.asarray(f, dtype=complex)) for f in kraus]
        if not kraus:
            raise LengthMismatch("A CP map needs at least one Kraus operator")
        dim_out, dim_in = kraus[0].shape
        return cls(dim_in=dim_in, dim_out=dim_out, kraus=tuple(kraus))

    @classmethod
    def zero(cls, dim_in: int, dim_out: int) -> "CpMap":
        return cls(dim_in=dim_in, dim_out=dim_out, kraus=(np.zeros((dim_out, dim_in), dtype=complex),))

    def completeness(self) -> np.ndarray:
        """sum_k F_k^dag F_k."""
        return sum(f.conj().T @ f for f in self.kraus)

    @property
    def is_operation(self) -> bool:
        top = float(hermitian_eig(self.completeness()).eigenvalues[-1])
        return top <= 1.0 + NORMALIZATION_TOL

    @property
    def is_channel(self) -> bool:
        deficit = self.completeness() - np.eye(self.dim_in)
        return operator_norm(deficit) <= NORMALIZATION_TOL

    def to_dict(self):
        return {
            "dim_in": self.dim_in,
            "dim_out": self.dim_out,
            "kraus_count": len(self.kraus),
            "is_channel": self.is_channel,
        }


@dataclass(frozen=True)
class ChoiMatrix:
    """
    C = sum_k |F_k>><<F_k| on out (x) in, i.e. C[(a,i),(b,j)] = A(|i><j|)[a,b].
    """
    dim_in: int
    dim_out: int
    matrix: np.ndarray

    def __post_init__(self):
        d = self.dim_in * self.dim_out
        if np.shape(self.matrix) != (d, d):
            raise DimensionMismatch(f"Choi matrix has shape {np.shape(self.matrix)}, expected {(d, d)}")
        object.__setattr__(self, "matrix", require_psd(self.matrix, name="Choi matrix"))

    @property
    def factors(self) -> TensorFactorization:
        return TensorFactorization((self.dim_out, self.dim_in))

    def input_marginal(self) -> np.ndarray:
        """Tr_out C, the transpose of sum_k F_k^dag F_k."""
        return partial_trace(self.matrix, self.factors, keep=[1])

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


@dataclass(frozen=True)
class StinespringDilation:
    """
    Contraction U : in -> out (x) env with A(rho) = Tr_env U rho U^dag.

    Rows are ordered (out, env) with the output factor slowest.
    """
    dim_in: int
    dim_out: int
    dim_env: int
    isometry: np.ndarray

    def __post_init__(self):
        u = require_finite(self.isometry, name="dilation")
        if u.shape != (self.dim_out * self.dim_env, self.dim_in):
            raise DimensionMismatch(
                f"dilation has shape {u.shape}, expected {(self.dim_out * self.dim_env, self.dim_in)}"
            )
        object.__setattr__(self, "isometry", u)

    def kraus_operators(self) -> List[np.ndarray]:
        blocks = self.isometry.reshape(self.dim_out, self.dim_env, self.dim_in)
        return [blocks[:, e, :] for e in range(self.dim_env)]

    def to_map(self) -> CpMap:
        return CpMap(dim_in=self.dim_in, dim_out=self.dim_out, kraus=tuple(self.kraus_operators()))

    def apply(self, rho: np.ndarray) -> np.ndarray:
        u = self.isometry
        joint = u @ np.asarray(rho, dtype=complex) @ u.conj().T
        return partial_trace(joint, TensorFactorization((self.dim_out, self.dim_env)), keep=[0])

    def contraction_norm(self) -> float:
        return operator_norm(self.isometry)


def _check_input(m: CpMap, rho: np.ndarray, side: str = "input") -> np.ndarray:
    rho = require_finite(rho, name=side)
    d = m.dim_in if side == "input" else m.dim_out
    if rho.shape != (d, d):
        raise DimensionMismatch(f"{side} operator has shape {rho.shape}, map expects {d}x{d}")
    return rho


def apply(m: CpMap, rho: np.ndarray) -> np.ndarray:
    """sum_k F_k rho F_k^dag."""
    rho = _check_input(m, rho)
    return sum(f @ rho @ f.conj().T for f in m.kraus)


def adjoint_apply(m: CpMap, x: np.ndarray) -> np.ndarray:
    """sum_k F_k^dag x F_k, the Hilbert-Schmidt adjoint."""
    x = _check_input(m, x, side="output")
    return sum(f.conj().T @ x @ f for f in m.kraus)


def choi(m: CpMap) -> ChoiMatrix:
    vectors = np.stack([f.reshape(-1) for f in m.kraus], axis=1)
    return ChoiMatrix(dim_in=m.dim_in, dim_out=m.dim_out, matrix=vectors @ vectors.conj().T)


def map_from_choi(c: ChoiMatrix) -> CpMap:
    """
    Kraus operators sqrt(lambda) * reshape(v) from the spectral decomposition of C.

    Eigenvalues at or below the rank cutoff are dropped; the zero map keeps a
    single zero Kraus operator.
    """
    decomposition = hermitian_eig(c.matrix)
    lam = decomposition.eigenvalues
    keep = lam > rank_cutoff(lam)
    dropped = int(len(lam) - keep.sum())
    if dropped:
        logger.debug(f"map_from_choi dropped {dropped} of {len(lam)} Choi eigenvalues below cutoff")
    if not np.any(keep):
        return CpMap.zero(c.dim_in, c.dim_out)
    kraus = [
        np.sqrt(lam[j]) * decomposition.eigenvectors[:, j].reshape(c.dim_out, c.dim_in)
        for j in np.flatnonzero(keep)[::-1]
    ]
    return CpMap(dim_in=c.dim_in, dim_out=c.dim_out, kraus=tuple(kraus))


def map_from_action(action: Callable[[np.ndarray], np.ndarray], dim_in: int, dim_out: int) -> CpMap:
    """
    Materialize a linear CP action as a Kraus list by evaluating it on |i><j|.

    Args:
        action: Linear map from dim_in x dim_in to dim_out x dim_out matrices
        dim_in: Input dimension
        dim_out: Output dimension

    Returns:
        CpMap whose Choi matrix matches the action
    """
    blocks = np.zeros((dim_out, dim_in, dim_out, dim_in), dtype=complex)
    for i in range(dim_in):
        for j in range(dim_in):
            unit = np.zeros((dim_in, dim_in), dtype=complex)
            unit[i, j] = 1.0
            blocks[:, i, :, j] = action(unit)
    d = dim_in * dim_out
    matrix = blocks.reshape(d, d)
    return map_from_choi(ChoiMatrix(dim_in=dim_in, dim_out=dim_out, matrix=(matrix + matrix.conj().T) / 2))


def canonical_stinespring(m: CpMap) -> StinespringDilation:
    """
    Dilation into the canonical environment out (x) in, purifying the Choi matrix by its square root.

    The environment index e labels the columns of sqrt(C); the e-th Kraus
    operator is that column reshaped to dim_out x dim_in.
    """
    c = choi(m)
    root = pseudo_power(c.matrix, 0.5)
    dim_env = m.dim_out * m.dim_in
    u = root.reshape(m.dim_out, m.dim_in, dim_env).transpose(0, 2, 1)
    return StinespringDilation(
        dim_in=m.dim_in,
        dim_out=m.dim_out,
        dim_env=dim_env,
        isometry=u.reshape(m.dim_out * dim_env, m.dim_in),
    )


def compose(r: CpMap, a: CpMap) -> CpMap:
    """R o A by Kraus products, recompressed through the Choi matrix when the count grows past dim_in * dim_out."""
    if r.dim_in != a.dim_out:
        raise DimensionMismatch(f"cannot compose map on {r.dim_in} after map into {a.dim_out}")
    products = tuple(rk @ ak for rk in r.kraus for ak in a.kraus)
    product = CpMap(dim_in=a.dim_in, dim_out=r.dim_out, kraus=products)
    if len(products) > a.dim_in * r.dim_out:
        return map_from_choi(choi(product))
    return product


def choi_distance(a: CpMap, b: CpMap) -> float:
    """Trace-norm distance between Choi matrices."""
    if (a.dim_in, a.dim_out) != (b.dim_in, b.dim_out):
        raise DimensionMismatch("maps act between different spaces")
    return trace_norm(choi(a).matrix - choi(b).matrix)
