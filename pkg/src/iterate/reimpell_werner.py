"""
Reimpell-Werner iteration of recovery operations in Choi space
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from config import DEFAULT_MAX_ITERS, DEFAULT_TOL, NORMALIZATION_TOL
from ..channel import ChoiMatrix, CpMap, choi, map_from_choi
from ..errors import DegenerateInput, DimensionMismatch, NormalizationError
from ..numlin import (
    TensorFactorization,
    double_ket,
    gram_power,
    gram_root_trace,
    require_psd,
)
from .trace import IterationTrace, run_to_convergence


@dataclass(frozen=True)
class RwFunctional:
    """
    Linear functional f(R) = Tr(F R~) on operations K -> L, R~ the Choi matrix on L (x) K.

    F is PSD, so f is non-negative on CP maps.
    """
    dim_in: int
    dim_out: int
    f_matrix: np.ndarray

    def __post_init__(self):
        d = self.dim_in * self.dim_out
        if np.shape(self.f_matrix) != (d, d):
            raise DimensionMismatch(f"F has shape {np.shape(self.f_matrix)}, expected {(d, d)}")
        object.__setattr__(self, "f_matrix", require_psd(self.f_matrix, name="F"))

    @property
    def factors(self) -> TensorFactorization:
        return TensorFactorization((self.dim_out, self.dim_in))

    def check(self, r: CpMap) -> None:
        if (r.dim_in, r.dim_out) != (self.dim_in, self.dim_out):
            raise DimensionMismatch(
                f"operation maps {r.dim_in}->{r.dim_out}, functional expects {self.dim_in}->{self.dim_out}"
            )

    def value(self, r: CpMap) -> float:
        self.check(r)
        return float(np.trace(self.f_matrix @ choi(r).matrix).real)

    def to_dict(self):
        return {"dim_in": self.dim_in, "dim_out": self.dim_out, "trace_f": float(np.trace(self.f_matrix).real)}


def _weighted_choi(f: RwFunctional, r: CpMap) -> np.ndarray:
    x = f.f_matrix @ choi(r).matrix @ f.f_matrix
    return (x + x.conj().T) / 2


def _marginal_factor(f: RwFunctional, r: CpMap) -> np.ndarray:
    """B with B^dag B = Tr_L(F R~ F), from R~ = V V^dag and F R~ F = (V^dag F)^dag (V^dag F)."""
    vectors = np.stack([k.reshape(-1) for k in r.kraus], axis=1)
    return (vectors.conj().T @ f.f_matrix).reshape(-1, f.dim_in)


def rw_iterate(f: RwFunctional, r: CpMap) -> CpMap:
    """
    R~ -> Gamma^{-1/2+} F R~ F Gamma^{-1/2+} with Gamma = 1_L (x) Tr_L(F R~ F).

    Args:
        f: Functional to increase
        r: Current operation

    Returns:
        Successor operation; f never decreases
    """
    f.check(r)
    x = _weighted_choi(f, r)
    root = gram_power(_marginal_factor(f, r), -0.5)
    if not np.any(root):
        raise DegenerateInput("F R~ F vanishes; the Reimpell-Werner iterate is undefined")
    gamma_root = np.kron(np.eye(f.dim_out), root)
    successor = gamma_root @ x @ gamma_root
    successor = (successor + successor.conj().T) / 2
    return map_from_choi(ChoiMatrix(dim_in=f.dim_in, dim_out=f.dim_out, matrix=successor))


def rw_lambda(f: RwFunctional, r: CpMap) -> float:
    """Lambda(R) = Tr sqrt(Tr_L F R~ F) / sqrt(f(R)), the directional lower estimate for the next f."""
    value = f.value(r)
    if value <= 0:
        return 0.0
    return gram_root_trace(_marginal_factor(f, r)) / float(np.sqrt(value))


def recovery_functional(m: CpMap, rho: np.ndarray) -> RwFunctional:
    """
    F = sum_j |rho N_j^dag>><<rho N_j^dag|, so that f(R) = F_e(rho, R o N) for recoveries R of N.

    Args:
        m: Channel N to be reversed
        rho: Density operator on the input of N

    Returns:
        RwFunctional on operations from the output of N back to its input
    """
    rho = require_psd(rho, name="state")
    if rho.shape != (m.dim_in, m.dim_in):
        raise DimensionMismatch(f"state has shape {rho.shape}, channel input is {m.dim_in}")
    trace = float(np.trace(rho).real)
    if abs(trace - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError(f"state has trace {trace:.12f}, expected 1")
    vectors = [double_ket(rho @ n.conj().T) for n in m.kraus]
    f_matrix = sum(v @ v.conj().T for v in vectors)
    return RwFunctional(dim_in=m.dim_out, dim_out=m.dim_in, f_matrix=f_matrix)


def channel_fidelity_functional(d: int) -> RwFunctional:
    """F = |1>><<1|, so f(R) = sum_i |Tr R_i|^2 = d^2 F_e(1/d, R)."""
    v = double_ket(np.eye(d))
    return RwFunctional(dim_in=d, dim_out=d, f_matrix=v @ v.conj().T)


def iterate_rw_to_convergence(
    f: RwFunctional,
    start: CpMap,
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    oracle_value: Optional[float] = None,
) -> Tuple[CpMap, IterationTrace]:
    """Run rw_iterate from a quantum operation until f(R) plateaus."""
    f.check(start)
    if not start.is_operation:
        raise NormalizationError("Reimpell-Werner iteration must start from a quantum operation")
    return run_to_convergence(
        start,
        step=lambda r: rw_iterate(f, r),
        evaluate=lambda r: (f.value(r), rw_lambda(f, r)),
        tol=tol,
        max_iters=max_iters,
        oracle_value=oracle_value,
        name="Reimpell-Werner iteration",
    )
