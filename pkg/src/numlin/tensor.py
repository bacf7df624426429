"""
Tensor-factor bookkeeping: partial trace, partial transpose, double kets
"""
from dataclasses import dataclass
from functools import reduce
from string import ascii_letters
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..errors import DimensionMismatch
from .spectral import require_finite


@dataclass(frozen=True)
class TensorFactorization:
    """
    Ordered subsystem dimensions of a tensor-product space.

    Factor 0 is the slowest-varying index in row-major flattening.
    """
    dims: Tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise DimensionMismatch(f"Invalid factor dimensions {self.dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def total(self) -> int:
        return int(np.prod(self.dims))

    @property
    def count(self) -> int:
        return len(self.dims)

    def check(self, a: np.ndarray, name: str = "operator") -> np.ndarray:
        a = require_finite(a, name)
        if a.shape != (self.total, self.total):
            raise DimensionMismatch(
                f"{name} has shape {a.shape}, factors {self.dims} need {self.total}x{self.total}"
            )
        return a

    def to_dict(self):
        return {"dims": list(self.dims), "total": self.total}


def _factor_indices(factors: TensorFactorization, indices: Iterable[int]) -> List[int]:
    chosen = sorted(set(int(i) for i in indices))
    if any(i < 0 or i >= factors.count for i in chosen):
        raise DimensionMismatch(f"Factor indices {chosen} out of range for {factors.dims}")
    return chosen


def partial_trace(a: np.ndarray, factors: TensorFactorization, keep: Iterable[int]) -> np.ndarray:
    """
    Trace out every factor not listed in keep.

    Args:
        a: Square operator on the full product space
        factors: Factor dimensions of a
        keep: Indices of the factors to retain (kept in ascending order)

    Returns:
        Operator on the tensor product of the kept factors
    """
    a = factors.check(a)
    kept = _factor_indices(factors, keep)
    n = factors.count
    rows = [ascii_letters[i] for i in range(n)]
    cols = [ascii_letters[n + i] if i in kept else rows[i] for i in range(n)]
    out = [rows[i] for i in kept] + [cols[i] for i in kept]
    spec = "".join(rows + cols) + "->" + "".join(out)
    reduced = np.einsum(spec, a.reshape(factors.dims * 2))
    d = int(np.prod([factors.dims[i] for i in kept])) if kept else 1
    return reduced.reshape(d, d)


def partial_transpose(a: np.ndarray, factors: TensorFactorization, which: int) -> np.ndarray:
    """Transpose the chosen tensor factor, leaving the others untouched."""
    a = factors.check(a)
    (i,) = _factor_indices(factors, [which])
    n = factors.count
    t = np.swapaxes(a.reshape(factors.dims * 2), i, n + i)
    return t.reshape(factors.total, factors.total)


def permute_factors(a: np.ndarray, factors: TensorFactorization, order: Sequence[int]) -> np.ndarray:
    """Reorder the tensor factors of a square operator, e.g. K(x)H -> H(x)K."""
    a = factors.check(a)
    order = [int(i) for i in order]
    if sorted(order) != list(range(factors.count)):
        raise DimensionMismatch(f"{order} is not a permutation of {factors.count} factors")
    n = factors.count
    t = a.reshape(factors.dims * 2).transpose(order + [n + i for i in order])
    return t.reshape(factors.total, factors.total)


def tensor(*ops: np.ndarray) -> np.ndarray:
    return reduce(np.kron, [np.asarray(op, dtype=complex) for op in ops])


def double_ket(a: np.ndarray) -> np.ndarray:
    """
    Row-major vectorization |A>> as a column vector, so that
    <<A|B>> = Tr A^dag B and (A (x) conj(B)) |C>> = |A C B^dag>>.
    """
    a = require_finite(a)
    return a.reshape(-1, 1)


def double_ket_inverse(v: np.ndarray, rows: int, cols: int) -> np.ndarray:
    v = require_finite(v)
    if v.size != rows * cols:
        raise DimensionMismatch(f"Vector of length {v.size} cannot reshape to {rows}x{cols}")
    return v.reshape(rows, cols)


def maximally_entangled(d: int) -> np.ndarray:
    """(1/sqrt d)|1>> as a column vector on C^d (x) C^d."""
    return double_ket(np.eye(d)) / np.sqrt(d)
