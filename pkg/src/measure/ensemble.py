"""
Ensembles, POVMs, generalized measurements and the success-rate functional
"""
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from config import NORMALIZATION_TOL, UNIT_VECTOR_TOL
from ..errors import DimensionMismatch, LengthMismatch, NormalizationError
from ..numlin import hermitian_eig, require_finite, require_psd


@dataclass(frozen=True)
class Ensemble:
    """
    Prior-weighted density operators rho_k, with Tr rho_k = p_k and sum p_k = 1.

    States of zero weight are kept so indices stay aligned with measurements.
    """
    dim: int
    states: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.states:
            raise LengthMismatch("Ensemble needs at least one state")
        states = []
        for k, rho in enumerate(self.states):
            rho = require_psd(rho, name=f"state {k}")
            if rho.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"state {k} has shape {rho.shape}, expected dim {self.dim}")
            states.append(rho)
        total = sum(float(np.trace(rho).real) for rho in states)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(f"Prior probabilities sum to {total:.12f}, not 1")
        object.__setattr__(self, "states", tuple(states))

    @classmethod
    def from_states(cls, states: Sequence[np.ndarray]) -> "Ensemble":
        states = [np.asarray(rho, dtype=complex) for rho in states]
        if not states:
            raise LengthMismatch("Ensemble needs at least one state")
        return cls(dim=states[0].shape[0], states=tuple(states))

    @classmethod
    def from_pure(cls, weights: Sequence[float], vectors: Sequence[np.ndarray]) -> "Ensemble":
        """Build {p_k |psi_k><psi_k|} from weights and unit vectors."""
        vectors = unit_vectors(weights, vectors)
        return cls.from_states([p * np.outer(v, v.conj()) for p, v in zip(weights, vectors)])

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def priors(self) -> List[float]:
        return [float(np.trace(rho).real) for rho in self.states]

    def to_dict(self):
        return {"dim": self.dim, "size": self.size, "priors": self.priors}


@dataclass(frozen=True)
class Povm:
    """PSD elements M_k with sum M_k <= 1; sub-normalized sets are allowed."""
    dim: int
    elements: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.elements:
            raise LengthMismatch("POVM needs at least one element")
        elements = []
        for k, m in enumerate(self.elements):
            m = require_psd(m, name=f"POVM element {k}")
            if m.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"POVM element {k} has shape {m.shape}, expected dim {self.dim}")
            elements.append(m)
        top = float(hermitian_eig(sum(elements)).eigenvalues[-1])
        if top > 1.0 + NORMALIZATION_TOL:
            raise NormalizationError(f"POVM elements sum above identity (largest eigenvalue {top:.12f})")
        object.__setattr__(self, "elements", tuple(elements))

    @classmethod
    def from_elements(cls, elements: Sequence[np.ndarray]) -> "Povm":
        elements = [np.asarray(m, dtype=complex) for m in elements]
        if not elements:
            raise LengthMismatch("POVM needs at least one element")
        return cls(dim=elements[0].shape[0], elements=tuple(elements))

    @property
    def size(self) -> int:
        return len(self.elements)

    def completeness(self) -> np.ndarray:
        return sum(self.elements)

    @property
    def is_complete(self) -> bool:
        deficit = np.eye(self.dim) - self.completeness()
        return float(np.abs(deficit).max()) <= NORMALIZATION_TOL

    def to_dict(self):
        return {"dim": self.dim, "size": self.size, "complete": self.is_complete}


@dataclass(frozen=True)
class GeneralizedMeasurement:
    """Factors E_k of a measurement, M_k = E_k^dag E_k."""
    dim: int
    factors: Tuple[np.ndarray, ...]

    def __post_init__(self):
        factors = []
        for k, f in enumerate(self.factors):
            f = require_finite(f, name=f"factor {k}")
            if f.ndim != 2 or f.shape[1] != self.dim:
                raise DimensionMismatch(f"factor {k} has shape {f.shape}, expected {self.dim} columns")
            factors.append(f)
        object.__setattr__(self, "factors", tuple(factors))

    @classmethod
    def identity(cls, size: int, dim: int) -> "GeneralizedMeasurement":
        return cls(dim=dim, factors=tuple(np.eye(dim, dtype=complex) for _ in range(size)))

    @property
    def size(self) -> int:
        return len(self.factors)

    def to_povm(self) -> Povm:
        return Povm(dim=self.dim, elements=tuple(f.conj().T @ f for f in self.factors))


def unit_vectors(weights: Sequence[float], vectors: Sequence[np.ndarray]) -> List[np.ndarray]:
    if len(weights) != len(vectors):
        raise LengthMismatch(f"{len(weights)} weights for {len(vectors)} vectors")
    if abs(float(np.sum(weights)) - 1.0) > NORMALIZATION_TOL or min(weights) < 0:
        raise NormalizationError(f"Weights {list(weights)} are not a probability vector")
    out = []
    for k, v in enumerate(vectors):
        v = require_finite(v, name=f"vector {k}").ravel()
        if abs(np.linalg.norm(v) - 1.0) > UNIT_VECTOR_TOL:
            raise NormalizationError(f"vector {k} has norm {np.linalg.norm(v):.15f}")
        out.append(v)
    return out


def check_compatible(e: Ensemble, size: int, dim: int, what: str = "measurement") -> None:
    if dim != e.dim:
        raise DimensionMismatch(f"{what} acts on dim {dim}, ensemble on dim {e.dim}")
    if size != e.size:
        raise LengthMismatch(f"{what} has {size} outcomes for {e.size} states")


def p_succ(e: Ensemble, m: Povm) -> float:
    """
    Success rate Tr sum_k M_k rho_k; a sub-POVM deficit counts as failure.

    Args:
        e: Ensemble of prior-weighted states
        m: POVM with one element per state

    Returns:
        Probability of identifying the drawn state correctly
    """
    check_compatible(e, m.size, m.dim, "POVM")
    return float(sum(np.trace(mk @ rho).real for mk, rho in zip(m.elements, e.states)))


def ensemble_inner_product(e: Ensemble, f: GeneralizedMeasurement, g: GeneralizedMeasurement) -> complex:
    """<F, G>_E = Tr sum_k F_k^dag G_k rho_k."""
    check_compatible(e, f.size, f.dim, "left factor set")
    check_compatible(e, g.size, g.dim, "right factor set")
    return complex(sum(
        np.trace(fk.conj().T @ gk @ rho) for fk, gk, rho in zip(f.factors, g.factors, e.states)
    ))
