"""
Square-root measurements, the JRF directional iterate and the Helstrom oracle
"""
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import ArityError, DegenerateInput
from ..numlin import gram_power, gram_root_trace, positive_projection, pseudo_power, trace_norm
from .ensemble import (
    Ensemble,
    GeneralizedMeasurement,
    Povm,
    unit_vectors,
    check_compatible,
)


def _inverse_sqrt(s: np.ndarray, what: str, factor: bool = False) -> np.ndarray:
    """S^{-1/2+}, or (B^dag B)^{-1/2+} read off the factor B when factor is set."""
    root = gram_power(s, -0.5) if factor else pseudo_power(s, -0.5)
    if not np.any(root):
        raise DegenerateInput(f"{what} vanishes; the measurement is undefined")
    return root


def _sandwich(x: np.ndarray, middle: Sequence[np.ndarray]) -> List[np.ndarray]:
    return [x @ mk @ x for mk in middle]


def jrf_iterate(e: Ensemble, m: Povm) -> Povm:
    """
    One Jezek-Rehacek-Fiurasek step M_k -> S^{-1/2+} rho_k M_k rho_k S^{-1/2+}.

    Args:
        e: Ensemble
        m: Current POVM

    Returns:
        Successor POVM, whose success rate is never lower
    """
    check_compatible(e, m.size, m.dim, "POVM")
    weighted = [rho @ mk @ rho for rho, mk in zip(e.states, m.elements)]
    root = _inverse_sqrt(sum(weighted), "sum rho_k M_k rho_k")
    return Povm(dim=e.dim, elements=tuple(_sandwich(root, weighted)))


def quadratic_measurement(e: Ensemble) -> Povm:
    """M_k = (sum rho^2)^{-1/2+} rho_k^2 (sum rho^2)^{-1/2+}, the first JRF iterate of the identity guess."""
    squares = [rho @ rho for rho in e.states]
    root = _inverse_sqrt(np.vstack(e.states), "sum rho_k^2", factor=True)
    return Povm(dim=e.dim, elements=tuple(_sandwich(root, squares)))


def pretty_good_measurement(e: Ensemble) -> Povm:
    root = _inverse_sqrt(sum(e.states), "sum rho_k")
    return Povm(dim=e.dim, elements=tuple(_sandwich(root, e.states)))


def holevo_pure_measurement(weights: Sequence[float], vectors: Sequence[np.ndarray]) -> Povm:
    """
    Rank-one measurement |e_k><e_k| with e_k = (sum p^2 |psi><psi|)^{-1/2+} p_k psi_k.

    Args:
        weights: Prior probabilities p_k
        vectors: Unit state vectors psi_k

    Returns:
        POVM equal to the quadratic measurement of the pure ensemble
    """
    vectors = unit_vectors(weights, vectors)
    rows = np.vstack([p * v.conj() for p, v in zip(weights, vectors)])
    root = _inverse_sqrt(rows, "sum p_k^2 |psi_k><psi_k|", factor=True)
    elements = []
    for p, v in zip(weights, vectors):
        ek = p * (root @ v)
        elements.append(np.outer(ek, ek.conj()))
    return Povm.from_elements(elements)


def helstrom_optimal(e: Ensemble) -> Tuple[float, Povm]:
    """
    Exact binary optimum 1/2 (Tr rho_1 + Tr rho_2 + ||rho_1 - rho_2||_1).

    Returns:
        (optimal success rate, POVM {Pi_+(rho_1 - rho_2), 1 - Pi_+})
    """
    if e.size != 2:
        raise ArityError(f"Helstrom optimum needs exactly 2 states, got {e.size}")
    rho1, rho2 = e.states
    value = 0.5 * (float(np.trace(rho1 + rho2).real) + trace_norm(rho1 - rho2))
    projector = positive_projection(rho1 - rho2)
    povm = Povm(dim=e.dim, elements=(projector, np.eye(e.dim) - projector))
    return value, povm


def identity_guess(e: Ensemble) -> GeneralizedMeasurement:
    """The guess G_k = 1, whose seminorm is 1 and whose iterate is the quadratic measurement."""
    return GeneralizedMeasurement.identity(e.size, e.dim)


def _gm_factor(e: Ensemble, g: GeneralizedMeasurement) -> np.ndarray:
    return np.vstack([f @ rho for rho, f in zip(e.states, g.factors)])


def gm_iterate(e: Ensemble, g: GeneralizedMeasurement) -> GeneralizedMeasurement:
    """E_k -> E_k rho_k (sum rho_l E_l^dag E_l rho_l)^{-1/2+} for generalized measurements."""
    check_compatible(e, g.size, g.dim, "generalized measurement")
    root = _inverse_sqrt(_gm_factor(e, g), "sum rho_l E_l^dag E_l rho_l", factor=True)
    return GeneralizedMeasurement(dim=e.dim, factors=tuple(f @ rho @ root for f, rho in zip(g.factors, e.states)))


def directional_lambda(e: Ensemble, g: GeneralizedMeasurement) -> float:
    """<E+, E>_E = Tr sqrt(sum rho_k E_k^dag E_k rho_k); for the identity guess this is Lambda."""
    check_compatible(e, g.size, g.dim, "generalized measurement")
    return gram_root_trace(_gm_factor(e, g))
