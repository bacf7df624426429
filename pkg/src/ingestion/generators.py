"""
Seeded random instances: states, ensembles, POVMs, channels and overlap problems
"""
import logging
from typing import Optional

import numpy as np

from config import DEFAULT_SEED
from ..channel import CpMap, StinespringDilation
from ..errors import DimensionMismatch
from ..iterate import RwFunctional
from ..measure import Ensemble, Povm
from ..numlin import TensorFactorization, pseudo_power
from ..overlap import OverlapInstance

logger = logging.getLogger(__name__)


def make_rng(seed: int = DEFAULT_SEED) -> np.random.Generator:
    """PCG64 stream; the same seed reproduces the same instances on every platform."""
    return np.random.Generator(np.random.PCG64(seed))


def ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Matrix of i.i.d. standard complex normals."""
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_psd(rng: np.random.Generator, d: int, rank: Optional[int] = None) -> np.ndarray:
    g = ginibre(rng, d, rank or d)
    return g @ g.conj().T


def random_density(rng: np.random.Generator, d: int, rank: Optional[int] = None) -> np.ndarray:
    """Ginibre-distributed density operator of the given rank (full rank by default)."""
    rho = random_psd(rng, d, rank)
    return rho / np.trace(rho).real


def random_pure(rng: np.random.Generator, d: int) -> np.ndarray:
    v = ginibre(rng, d, 1).ravel()
    return v / np.linalg.norm(v)


def random_isometry(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """
    Haar isometry from the QR decomposition of a Ginibre matrix, phases fixed by diag(R).
    """
    if rows < cols:
        raise DimensionMismatch(f"no isometry from dimension {cols} into {rows}")
    q, r = np.linalg.qr(ginibre(rng, rows, cols))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases.conj()


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    return random_isometry(rng, d, d)


def random_ensemble(rng: np.random.Generator, m: int, d: int, pure: bool = False) -> Ensemble:
    """
    m prior-weighted states on C^d, priors drawn from the flat Dirichlet distribution.

    Args:
        rng: Generator
        m: Number of states
        d: Dimension
        pure: Draw rank-one states

    Returns:
        Ensemble
    """
    priors = rng.dirichlet(np.ones(m))
    states = []
    for p in priors:
        rho = random_density(rng, d, rank=1 if pure else None)
        states.append(p * rho)
    return Ensemble(dim=d, states=tuple(states))


def random_povm(rng: np.random.Generator, m: int, d: int) -> Povm:
    """Complete POVM S^{-1/2} A_k S^{-1/2} from random PSD A_k with S = sum A_k."""
    raw = [random_psd(rng, d) for _ in range(m)]
    root = pseudo_power(sum(raw), -0.5)
    elements = [root @ a @ root for a in raw]
    return Povm(dim=d, elements=tuple((x + x.conj().T) / 2 for x in elements))


def random_dilation(rng: np.random.Generator, dim_in: int, dim_out: int, dim_env: int) -> StinespringDilation:
    return StinespringDilation(
        dim_in=dim_in,
        dim_out=dim_out,
        dim_env=dim_env,
        isometry=random_isometry(rng, dim_out * dim_env, dim_in),
    )


def random_channel(
    rng: np.random.Generator,
    dim_in: int,
    dim_out: Optional[int] = None,
    kraus: Optional[int] = None,
) -> CpMap:
    """
    Random channel dim_in -> dim_out as the reduction of a Haar isometry.

    Args:
        rng: Generator
        dim_in: Input dimension
        dim_out: Output dimension, default dim_in
        kraus: Number of Kraus operators, default dim_in * dim_out

    Returns:
        Trace-preserving CpMap
    """
    dim_out = dim_out or dim_in
    kraus = kraus or dim_in * dim_out
    if dim_out * kraus < dim_in:
        raise DimensionMismatch(f"{kraus} Kraus operators into dimension {dim_out} cannot preserve trace on {dim_in}")
    return random_dilation(rng, dim_in, dim_out, kraus).to_map()


def random_rw_functional(rng: np.random.Generator, dim_in: int, dim_out: int) -> RwFunctional:
    d = dim_in * dim_out
    return RwFunctional(dim_in=dim_in, dim_out=dim_out, f_matrix=random_psd(rng, d))


def random_overlap_instance(rng: np.random.Generator, dim_k: int, dim_h: int, dim_l: int) -> OverlapInstance:
    """Random density mu on K (x) H and a random unit phi on L (x) H."""
    mu = random_density(rng, dim_k * dim_h)
    phi = random_pure(rng, dim_l * dim_h)
    return OverlapInstance(dim_k=dim_k, dim_h=dim_h, dim_l=dim_l, mu=mu, phi=phi)


def random_bipartite(rng: np.random.Generator, dim_a: int, dim_b: int, pure: bool = False):
    """
    Random state on A (x) B.

    Returns:
        (rho_AB, TensorFactorization((dim_a, dim_b)))
    """
    d = dim_a * dim_b
    if pure:
        v = random_pure(rng, d)
        rho = np.outer(v, v.conj())
    else:
        rho = random_density(rng, d)
    logger.debug(f"drew {'pure' if pure else 'mixed'} bipartite state on {dim_a}x{dim_b}")
    return rho, TensorFactorization((dim_a, dim_b))
