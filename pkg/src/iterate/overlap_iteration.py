"""
Directional iteration of Stinespring contractions for the restricted maximum overlap
"""
from typing import Optional, Tuple

import numpy as np

from config import DEFAULT_MAX_ITERS, DEFAULT_TOL, NORMALIZATION_TOL
from ..channel import StinespringDilation
from ..errors import DegenerateInput, DimensionMismatch, NormalizationError
from ..numlin import gram_power, trace_norm
from ..overlap import OverlapInstance, hat
from .trace import IterationTrace, run_to_convergence


def _check_dilation(instance: OverlapInstance, u: StinespringDilation) -> None:
    if (u.dim_in, u.dim_out) != (instance.dim_k, instance.dim_l):
        raise DimensionMismatch(
            f"dilation maps {u.dim_in}->{u.dim_out}, instance needs {instance.dim_k}->{instance.dim_l}"
        )


def overlap_q(instance: OverlapInstance, u: StinespringDilation) -> np.ndarray:
    """
    Q = Tr_H(|phi><phi| U mu_hat), a (dim_l * dim_env) x dim_k matrix with Tr(U^dag Q) = ||U||^2.

    Q[(l,e), z] = sum phi[l,b] conj(phi[x,a]) U[(x,e), k] mu_hat[(k,a), (z,b)].
    """
    _check_dilation(instance, u)
    dk, dh, dl, de = instance.dim_k, instance.dim_h, instance.dim_l, u.dim_env
    mu = hat(instance).mu_hat.reshape(dk, dh, dk, dh)
    blocks = u.isometry.reshape(dl, de, dk)
    phi = instance.phi
    q = np.einsum("lb,xa,xek,kazb->lez", phi, phi.conj(), blocks, mu)
    return q.reshape(dl * de, dk)


def overlap_seminorm(instance: OverlapInstance, u: StinespringDilation) -> float:
    """||U|| with ||U||^2 = sum_e <phi| (U_e (x) 1) mu (U_e^dag (x) 1) |phi>, the overlap of the induced map."""
    q = overlap_q(instance, u)
    value = float(np.vdot(u.isometry, q).real)
    return float(np.sqrt(max(value, 0.0)))


def overlap_iterate(instance: OverlapInstance, u: StinespringDilation) -> StinespringDilation:
    """
    U^(+) = Q (Q^dag Q)^{-1/2+}, the partial-isometric polar factor of Q.

    Any U is accepted, contractive or not; <U, U^(+)> = ||Q||_1.

    Args:
        instance: Overlap instance
        u: Current dilation K -> L (x) E

    Returns:
        Contraction with the same environment
    """
    q = overlap_q(instance, u)
    root = gram_power(q, -0.5)
    if not np.any(root):
        raise DegenerateInput("Q vanishes; the overlap iterate is undefined")
    return StinespringDilation(
        dim_in=u.dim_in,
        dim_out=u.dim_out,
        dim_env=u.dim_env,
        isometry=q @ root,
    )


def small_angle_guess(instance: OverlapInstance) -> StinespringDilation:
    """
    Canonical dilation of rho -> phi_L^{-1+} Tr(rho), Kraus operators phi_L^{-1/2+}|l0><k0|.

    Not a contraction in general; ||G||^2 = Tr mu_hat and its iterate dilates
    the quadratic overlapper, with <G^(+), G> = Lambda.
    """
    root = gram_power(instance.phi.conj().T, -0.5)
    dk, dl = instance.dim_k, instance.dim_l
    blocks = np.einsum("ab,cd->abcd", root, np.eye(dk))
    return StinespringDilation(
        dim_in=dk,
        dim_out=dl,
        dim_env=dl * dk,
        isometry=blocks.reshape(dl * dl * dk, dk),
    )


def overlap_lambda_at(instance: OverlapInstance, u: StinespringDilation) -> float:
    """Lambda(U) = ||Q||_1 / ||U||."""
    norm = overlap_seminorm(instance, u)
    return trace_norm(overlap_q(instance, u)) / norm if norm > 0 else 0.0


def iterate_overlap_to_convergence(
    instance: OverlapInstance,
    start: Optional[StinespringDilation] = None,
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    oracle_value: Optional[float] = None,
) -> Tuple[StinespringDilation, IterationTrace]:
    """
    Run overlap_iterate until the overlap plateaus.

    With no start the small-angle guess is used: its iterate, a dilation of
    the quadratic overlapper, is the first recorded point and counts as one
    step. An explicit start must be a contraction.

    Args:
        instance: Overlap instance
        start: Starting contraction, or None for the small-angle guess
        tol: Plateau tolerance on the overlap
        max_iters: Maximum number of steps
        oracle_value: Known maximum overlap

    Returns:
        (final contraction, IterationTrace)
    """
    steps_taken = 0
    if start is None:
        start = overlap_iterate(instance, small_angle_guess(instance))
        steps_taken = 1
    elif start.contraction_norm() > 1.0 + NORMALIZATION_TOL:
        raise NormalizationError(f"starting dilation has norm {start.contraction_norm():.12g} > 1")

    def evaluate(u: StinespringDilation):
        return overlap_seminorm(instance, u) ** 2, overlap_lambda_at(instance, u)

    return run_to_convergence(
        start,
        step=lambda u: overlap_iterate(instance, u),
        evaluate=evaluate,
        tol=tol,
        max_iters=max_iters,
        oracle_value=oracle_value,
        steps_taken=steps_taken,
        name="overlap iteration",
    )
