"""
Parameter-estimation bounds for cat states.

A force rotates each cat within span{|+>, |->} by theta = eps * alpha; the
bound on theta follows from the variance of the generator sum_i sigma_x^(i).
Two prefactor conventions are kept side by side:

    unit        delta_theta = 1 / sqrt(Var)
    cramer_rao  delta_theta = 1 / (2 sqrt(Var))
"""

import cmath
import logging
import math
from typing import Optional, Tuple, Union

import numpy as np

from fockforce.errors import ComponentsNotResolvable, DegenerateGenerator
from fockforce.fock import ModeOperator, apply_single_mode, displacement, inner_product, truncation_rule
from fockforce.models.schemas import BoundConvention, EstimationBound
from fockforce.states import coherent, generalized_cat, n_mode_cat, parity_basis


logger = logging.getLogger(__name__)

DEGENERATE_VARIANCE = 1e-14

# Largest e^{-2 alpha^2} for which coherent components count as orthogonal
_RESOLVABLE_OVERLAP = 1e-6

_MAX_READOUT_BETA = 0.1

_CONVENTION_FACTOR = {
    BoundConvention.UNIT_FACTOR: 1.0,
    BoundConvention.CRAMER_RAO: 0.5,
}


def estimation_bound(
    generator_variance: float,
    convention: Union[BoundConvention, str] = BoundConvention.UNIT_FACTOR,
    theta_per_epsilon: float = 1.0,
) -> EstimationBound:
    """
    delta_theta = factor / sqrt(Var), factor 1 (unit) or 1/2 (cramer_rao).

    Args:
        generator_variance: Var of the rotation generator in the input state
        convention: Prefactor convention
        theta_per_epsilon: d theta / d eps, used for EstimationBound.delta_epsilon

    Raises:
        DegenerateGenerator: variance <= 1e-14
    """
    convention = BoundConvention(convention)
    if generator_variance <= DEGENERATE_VARIANCE:
        raise DegenerateGenerator(f"generator variance {generator_variance:.3e} gives no bound")
    factor = _CONVENTION_FACTOR[convention]
    return EstimationBound(
        generator_variance=generator_variance,
        delta_theta=factor / math.sqrt(generator_variance),
        convention_factor=factor,
        theta_per_epsilon=theta_per_epsilon,
        convention=convention,
    )


def parity_flip(alpha: float, dim: int) -> ModeOperator:
    """sigma_x = |+><-| + |-><+| built from the exactly normalized parity states."""
    plus, minus = parity_basis(alpha, dim)
    entries = np.outer(plus.amps, minus.amps.conj()) + np.outer(minus.amps, plus.amps.conj())
    return ModeOperator(dim, entries)


def cat_generator_variance(
    alpha: float,
    n_modes: int,
    dim: Optional[int] = None,
    memory_cap: Optional[int] = None,
) -> float:
    """
    Var(sum_i sigma_x^(i)) on the N-mode cat; tends to N^2 for large alpha.

    Raises:
        TruncationTooSmall, MemoryCapExceeded
    """
    dim = dim or truncation_rule(alpha)
    state = n_mode_cat(alpha, n_modes, dim, memory_cap=memory_cap)
    flip = parity_flip(alpha, dim)

    acted = np.zeros_like(state.amps)
    for mode in range(n_modes):
        acted = acted + apply_single_mode(state, flip, mode).amps
    mean = float(np.vdot(state.amps, acted).real)
    second = float(np.vdot(acted, acted).real)
    variance = second - mean**2
    logger.debug(f"cat generator variance alpha={alpha} N={n_modes}: {variance:.12g}")
    return variance


def cat_force_bound(
    alpha: float,
    n_modes: int,
    convention: Union[BoundConvention, str] = BoundConvention.UNIT_FACTOR,
    entangled: bool = True,
    dim: Optional[int] = None,
    memory_cap: Optional[int] = None,
) -> EstimationBound:
    """
    Force bound from N cat modes of amplitude alpha (theta = eps * alpha).

    entangled=True uses the N-mode cat; entangled=False uses N independent
    single-mode cats, whose generator variances add. The disentangled
    protocol (one cat of amplitude sqrt(N) alpha) is cat_force_bound(
    sqrt(N) * alpha, 1, ...).
    """
    if entangled:
        variance = cat_generator_variance(alpha, n_modes, dim, memory_cap)
    else:
        variance = n_modes * cat_generator_variance(alpha, 1, dim, memory_cap)
    return estimation_bound(variance, convention, theta_per_epsilon=alpha)


def generalized_cat_readout(alpha: float, beta: complex, dim: Optional[int] = None) -> Tuple[float, float]:
    """
    Recover (theta, phi) = (alpha Im beta, alpha Re beta) from a displaced |4, 0>.

    D(beta) puts the phase 2 Im(gamma* beta) on each coherent component
    |gamma>, so the overlaps with |+-alpha> carry +-2 theta and those with
    |-+i alpha> carry +-2 phi.

    Raises:
        ComponentsNotResolvable: e^{-2 alpha^2} > 1e-6
    """
    if math.exp(-2.0 * alpha**2) > _RESOLVABLE_OVERLAP:
        raise ComponentsNotResolvable(
            f"alpha={alpha} leaves coherent components overlapping (e^(-2 alpha^2) > {_RESOLVABLE_OVERLAP})"
        )
    if abs(beta) > _MAX_READOUT_BETA:
        raise ValueError(f"readout assumes |beta| <= {_MAX_READOUT_BETA}, got {abs(beta):.4g}")

    dim = dim or truncation_rule(alpha + abs(beta))
    start = generalized_cat(4, 0, alpha, dim)
    out = apply_single_mode(start, displacement(beta, dim), 0)

    def overlap(gamma: complex) -> complex:
        return inner_product(coherent(gamma, dim), out)

    theta = 0.25 * cmath.phase(overlap(alpha) * overlap(-alpha).conjugate())
    phi = 0.25 * cmath.phase(overlap(-1j * alpha) * overlap(1j * alpha).conjugate())
    return theta, phi
