"""
Quadrature readout of a weak force: displace, measure sum_i Y_i, and find
the smallest epsilon whose signal-to-noise ratio reaches one.
"""

import functools
import logging
import math
from typing import Optional, Tuple

import numpy as np

from fockforce.errors import FockForceError, NoRoot
from fockforce.fock import (
    AnyState,
    MultiModeState,
    annihilation,
    apply_single_mode,
    as_multimode,
    creation,
    displacement,
    expectation,
    number,
    quadrature_y,
    truncation_rule,
)
from fockforce.models.schemas import FamilyTag, ForceParams, SensitivityReport, StateFamily
from fockforce.numerics import bessel_i
from fockforce.states import build, suggest_dim


logger = logging.getLogger(__name__)

QUADRATURE_FAMILIES = (
    FamilyTag.COHERENT,
    FamilyTag.SQUEEZED_VACUUM,
    FamilyTag.TWO_MODE_SQUEEZED,
    FamilyTag.CIRCLE,
)

# Linearity test displacements and relative tolerance
_EPS_TRIALS = (0.1, 0.2)
_LINEAR_RTOL = 1e-6

_BISECT_LO = 1e-6
_BISECT_HI = 10.0
_BISECT_XTOL = 1e-12


@functools.lru_cache(maxsize=256)
def _displacement(beta: complex, dim: int):
    return displacement(beta, dim)


def apply_weak_force(state: AnyState, force: ForceParams) -> MultiModeState:
    """
    Displace every mode by D(beta) (only mode 0 when force.per_mode is off).

    Raises:
        TruncationTooSmall: a mode's cutoff is too small for |beta|
    """
    state = as_multimode(state)
    beta = force.beta
    if beta == 0:
        return state
    modes = range(state.n_modes) if force.per_mode else (0,)
    out = state
    for mode in modes:
        out = apply_single_mode(out, _displacement(beta, state.mode_dims[mode]), mode)

    loss = abs(state.norm - out.norm)
    if loss > 1e-9:
        logger.warning(f"weak force beta={beta:.4g} changed the norm by {loss:.3e}")
    return out.with_amps(out.amps * (state.norm / out.norm))


def _y_sum(state: MultiModeState) -> MultiModeState:
    """(sum_i Y_i) |state>."""
    total = np.zeros_like(state.amps)
    for mode, d in enumerate(state.mode_dims):
        total = total + apply_single_mode(state, quadrature_y(d), mode).amps
    return state.with_amps(total)


def quadrature_stats(state: AnyState) -> Tuple[float, float]:
    """
    Mean and variance of the mode-summed momentum quadrature sum_i Y_i.

    Returns:
        (S, V)
    """
    state = as_multimode(state)
    norm_sq = state.norm**2
    acted = _y_sum(state)
    mean = float(np.vdot(state.amps, acted.amps).real) / norm_sq
    second = float(np.vdot(acted.amps, acted.amps).real) / norm_sq
    return mean, second - mean**2


def correlated_pair_variance(state: AnyState) -> float:
    """
    2 (1 + <a^dag a + b^dag b> - <a^dag b^dag + a b>) for a two-mode state.

    Equals Var(Y_1 + Y_2) for number-correlated states sum_n c_n |n, n>
    and is unchanged by the displacement.
    """
    state = as_multimode(state)
    if state.n_modes != 2:
        raise FockForceError(f"correlated-pair variance needs 2 modes, got {state.n_modes}")
    d0, d1 = state.mode_dims
    photons = expectation(state, [(number(d0), 0)]) + expectation(state, [(number(d1), 1)])
    pairs = expectation(state, [(creation(d0), 0), (creation(d1), 1)]) + expectation(
        state, [(annihilation(d0), 0), (annihilation(d1), 1)]
    )
    return float(2.0 * (1.0 + photons.real - pairs.real))


def circle_epsilon_min_analytic(alpha: float) -> float:
    """1/2 sqrt(1/2 + n - alpha) with per-mode n = alpha I1(2 alpha) / I0(2 alpha)."""
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    mean = alpha * bessel_i(1, 2 * alpha) / bessel_i(0, 2 * alpha) if alpha > 0 else 0.0
    return 0.5 * math.sqrt(0.5 + mean - alpha)


def squeezed_epsilon_min_analytic(r: float, n_modes: int = 1) -> float:
    """e^{-r} / (2 sqrt(N)) for single-mode (N=1) and two-mode (N=2) squeezing."""
    return math.exp(-r) / (2.0 * math.sqrt(n_modes))


def large_squeezing_limit(r: float, n_modes: int = 1) -> float:
    """
    eps_min * sqrt(n_tot) for squeezed states, tending to 1/4 as r grows.

    n_tot is sinh^2 r per mode, so both the single- and two-mode states
    reach eps_min ~ 1/(4 sqrt(n_tot)).
    """
    n_total = n_modes * math.sinh(r) ** 2
    return squeezed_epsilon_min_analytic(r, n_modes) * math.sqrt(n_total)


def _max_displacement(dim: int) -> float:
    """Largest |beta| the displacement truncation rule allows at this cutoff."""
    return max(0.0, -3.0 + math.sqrt(max(dim - 1.0, 0.0)))


def min_detectable_force(
    family: StateFamily,
    dim: Optional[int] = None,
    memory_cap: Optional[int] = None,
) -> SensitivityReport:
    """
    Smallest epsilon with SNR = S / sqrt(V) = 1 under Y-quadrature readout.

    S is checked for linearity at eps = 0.1, 0.2 and V for eps-independence
    at eps = 0, 0.1. If both hold, eps_min = sqrt(V) / (S/eps). Otherwise
    SNR(eps) = 1 is bisected on [1e-6, eps_max], where eps_max is 10 or
    the largest displacement the cutoff supports.

    Args:
        family: Coherent, squeezed, two-mode squeezed or circle family
        dim: Per-mode truncation; when omitted, the family suggestion raised
            to what the largest trial displacement needs
        memory_cap: Amplitude cap for two-mode states

    Returns:
        SensitivityReport

    Raises:
        NoRoot: SNR stays below one up to eps_max
    """
    if family.tag not in QUADRATURE_FAMILIES:
        raise FockForceError(f"{family.tag.value} is not analysed by quadrature readout")

    if dim is None:
        dim = max(suggest_dim(family), truncation_rule(_EPS_TRIALS[-1]))
    state = as_multimode(build(family, dim, memory_cap=memory_cap))
    mode_dim = min(state.mode_dims)

    def stats(eps: float) -> Tuple[float, float]:
        return quadrature_stats(apply_weak_force(state, ForceParams(epsilon=eps)))

    _, v0 = stats(0.0)
    s1, v1 = stats(_EPS_TRIALS[0])
    s2, _ = stats(_EPS_TRIALS[1])
    slope = s1 / _EPS_TRIALS[0]

    linear = abs(s2 - 2.0 * s1) <= _LINEAR_RTOL * abs(2.0 * s1) and abs(v1 - v0) <= _LINEAR_RTOL * max(1.0, abs(v0))
    if linear:
        eps_min = math.sqrt(v0) / slope
        convention = "snr"
    else:
        logger.warning(f"{family.tag.value}: signal is not linear in eps, bisecting SNR(eps) = 1")
        eps_min = _bisect_snr(stats, min(_BISECT_HI, _max_displacement(mode_dim)))
        convention = "snr_bisect"

    report = SensitivityReport(
        family=family,
        signal=slope,
        variance=v0,
        snr_slope=slope / math.sqrt(v0),
        epsilon_min=eps_min,
        mean_photon_total=state.mean_photon or 0.0,
        mode_count=state.n_modes,
        linear=linear,
        convention=convention,
    )
    logger.debug(f"{family.tag.value}: S/eps={slope:.6g} V={v0:.6g} eps_min={eps_min:.6g}")
    return report


def _bisect_snr(stats, hi: float) -> float:
    def snr_minus_one(eps: float) -> float:
        s, v = stats(eps)
        return s / math.sqrt(v) - 1.0

    lo = _BISECT_LO
    if hi <= lo or snr_minus_one(hi) < 0:
        raise NoRoot(f"SNR stays below 1 on [{lo}, {hi:.4g}]")
    if snr_minus_one(lo) >= 0:
        return lo
    while hi - lo > _BISECT_XTOL * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if snr_minus_one(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
