"""
Constructors for every state family, each returning a normalized truncated
state with its analytic mean photon number attached.

Amplitudes are formed in log space, then checked against their analytic
normalization: if more than LEAKAGE_TOL of the probability lies above the
cutoff, TruncationTooSmall is raised with a suggested dimension. Coherent
states use the stricter rule d >= |alpha|^2 + 6|alpha| + 10.

Phase conventions:
    squeezed_vacuum(r): r > 0 squeezes Y (Var e^{-2r}), r < 0 squeezes X.
    generalized_cat(K, nu): sum_mu exp(2 pi i mu nu / K) |alpha e^{2 pi i mu / K}>,
    supported on n = -nu (mod K), eigenvalue exp(-2 pi i nu / K) of
    exp(2 pi i n / K).
"""

import cmath
import logging
import math
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np

from fockforce.errors import FockForceError, TruncationTooSmall
from fockforce.fock import FockVector, MultiModeState, check_memory_cap, truncation_rule
from fockforce.models.schemas import FamilyTag, StateFamily
from fockforce.numerics import bessel_i, log_factorial


logger = logging.getLogger(__name__)

# Largest probability we allow a constructor to lose above the cutoff
LEAKAGE_TOL = 1e-4

# suggest_dim targets this residual mass beyond d - 3
_SUGGEST_RESIDUAL = 1e-12

_MAX_SUGGEST = 4096


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


# ============================================================================
# Helpers
# ============================================================================

def _coherent_amps(alpha: complex, dim: int) -> np.ndarray:
    """Analytic amplitudes e^{-|a|^2/2} a^n / sqrt(n!), n < dim."""
    amps = np.zeros(dim, dtype=np.complex128)
    if alpha == 0:
        amps[0] = 1.0
        return amps
    n = np.arange(dim)
    log_mag = -0.5 * abs(alpha) ** 2 + n * math.log(abs(alpha)) - 0.5 * log_factorial(n)
    return np.exp(log_mag) * np.exp(1j * n * cmath.phase(alpha))


def _residue_mass(x: float, k: int, residue: int) -> float:
    """Poisson(x) probability of n = residue (mod k)."""
    residue %= k
    if x == 0:
        return 1.0 if residue == 0 else 0.0
    n_max = int(x + 20.0 * math.sqrt(x) + 50 + k)
    n = np.arange(residue, n_max, k)
    return float(np.sum(np.exp(-x + n * math.log(x) - log_factorial(n))))


def _check_leakage(leakage: float, what: str, suggested: int) -> None:
    if leakage > LEAKAGE_TOL:
        raise TruncationTooSmall(
            f"{what} loses {leakage:.3e} probability above the cutoff; try dim >= {suggested}",
            suggested_dim=suggested,
        )
    logger.debug(f"{what}: truncation leakage {leakage:.3e}")


def _cutoff_from_probs(probs: np.ndarray) -> int:
    """Smallest d with residual mass beyond d - 3 below _SUGGEST_RESIDUAL."""
    residual = 1.0 - np.cumsum(probs)
    hits = np.nonzero(residual <= _SUGGEST_RESIDUAL)[0]
    last = int(hits[0]) if hits.size else probs.size
    return max(last + 4, 4)


# ============================================================================
# Single-mode families
# ============================================================================

def coherent(alpha: complex, dim: int) -> FockVector:
    """
    Coherent state |alpha>.

    Raises:
        TruncationTooSmall: dim < |alpha|^2 + 6|alpha| + 10
    """
    needed = truncation_rule(alpha)
    if dim < needed:
        raise TruncationTooSmall(
            f"coherent state with |alpha|={abs(alpha):.4g} needs dim >= {needed}, got {dim}",
            suggested_dim=needed,
        )
    amps = _coherent_amps(alpha, dim)
    return FockVector(dim, amps / np.linalg.norm(amps), mean_photon=abs(alpha) ** 2)


def _squeezed_probs(r: float, n_max: int) -> np.ndarray:
    """Number distribution of the squeezed vacuum on n < n_max."""
    probs = np.zeros(n_max)
    if r == 0:
        probs[0] = 1.0
        return probs
    half = np.arange((n_max + 1) // 2)
    lam = math.tanh(abs(r))
    log_p = (
        -math.log(math.cosh(r))
        + 2 * half * math.log(lam / 2.0)
        + log_factorial(2 * half)
        - 2 * log_factorial(half)
    )
    probs[2 * half] = np.exp(log_p)
    return probs


def squeezed_vacuum(r: float, dim: int) -> FockVector:
    """
    Single-mode squeezed vacuum with lambda = tanh r.

    Amplitude on |2n> is cosh(r)^(-1/2) (lambda/2)^n sqrt((2n)!) / n!; odd
    amplitudes are exactly zero.
    """
    amps = np.zeros(dim, dtype=np.complex128)
    if r == 0:
        amps[0] = 1.0
        return FockVector(dim, amps, mean_photon=0.0)

    lam = math.tanh(r)
    half = np.arange((dim + 1) // 2)
    log_mag = (
        -0.5 * math.log(math.cosh(r))
        + half * math.log(abs(lam) / 2.0)
        + 0.5 * log_factorial(2 * half)
        - log_factorial(half)
    )
    amps[2 * half] = np.exp(log_mag) * np.sign(lam) ** half

    leakage = 1.0 - float(np.sum(np.abs(amps) ** 2))
    _check_leakage(leakage, f"squeezed vacuum r={r:.4g}", suggest_dim(StateFamily(tag=FamilyTag.SQUEEZED_VACUUM, r=r)))
    return FockVector(dim, amps / np.linalg.norm(amps), mean_photon=math.sinh(r) ** 2)


def _residue_superposition(alpha: complex, k: int, residue: int, dim: int, what: str) -> FockVector:
    """Coherent amplitudes restricted to n = residue (mod k), exactly normalized."""
    x = abs(alpha) ** 2
    mass = _residue_mass(x, k, residue)
    if mass <= 0.0:
        raise FockForceError(f"{what} has zero norm at alpha={alpha}")

    amps = _coherent_amps(alpha, dim)
    n = np.arange(dim)
    amps[(n - residue) % k != 0] = 0.0
    amps = amps / math.sqrt(mass)

    leakage = 1.0 - float(np.sum(np.abs(amps) ** 2))
    _check_leakage(leakage, what, truncation_rule(alpha))
    mean = x * _residue_mass(x, k, residue - 1) / mass
    return FockVector(dim, amps / np.linalg.norm(amps), mean_photon=mean)


def cat(alpha: complex, parity: Union[Parity, str], dim: int) -> FockVector:
    """
    Even or odd cat (|alpha> +- |-alpha>) / sqrt(2 +- 2 e^{-2|alpha|^2}).

    The even cat is supported on even n only, the odd cat on odd n only.
    """
    parity = Parity(parity)
    residue = 0 if parity == Parity.EVEN else 1
    return _residue_superposition(alpha, 2, residue, dim, f"{parity.value} cat alpha={alpha}")


def parity_basis(alpha: complex, dim: int) -> Tuple[FockVector, FockVector]:
    """Exactly normalized (|+>, |->) pair for amplitude alpha."""
    return cat(alpha, Parity.EVEN, dim), cat(alpha, Parity.ODD, dim)


def generalized_cat(k: int, nu: int, alpha: complex, dim: int) -> FockVector:
    """
    |K, nu> = sum_mu exp(2 pi i mu nu / K) |alpha e^{2 pi i mu / K}>, normalized.

    Only number states with n = -nu (mod K) survive.
    """
    if k < 1:
        raise ValueError(f"K must be >= 1, got {k}")
    if not 0 <= nu < k:
        raise ValueError(f"nu must lie in [0, {k - 1}], got {nu}")
    return _residue_superposition(alpha, k, (-nu) % k, dim, f"generalized cat K={k} nu={nu} alpha={alpha}")


# ============================================================================
# Multi-mode families
# ============================================================================

def two_mode_squeezed(lam: float, dim: int, memory_cap: Optional[int] = None) -> MultiModeState:
    """sqrt(1 - lambda^2) sum_n lambda^n |n, n>."""
    if not 0.0 <= lam < 1.0:
        raise ValueError(f"two-mode squeezing needs 0 <= lambda < 1, got {lam}")
    check_memory_cap((dim, dim), memory_cap)
    n = np.arange(dim)
    coeffs = math.sqrt(1.0 - lam**2) * lam**n if lam > 0 else (n == 0).astype(float)

    leakage = lam ** (2 * dim)
    _check_leakage(leakage, f"two-mode squeezed lambda={lam:.4g}", suggest_dim(StateFamily(tag=FamilyTag.TWO_MODE_SQUEEZED, lam=lam)))

    amps = np.zeros((dim, dim), dtype=np.complex128)
    amps[n, n] = coeffs / np.linalg.norm(coeffs)
    return MultiModeState((dim, dim), amps, mean_photon=2 * lam**2 / (1 - lam**2), memory_cap=memory_cap)


def circle_mean_photon(alpha: float) -> float:
    """Per-mode mean photon number alpha I1(2 alpha) / I0(2 alpha)."""
    if alpha == 0:
        return 0.0
    return alpha * bessel_i(1, 2 * alpha) / bessel_i(0, 2 * alpha)


def _circle_probs(alpha: float, n_max: int) -> np.ndarray:
    n = np.arange(n_max)
    if alpha == 0:
        return (n == 0).astype(float)
    return np.exp(2 * (n * math.log(alpha) - log_factorial(n))) / bessel_i(0, 2 * alpha)


def circle_state(alpha: float, dim: int, memory_cap: Optional[int] = None) -> MultiModeState:
    """
    Pair-coherent state sum_n c_n |n, n>, c_n = alpha^n / (n! sqrt(I0(2 alpha))).
    """
    if alpha < 0:
        raise ValueError(f"circle state needs alpha >= 0, got {alpha}")
    check_memory_cap((dim, dim), memory_cap)
    probs = _circle_probs(alpha, dim)
    leakage = 1.0 - float(np.sum(probs))
    _check_leakage(leakage, f"circle state alpha={alpha:.4g}", suggest_dim(StateFamily(tag=FamilyTag.CIRCLE, alpha=alpha)))

    coeffs = np.sqrt(probs)
    n = np.arange(dim)
    amps = np.zeros((dim, dim), dtype=np.complex128)
    amps[n, n] = coeffs / np.linalg.norm(coeffs)
    return MultiModeState((dim, dim), amps, mean_photon=2 * circle_mean_photon(alpha), memory_cap=memory_cap)


def n_mode_cat(alpha: float, n_modes: int, dim: int, memory_cap: Optional[int] = None) -> MultiModeState:
    """
    (|alpha,...,alpha> + |-alpha,...,-alpha>) / sqrt(2 + 2 e^{-2 N |alpha|^2}).
    """
    if n_modes < 1:
        raise ValueError(f"n_mode_cat needs N >= 1, got {n_modes}")
    dims = (dim,) * n_modes
    check_memory_cap(dims, memory_cap)

    single = _coherent_amps(alpha, dim)
    signs = (-1.0) ** np.arange(dim)
    plus, minus = single, single * signs
    for _ in range(n_modes - 1):
        plus = np.kron(plus, single)
        minus = np.kron(minus, single * signs)

    x = n_modes * abs(alpha) ** 2
    amps = (plus + minus) / math.sqrt(2.0 + 2.0 * math.exp(-2.0 * x))
    leakage = 1.0 - float(np.sum(np.abs(amps) ** 2))
    _check_leakage(leakage, f"{n_modes}-mode cat alpha={alpha:.4g}", truncation_rule(alpha))

    mean = x * math.tanh(x) if x > 0 else 0.0
    return MultiModeState(dims, amps / np.linalg.norm(amps), mean_photon=mean, memory_cap=memory_cap)


# ============================================================================
# Family dispatch
# ============================================================================

def suggest_dim(family: StateFamily) -> int:
    """
    Truncation dimension for a family member.

    Coherent-component families use |alpha|^2 + 6|alpha| + 10; the others
    take the smallest d whose analytic number distribution leaves less than
    1e-12 beyond d - 3.
    """
    tag = family.tag
    if tag == FamilyTag.SQUEEZED_VACUUM:
        d = _cutoff_from_probs(_squeezed_probs(family.squeezing, _MAX_SUGGEST))
        return d + (d % 2)
    if tag == FamilyTag.TWO_MODE_SQUEEZED:
        lam = abs(family.tanh_r)
        if lam == 0:
            return 4
        n = math.ceil(math.log(_SUGGEST_RESIDUAL) / (2.0 * math.log(lam)))
        return min(max(n + 4, 4), _MAX_SUGGEST)
    if tag == FamilyTag.CIRCLE:
        return _cutoff_from_probs(_circle_probs(family.alpha, _MAX_SUGGEST))
    return truncation_rule(family.alpha)


def build(
    family: StateFamily,
    dim: Optional[int] = None,
    memory_cap: Optional[int] = None,
) -> Union[FockVector, MultiModeState]:
    """
    Construct the state a StateFamily describes.

    Args:
        family: Tag plus parameters
        dim: Per-mode truncation; suggest_dim(family) when omitted
        memory_cap: Amplitude cap for multi-mode states

    Returns:
        FockVector for single-mode families, MultiModeState otherwise
    """
    dim = dim or suggest_dim(family)
    tag = family.tag
    if tag == FamilyTag.COHERENT:
        return coherent(family.alpha, dim)
    if tag == FamilyTag.SQUEEZED_VACUUM:
        return squeezed_vacuum(family.squeezing, dim)
    if tag == FamilyTag.TWO_MODE_SQUEEZED:
        return two_mode_squeezed(family.tanh_r, dim, memory_cap=memory_cap)
    if tag == FamilyTag.CIRCLE:
        return circle_state(family.alpha, dim, memory_cap=memory_cap)
    if tag == FamilyTag.EVEN_CAT:
        return cat(family.alpha, Parity.EVEN, dim)
    if tag == FamilyTag.ODD_CAT:
        return cat(family.alpha, Parity.ODD, dim)
    if tag == FamilyTag.N_MODE_CAT:
        return n_mode_cat(family.alpha, family.n_modes, dim, memory_cap=memory_cap)
    return generalized_cat(family.k, family.nu, family.alpha, dim)


def support_residue(state: Union[FockVector, MultiModeState], k: int, tol: float = 1e-12) -> Optional[int]:
    """
    The residue r if every populated total photon number n has n = r (mod k).

    Returns None when the support mixes residues.
    """
    if k < 1:
        raise ValueError(f"K must be >= 1, got {k}")
    dims = (state.dim,) if isinstance(state, FockVector) else state.mode_dims
    totals = sum(np.ix_(*[np.arange(d) for d in dims]))
    populated = np.abs(state.amps.reshape(dims)) > tol
    residues = np.unique(np.asarray(totals)[populated] % k)
    return int(residues[0]) if residues.size == 1 else None
