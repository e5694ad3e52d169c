"""
Collective spin of N qubits and the Ramsey phase-estimation bounds.

Qubit 0 is the most significant bit of a basis index; Z|0> = |0>,
Z|1> = -|1>. J_a = 1/2 sum_i sigma_a^(i).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from fockforce.errors import CasimirMismatch, DimensionCapExceeded, FockForceError, OddPairCount
from fockforce.models.schemas import BoundConvention

from .estimation import estimation_bound


logger = logging.getLogger(__name__)

MAX_QUBITS = 12

# Brute-force variance cross-check runs up to this many qubits
BRUTE_FORCE_QUBITS = 10


class RamseyScheme(str, Enum):
    PRODUCT = "product"
    GHZ = "ghz"
    PAIRWISE = "pairwise"


def _check_qubits(n_qubits: int) -> None:
    if n_qubits < 1:
        raise ValueError(f"need at least one qubit, got {n_qubits}")
    if n_qubits > MAX_QUBITS:
        raise DimensionCapExceeded(f"{n_qubits} qubits exceeds the dense cap of {MAX_QUBITS}")


def _excitations(n_qubits: int) -> np.ndarray:
    """Number of |1> qubits in every basis index."""
    index = np.arange(2**n_qubits)
    return ((index[:, None] >> np.arange(n_qubits)) & 1).sum(axis=1)


@dataclass(frozen=True)
class CollectiveSpinOps:
    n_qubits: int
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray

    def __post_init__(self):
        for name in ("jx", "jy", "jz"):
            matrix = np.array(getattr(self, name), dtype=np.complex128)
            matrix.setflags(write=False)
            object.__setattr__(self, name, matrix)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def casimir_apply(self, vector: np.ndarray) -> np.ndarray:
        """(Jx^2 + Jy^2 + Jz^2) vector, without forming the square."""
        return sum(j @ (j @ vector) for j in (self.jx, self.jy, self.jz))


def collective_spin(n_qubits: int) -> CollectiveSpinOps:
    """
    Dense Jx, Jy, Jz on the 2^N qubit space.

    Raises:
        DimensionCapExceeded: N > 12
    """
    _check_qubits(n_qubits)
    size = 2**n_qubits
    index = np.arange(size)
    jx = np.zeros((size, size), dtype=np.complex128)
    jy = np.zeros((size, size), dtype=np.complex128)
    for qubit in range(n_qubits):
        bit = 1 << (n_qubits - 1 - qubit)
        flipped = index ^ bit
        # sigma_y |0> = i|1>, sigma_y |1> = -i|0>
        phase = np.where(index & bit, -1j, 1j)
        jx[flipped, index] += 0.5
        jy[flipped, index] += 0.5 * phase
    jz = np.diag(0.5 * n_qubits - _excitations(n_qubits)).astype(np.complex128)
    return CollectiveSpinOps(n_qubits, jx, jy, jz)


def dicke_state(n_qubits: int, excitations: int) -> np.ndarray:
    """Symmetric state with `excitations` qubits in |1>; Jz eigenvalue N/2 - k."""
    _check_qubits(n_qubits)
    if not 0 <= excitations <= n_qubits:
        raise ValueError(f"excitations must lie in [0, {n_qubits}], got {excitations}")
    support = (_excitations(n_qubits) == excitations).astype(np.complex128)
    return support / np.linalg.norm(support)


def ghz_state(n_qubits: int) -> np.ndarray:
    """(|0...0> + |1...1>) / sqrt(2)."""
    _check_qubits(n_qubits)
    state = np.zeros(2**n_qubits, dtype=np.complex128)
    state[0] = state[-1] = 1.0 / np.sqrt(2.0)
    return state


def casimir_eigenvalue_check(ops: CollectiveSpinOps, tol: float = 1e-10) -> float:
    """
    Confirm every Dicke state is a Casimir eigenvector with (N/2)(N/2 + 1).

    Returns:
        The eigenvalue, averaged over the N + 1 Dicke states

    Raises:
        CasimirMismatch: residual above tol on any Dicke state
    """
    n = ops.n_qubits
    expected = 0.5 * n * (0.5 * n + 1.0)
    measured = []
    for k in range(n + 1):
        vector = dicke_state(n, k)
        image = ops.casimir_apply(vector)
        residual = float(np.linalg.norm(image - expected * vector))
        if residual > tol:
            raise CasimirMismatch(f"Dicke state k={k} of N={n}: residual {residual:.3e} > {tol}")
        measured.append(float(np.vdot(vector, image).real))
    return float(np.mean(measured))


# ============================================================================
# Ramsey bounds
# ============================================================================

def _scheme_state(n_qubits: int, scheme: RamseyScheme) -> np.ndarray:
    if scheme == RamseyScheme.GHZ:
        return ghz_state(n_qubits)
    if scheme == RamseyScheme.PRODUCT:
        single = np.array([1.0, 1.0], dtype=np.complex128) / np.sqrt(2.0)
        state = single
        for _ in range(n_qubits - 1):
            state = np.kron(state, single)
        return state
    bell = np.array([1.0, 0.0, 0.0, 1.0], dtype=np.complex128) / np.sqrt(2.0)
    state = bell
    for _ in range(n_qubits // 2 - 1):
        state = np.kron(state, bell)
    return state


def _check_scheme(n_qubits: int, scheme: RamseyScheme) -> None:
    if n_qubits < 1:
        raise ValueError(f"need at least one qubit, got {n_qubits}")
    if scheme == RamseyScheme.PAIRWISE and n_qubits % 2:
        raise OddPairCount(f"pairwise scheme needs an even number of qubits, got {n_qubits}")


def ramsey_variance(n_qubits: int, scheme: Union[RamseyScheme, str]) -> float:
    """Var(sum_i Z_i): N (product), N^2 (GHZ), 2N (Bell pairs)."""
    scheme = RamseyScheme(scheme)
    _check_scheme(n_qubits, scheme)
    return {
        RamseyScheme.PRODUCT: float(n_qubits),
        RamseyScheme.GHZ: float(n_qubits) ** 2,
        RamseyScheme.PAIRWISE: 2.0 * n_qubits,
    }[scheme]


def ramsey_variance_brute_force(n_qubits: int, scheme: Union[RamseyScheme, str]) -> float:
    """Var(sum_i Z_i) from the full 2^N state vector."""
    scheme = RamseyScheme(scheme)
    _check_scheme(n_qubits, scheme)
    _check_qubits(n_qubits)
    probs = np.abs(_scheme_state(n_qubits, scheme)) ** 2
    z_total = n_qubits - 2.0 * _excitations(n_qubits)
    mean = float(probs @ z_total)
    return float(probs @ z_total**2) - mean**2


def ramsey_bounds(
    n_qubits: int,
    scheme: Union[RamseyScheme, str],
    convention: Union[BoundConvention, str] = BoundConvention.UNIT_FACTOR,
) -> float:
    """
    Phase uncertainty delta_theta for a Ramsey scheme.

    The unit convention gives 1/sqrt(N), 1/N and 1/sqrt(2N). Up to ten
    qubits the variance is also computed from the full state vector.

    Raises:
        OddPairCount: pairwise scheme with odd N
    """
    variance = ramsey_variance(n_qubits, scheme)
    if n_qubits <= BRUTE_FORCE_QUBITS:
        brute = ramsey_variance_brute_force(n_qubits, scheme)
        if abs(brute - variance) > 1e-12 * max(1.0, variance):
            raise FockForceError(f"{scheme} variance {variance} disagrees with brute force {brute}")
        logger.debug(f"ramsey {scheme} N={n_qubits}: variance {variance} confirmed by brute force")
    return estimation_bound(variance, convention).delta_theta
