"""
State containers and the tensor-product machinery that acts on them.

A MultiModeState stores one flattened amplitude tensor (row-major, mode 0
slowest). Single-mode operators are applied by contracting one tensor axis,
so the full Kronecker-product operator is never built.
"""

import functools
import logging
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from fockforce import config
from fockforce.errors import DimensionMismatch, MemoryCapExceeded
from fockforce.numerics import matrix_exponential

from .operators import ModeOperator


logger = logging.getLogger(__name__)

PHASE_I = "PhaseI"
REAL = "Real"
BEAM_SPLITTER_CONVENTIONS = (PHASE_I, REAL)


def _frozen_amps(amps) -> np.ndarray:
    arr = np.array(amps, dtype=np.complex128).reshape(-1)
    arr.setflags(write=False)
    return arr


def check_memory_cap(mode_dims: Sequence[int], memory_cap: Optional[int] = None) -> int:
    """Return the amplitude count for mode_dims, or raise if it exceeds the cap."""
    cap = config.MEMORY_CAP if memory_cap is None else memory_cap
    total = 1
    for d in mode_dims:
        total *= int(d)
    if total > cap:
        raise MemoryCapExceeded(
            f"{len(mode_dims)} modes with dims {tuple(mode_dims)} need {total} amplitudes, cap is {cap}"
        )
    return total


# ============================================================================
# Containers
# ============================================================================

@dataclass(frozen=True)
class FockVector:
    """One mode's state as amplitudes <n|psi>, n = 0..dim-1."""

    dim: int
    amps: np.ndarray
    mean_photon: Optional[float] = None

    def __post_init__(self):
        if self.dim < 2:
            raise DimensionMismatch(f"truncation dimension must be >= 2, got {self.dim}")
        amps = _frozen_amps(self.amps)
        if amps.size != self.dim:
            raise DimensionMismatch(f"{amps.size} amplitudes given for dim {self.dim}")
        object.__setattr__(self, "amps", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "FockVector":
        return replace(self, amps=self.amps / self.norm)

    def as_state(self) -> "MultiModeState":
        return MultiModeState((self.dim,), self.amps, mean_photon=self.mean_photon)


@dataclass(frozen=True)
class MultiModeState:
    """Tensor-product state over N modes with per-mode truncation dimensions."""

    mode_dims: Tuple[int, ...]
    amps: np.ndarray
    mean_photon: Optional[float] = None
    memory_cap: Optional[int] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.mode_dims)
        if not dims:
            raise DimensionMismatch("a state needs at least one mode")
        if min(dims) < 2:
            raise DimensionMismatch(f"every mode needs dim >= 2, got {dims}")
        total = check_memory_cap(dims, self.memory_cap)
        amps = _frozen_amps(self.amps)
        if amps.size != total:
            raise DimensionMismatch(f"{amps.size} amplitudes given for mode dims {dims}")
        object.__setattr__(self, "mode_dims", dims)
        object.__setattr__(self, "amps", amps)

    @property
    def n_modes(self) -> int:
        return len(self.mode_dims)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per mode (read-only view)."""
        return self.amps.reshape(self.mode_dims)

    def with_amps(self, amps) -> "MultiModeState":
        """Same layout, new amplitudes; analytic metadata is dropped."""
        return replace(self, amps=amps, mean_photon=None)

    def normalized(self) -> "MultiModeState":
        return replace(self, amps=self.amps / self.norm)

    @classmethod
    def product(cls, vectors: Sequence[FockVector], memory_cap: Optional[int] = None) -> "MultiModeState":
        """Tensor product of single-mode vectors, mode 0 first."""
        dims = tuple(v.dim for v in vectors)
        check_memory_cap(dims, memory_cap)
        amps = vectors[0].amps
        for v in vectors[1:]:
            amps = np.kron(amps, v.amps)
        return cls(dims, amps, memory_cap=memory_cap)


AnyState = Union[FockVector, MultiModeState]


def as_multimode(state: AnyState) -> MultiModeState:
    if isinstance(state, FockVector):
        return state.as_state()
    return state


def _check_mode(state: MultiModeState, mode: int) -> None:
    if not 0 <= mode < state.n_modes:
        raise DimensionMismatch(f"mode {mode} out of range for {state.n_modes}-mode state")


# ============================================================================
# Operations
# ============================================================================

def apply_single_mode(state: AnyState, op: ModeOperator, mode: int) -> MultiModeState:
    """
    (I x ... x op x ... x I) |state>, by contracting one tensor axis.

    The result is not renormalized.
    """
    state = as_multimode(state)
    _check_mode(state, mode)
    if op.dim != state.mode_dims[mode]:
        raise DimensionMismatch(
            f"operator dim {op.dim} does not match mode {mode} dim {state.mode_dims[mode]}"
        )
    contracted = np.tensordot(op.entries, state.tensor(), axes=([1], [mode]))
    return state.with_amps(np.moveaxis(contracted, 0, mode).reshape(-1))


def apply_all_modes(state: AnyState, op: ModeOperator) -> MultiModeState:
    """Apply the same single-mode operator to every mode."""
    state = as_multimode(state)
    for mode in range(state.n_modes):
        state = apply_single_mode(state, op, mode)
    return state


def inner_product(s1: AnyState, s2: AnyState) -> complex:
    """<s1|s2>."""
    s1, s2 = as_multimode(s1), as_multimode(s2)
    if s1.mode_dims != s2.mode_dims:
        raise DimensionMismatch(f"cannot overlap states with dims {s1.mode_dims} and {s2.mode_dims}")
    return complex(np.vdot(s1.amps, s2.amps))


def fidelity(s1: AnyState, s2: AnyState) -> float:
    """|<s1|s2>|^2."""
    return abs(inner_product(s1, s2)) ** 2


def expectation(state: AnyState, ops: Sequence[Tuple[ModeOperator, int]]) -> complex:
    """
    <psi| op_1 op_2 ... op_k |psi>.

    Args:
        state: Single- or multi-mode state
        ops: (operator, mode) pairs in written (left to right) order

    Returns:
        Complex expectation value
    """
    state = as_multimode(state)
    acted = state
    for op, mode in reversed(list(ops)):
        acted = apply_single_mode(acted, op, mode)
    return complex(np.vdot(state.amps, acted.amps))


def tail_mass(state: AnyState, last: int = 3) -> float:
    """Probability on number states n >= d - last in any mode."""
    state = as_multimode(state)
    probs = np.abs(state.tensor()) ** 2
    inside = probs
    for axis, d in enumerate(state.mode_dims):
        inside = np.take(inside, np.arange(max(d - last, 0)), axis=axis)
    return float(np.sum(probs) - np.sum(inside))


def reduced_schmidt_coefficients(state: AnyState, split: int = 1) -> np.ndarray:
    """
    Schmidt coefficients of the bipartition modes[:split] | modes[split:].

    A single coefficient of 1 means a product state across the cut.
    """
    state = as_multimode(state)
    if not 0 < split < state.n_modes:
        raise DimensionMismatch(f"split {split} must lie strictly inside 0..{state.n_modes}")
    left = int(np.prod(state.mode_dims[:split]))
    matrix = state.amps.reshape(left, -1)
    return np.linalg.svd(matrix, compute_uv=False)


# ============================================================================
# Beam splitter
# ============================================================================

@functools.lru_cache(maxsize=512)
def _mixing_block(total: int, theta: float, convention: str) -> np.ndarray:
    """
    Exact two-mode mixing unitary on the fixed-photon-number block.

    Basis |n, total - n>, n = 0..total. The generator conserves total photon
    number, so this block is untruncated.
    """
    n = np.arange(total)
    # <n+1, m-1| a_i^dag a_j |n, m>
    hop = np.sqrt((n + 1.0) * (total - n))
    raise_i = np.zeros((total + 1, total + 1))
    raise_i[n + 1, n] = hop
    if convention == REAL:
        generator = theta * (raise_i - raise_i.T)
    else:
        generator = -1j * theta * (raise_i + raise_i.T)
    unitary = matrix_exponential(generator)
    unitary.setflags(write=False)
    return unitary


def beam_splitter(state: AnyState, i: int, j: int, theta: float, convention: str = REAL) -> MultiModeState:
    """
    Mix modes i and j.

    PhaseI applies exp(-i theta (a_i^dag a_j + a_i a_j^dag)); Real applies
    exp(theta (a_i^dag a_j - a_i a_j^dag)). The unitary is exponentiated per
    total photon number, and amplitude pushed above the cutoff is dropped
    (logged) before restoring the input norm.

    Args:
        state: Input state
        i: First mode
        j: Second mode
        theta: Mixing angle (pi/4 is 50:50)
        convention: "PhaseI" or "Real"

    Returns:
        Mixed state
    """
    state = as_multimode(state)
    if convention not in BEAM_SPLITTER_CONVENTIONS:
        raise ValueError(f"unknown beam-splitter convention {convention!r}")
    _check_mode(state, i)
    _check_mode(state, j)
    if i == j:
        raise DimensionMismatch("beam splitter needs two distinct modes")
    d = state.mode_dims[i]
    if state.mode_dims[j] != d:
        raise DimensionMismatch(
            f"beam splitter needs equal dims, got {state.mode_dims[i]} and {state.mode_dims[j]}"
        )
    if theta == 0.0:
        return state

    moved = np.moveaxis(state.tensor(), (i, j), (-2, -1))
    rest_shape = moved.shape[:-2]
    pairs = moved.reshape(-1, d, d)
    mixed = np.zeros_like(pairs)
    leaked = 0.0

    for total in range(2 * d - 1):
        lo, hi = max(0, total - d + 1), min(total, d - 1)
        ns = np.arange(lo, hi + 1)
        block = np.zeros((pairs.shape[0], total + 1), dtype=np.complex128)
        block[:, ns] = pairs[:, ns, total - ns]
        out = block @ _mixing_block(total, float(theta), convention).T
        mixed[:, ns, total - ns] = out[:, ns]
        leaked += float(np.sum(np.abs(out) ** 2) - np.sum(np.abs(out[:, ns]) ** 2))

    if leaked > 1e-10:
        logger.warning(f"beam splitter pushed {leaked:.3e} probability above cutoff {d}")
    else:
        logger.debug(f"beam splitter leakage {leaked:.3e}")

    result = np.moveaxis(mixed.reshape(rest_shape + (d, d)), (-2, -1), (i, j)).reshape(-1)
    out_norm = np.linalg.norm(result)
    if out_norm > 0:
        result = result * (state.norm / out_norm)
    return state.with_amps(result)
