"""
Single-mode operators on a truncated Fock space.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from fockforce.errors import DimensionCapExceeded, DimensionMismatch, TruncationTooSmall
from fockforce.numerics import log_factorial, matrix_exponential


logger = logging.getLogger(__name__)

# Kronecker embedding is a test oracle; keep it tiny
MAX_KRON_DIM = 4096


@dataclass(frozen=True)
class ModeOperator:
    """Dense d x d matrix acting on one mode's truncated space."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.complex128)
        if entries.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"operator entries have shape {entries.shape}, expected ({self.dim}, {self.dim})"
            )
        if not np.all(np.isfinite(entries)):
            raise ValueError("operator entries must be finite")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def __matmul__(self, other: "ModeOperator") -> "ModeOperator":
        if other.dim != self.dim:
            raise DimensionMismatch(f"cannot compose dims {self.dim} and {other.dim}")
        return ModeOperator(self.dim, self.entries @ other.entries)

    def __add__(self, other: "ModeOperator") -> "ModeOperator":
        if other.dim != self.dim:
            raise DimensionMismatch(f"cannot add dims {self.dim} and {other.dim}")
        return ModeOperator(self.dim, self.entries + other.entries)

    def __sub__(self, other: "ModeOperator") -> "ModeOperator":
        if other.dim != self.dim:
            raise DimensionMismatch(f"cannot subtract dims {self.dim} and {other.dim}")
        return ModeOperator(self.dim, self.entries - other.entries)

    def scaled(self, factor: complex) -> "ModeOperator":
        return ModeOperator(self.dim, factor * self.entries)

    @property
    def dag(self) -> "ModeOperator":
        return ModeOperator(self.dim, self.entries.conj().T)

    def is_hermitian(self, tol: float = 1e-14) -> bool:
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= tol)


def _check_dim(dim: int) -> None:
    if dim < 2:
        raise DimensionMismatch(f"truncation dimension must be >= 2, got {dim}")


def identity(dim: int) -> ModeOperator:
    _check_dim(dim)
    return ModeOperator(dim, np.eye(dim))


def annihilation(dim: int) -> ModeOperator:
    """Lowering operator a with <n-1|a|n> = sqrt(n)."""
    _check_dim(dim)
    return ModeOperator(dim, np.diag(np.sqrt(np.arange(1, dim)), k=1))


def creation(dim: int) -> ModeOperator:
    return annihilation(dim).dag


def number(dim: int) -> ModeOperator:
    _check_dim(dim)
    return ModeOperator(dim, np.diag(np.arange(dim, dtype=float)))


def quadrature_x(dim: int) -> ModeOperator:
    """X = a + a^dagger (vacuum variance 1)."""
    a = annihilation(dim)
    return a + a.dag


def quadrature_y(dim: int) -> ModeOperator:
    """Y = -i(a - a^dagger), the momentum quadrature displaced by the force."""
    a = annihilation(dim)
    return (a - a.dag).scaled(-1j)


def rotation(phi: float, dim: int) -> ModeOperator:
    """exp(i phi n)."""
    _check_dim(dim)
    return ModeOperator(dim, np.diag(np.exp(1j * phi * np.arange(dim))))


def truncation_rule(beta: complex) -> int:
    """Smallest cutoff that keeps a coherent amplitude's tail below ~1e-12."""
    b = abs(beta)
    return int(math.ceil(b * b + 6.0 * b + 10.0))


def displacement(beta: complex, dim: int) -> ModeOperator:
    """
    D(beta) = exp(beta a^dagger - beta* a) on a truncated space.

    The generator is exponentiated on a padded space and cut back to dim,
    so matrix elements are accurate right up to the cutoff.

    Raises:
        TruncationTooSmall: dim < |beta|^2 + 6|beta| + 10
    """
    _check_dim(dim)
    needed = truncation_rule(beta)
    if dim < needed:
        raise TruncationTooSmall(
            f"displacement by |beta|={abs(beta):.4g} needs dim >= {needed}, got {dim}",
            suggested_dim=needed,
        )
    if beta == 0:
        return identity(dim)

    padded = min(dim + max(16, dim // 2), 4 * dim)
    a = annihilation(padded).entries
    generator = beta * a.conj().T - np.conj(beta) * a
    full = matrix_exponential(generator)
    return ModeOperator(dim, full[:dim, :dim])


def displacement_analytic(beta: complex, dim: int) -> ModeOperator:
    """
    D(beta) from closed-form columns.

    Column n is D(beta)|n> = (a^dagger - beta*)^n |beta> / sqrt(n!). Raising
    only feeds higher number states, so truncating at dim is exact for the
    components we keep.
    """
    _check_dim(dim)
    n = np.arange(dim)
    if beta == 0:
        return identity(dim)
    log_mag = -0.5 * abs(beta) ** 2 + n * math.log(abs(beta)) - 0.5 * log_factorial(n)
    column = np.exp(log_mag) * np.exp(1j * n * np.angle(beta))

    entries = np.zeros((dim, dim), dtype=np.complex128)
    entries[:, 0] = column
    sqrt_n = np.sqrt(n)
    for k in range(1, dim):
        previous = entries[:, k - 1]
        raised = np.zeros(dim, dtype=np.complex128)
        raised[1:] = sqrt_n[1:] * previous[:-1]
        entries[:, k] = (raised - np.conj(beta) * previous) / math.sqrt(k)
    return ModeOperator(dim, entries)


def kron_operator(ops: Sequence[ModeOperator], mode_dims: Sequence[int], modes: Sequence[int]) -> np.ndarray:
    """
    Full I x ... x op x ... x I matrix. Test oracle only.

    Args:
        ops: Operators to embed
        mode_dims: Dimension of every mode
        modes: Mode index for each operator

    Returns:
        Dense matrix on the full tensor-product space (mode 0 slowest)
    """
    total = int(np.prod(mode_dims))
    if total > MAX_KRON_DIM:
        raise DimensionCapExceeded(f"kron oracle limited to {MAX_KRON_DIM} amplitudes, got {total}")
    factors: List[np.ndarray] = [np.eye(d, dtype=np.complex128) for d in mode_dims]
    for op, mode in zip(ops, modes):
        if op.dim != mode_dims[mode]:
            raise DimensionMismatch(f"operator dim {op.dim} does not match mode {mode} dim {mode_dims[mode]}")
        factors[mode] = factors[mode] @ op.entries
    full = factors[0]
    for factor in factors[1:]:
        full = np.kron(full, factor)
    return full
