"""
Exception types raised across fockforce.

Every error is a ValueError subclass so callers that only care about
"bad input / impossible computation" can catch ValueError.
"""

from typing import Optional


class FockForceError(ValueError):
    """Base class for all fockforce errors."""


class NonConvergence(FockForceError):
    """A power series hit max_terms before reaching its tolerance."""


class DimensionMismatch(FockForceError):
    """Operands have incompatible shapes or mode dimensions."""


class TruncationTooSmall(FockForceError):
    """The Fock-space cutoff cannot hold the requested state or displacement."""

    def __init__(self, message: str, suggested_dim: Optional[int] = None):
        super().__init__(message)
        self.suggested_dim = suggested_dim


class MemoryCapExceeded(FockForceError):
    """A multi-mode tensor would exceed the configured amplitude cap."""


class NoRoot(FockForceError):
    """SNR(eps) = 1 has no root on the search bracket."""


class DegenerateGenerator(FockForceError):
    """Generator variance is zero (or numerically so); no bound exists."""


class ComponentsNotResolvable(FockForceError):
    """Coherent components overlap too much for phase readout."""


class OddPairCount(FockForceError):
    """Pairwise Ramsey scheme requested with an odd number of qubits."""


class DimensionCapExceeded(FockForceError):
    """Too many qubits for dense collective-spin matrices."""


class GridTooNarrow(FockForceError):
    """Homodyne grid misses more probability mass than allowed."""


class CasimirMismatch(FockForceError):
    """Dicke states are not Casimir eigenvectors within tolerance."""
