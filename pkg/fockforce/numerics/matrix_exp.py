"""
Dense complex matrix exponential by scaling and squaring.
"""

import logging
import math
from typing import Optional

import numpy as np

from fockforce.errors import DimensionCapExceeded, DimensionMismatch, NonConvergence
from fockforce.models.schemas import NumericsConfig


logger = logging.getLogger(__name__)

DEFAULT_NUMERICS = NumericsConfig()

# Largest matrix we exponentiate densely
MAX_EXPM_DIM = 4096

# Scale A until ||A||_1 <= this before running the Taylor core
_SCALED_NORM = 0.5


def matrix_exponential(A: np.ndarray, config: Optional[NumericsConfig] = None) -> np.ndarray:
    """
    exp(A) for a dense square matrix.

    A is scaled by 2^-s so that its 1-norm is at most 1/2, the Taylor series of
    the scaled matrix is summed until a term's 1-norm falls below
    expm_tol / 2^s, and the result is squared s times.

    Args:
        A: Square complex (or real) matrix with finite entries
        config: Numerics tolerances

    Returns:
        exp(A) as a complex128 array

    Raises:
        DimensionMismatch: A is not square
        DimensionCapExceeded: A is larger than MAX_EXPM_DIM
    """
    cfg = config or DEFAULT_NUMERICS
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"matrix_exponential needs a square matrix, got shape {A.shape}")
    n = A.shape[0]
    if n > MAX_EXPM_DIM:
        raise DimensionCapExceeded(f"matrix of dimension {n} exceeds cap {MAX_EXPM_DIM}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix_exponential needs finite entries")

    norm = np.linalg.norm(A, 1)
    squarings = 0
    if norm > _SCALED_NORM:
        squarings = int(math.ceil(math.log2(norm / _SCALED_NORM)))
    B = A / (2.0**squarings)

    result = np.eye(n, dtype=np.complex128)
    term = np.eye(n, dtype=np.complex128)
    for k in range(1, cfg.max_terms + 1):
        term = term @ B / k
        result = result + term
        if np.linalg.norm(term, 1) <= cfg.expm_tol / 2.0**squarings:
            break
    else:
        raise NonConvergence(f"Taylor core did not converge in {cfg.max_terms} terms")

    for _ in range(squarings):
        result = result @ result

    logger.debug(f"expm: dim={n}, norm={norm:.3g}, squarings={squarings}, taylor_terms={k}")
    return result
