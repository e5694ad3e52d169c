"""
Special functions: log-factorials and modified Bessel functions I0, I1.
"""

import logging
import math
from typing import Optional

import numpy as np
from scipy.special import gammaln

from fockforce.errors import NonConvergence
from fockforce.models.schemas import NumericsConfig


logger = logging.getLogger(__name__)

DEFAULT_NUMERICS = NumericsConfig()

# ln(n!) for n below this comes from a running sum of ln k; gammaln above
_TABLE_SIZE = 1024
_LOG_FACTORIAL_TABLE = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, _TABLE_SIZE, dtype=float)))))


def log_factorial(n):
    """
    ln(n!) for a non-negative integer or an integer array.

    Args:
        n: Non-negative integer (or numpy array of them)

    Returns:
        ln(n!) as float (or float array)
    """
    if np.ndim(n) == 0:
        if n < 0:
            raise ValueError(f"log_factorial needs n >= 0, got {n}")
        if n < _TABLE_SIZE:
            return float(_LOG_FACTORIAL_TABLE[int(n)])
        return float(gammaln(n + 1))
    n = np.asarray(n)
    if np.any(n < 0):
        raise ValueError("log_factorial needs n >= 0")
    small = n < _TABLE_SIZE
    return np.where(small, _LOG_FACTORIAL_TABLE[np.where(small, n, 0).astype(int)], gammaln(n + 1.0))


def bessel_i(order: int, x: float, config: Optional[NumericsConfig] = None) -> float:
    """
    Modified Bessel function of the first kind, orders 0 and 1.

    Sums I_o(x) = sum_k (x/2)^(2k+o) / (k! (k+o)!) with every term formed in
    log space. Summation stops once a term drops below series_tol (absolute
    while the partial sum is below one, relative after that).

    Args:
        order: 0 or 1
        x: Real argument, x >= 0
        config: Numerics tolerances (defaults to NumericsConfig())

    Returns:
        I_order(x)

    Raises:
        NonConvergence: max_terms reached before the tolerance was met
    """
    cfg = config or DEFAULT_NUMERICS
    if order not in (0, 1):
        raise ValueError(f"bessel_i supports orders 0 and 1, got {order}")
    if x < 0:
        raise ValueError(f"bessel_i needs x >= 0, got {x}")
    if x == 0.0:
        return 1.0 if order == 0 else 0.0

    log_half_x = math.log(x / 2.0)
    total = 0.0
    for k in range(cfg.max_terms):
        log_term = (2 * k + order) * log_half_x - log_factorial(k) - log_factorial(k + order)
        term = math.exp(log_term)
        total += term
        # terms grow until k ~ x/2, so only stop on the decreasing side
        if k > x / 2.0 and term <= cfg.series_tol * max(1.0, total):
            logger.debug(f"bessel_i({order}, {x}) converged after {k + 1} terms")
            return total

    raise NonConvergence(
        f"bessel_i({order}, {x}) did not converge within {cfg.max_terms} terms"
    )


def coherent_overlap(a: complex, b: complex) -> complex:
    """Analytic overlap <a|b> of two coherent states."""
    return complex(np.exp(-0.5 * abs(a) ** 2 - 0.5 * abs(b) ** 2 + np.conj(a) * b))
