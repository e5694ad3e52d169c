"""
Harmonic-oscillator eigenfunctions in the quadrature representation.

Scaled so that the variable is an eigenvalue of a quadrature with vacuum
variance 1 (X = a + a^dagger, and by rotation Y = -i(a - a^dagger)):

    psi_0(y) = (2 pi)^(-1/4) exp(-y^2 / 4)
    psi_n(y) = (y psi_{n-1}(y) - sqrt(n-1) psi_{n-2}(y)) / sqrt(n)
"""

import math

import numpy as np


def hermite_table(n_max: int, y) -> np.ndarray:
    """
    psi_0 .. psi_{n_max-1} evaluated on y.

    Args:
        n_max: Number of eigenfunctions (truncation dimension)
        y: Scalar or 1-D array of quadrature values

    Returns:
        Array of shape (n_max, len(y)) (or (n_max,) for scalar y)
    """
    y = np.asarray(y, dtype=float)
    scalar = y.ndim == 0
    y = np.atleast_1d(y)

    table = np.zeros((n_max, y.size))
    table[0] = (2.0 * math.pi) ** -0.25 * np.exp(-0.25 * y**2)
    if n_max > 1:
        table[1] = y * table[0]
    for n in range(2, n_max):
        table[n] = (y * table[n - 1] - math.sqrt(n - 1) * table[n - 2]) / math.sqrt(n)

    return table[:, 0] if scalar else table


def hermite_wavefunction(n: int, y):
    """Value of the n-th normalized eigenfunction at y (scalar or array)."""
    if n < 0:
        raise ValueError(f"hermite_wavefunction needs n >= 0, got {n}")
    return hermite_table(n + 1, y)[n]
