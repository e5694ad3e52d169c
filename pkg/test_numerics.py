"""
Tests for fockforce.numerics: log-factorials, Bessel series, matrix
exponential and quadrature eigenfunctions.

Usage:
    pytest test_numerics.py
"""

import math

import numpy as np
import pytest
from scipy.integrate import trapezoid
from scipy.linalg import expm
from scipy.special import gammaln, iv

from fockforce.errors import DimensionMismatch, NonConvergence
from fockforce.models.schemas import NumericsConfig
from fockforce.numerics import (
    bessel_i,
    coherent_overlap,
    hermite_table,
    hermite_wavefunction,
    log_factorial,
    matrix_exponential,
)


# ============================================================================
# Special functions
# ============================================================================

def test_log_factorial_recursion():
    n = np.arange(0, 401)
    table = log_factorial(n)
    assert np.max(np.abs(np.diff(table) - np.log(n[1:]))) <= 1e-12
    assert log_factorial(0) == 0.0
    assert log_factorial(1) == 0.0
    assert math.isclose(log_factorial(10), 15.104412573075516, rel_tol=1e-12)


@pytest.mark.parametrize("n", [5, 150, 400, 1023, 1024, 3000])
def test_log_factorial_relative_accuracy(n):
    assert math.isclose(log_factorial(n), float(gammaln(n + 1.0)), rel_tol=1e-12)
    np.testing.assert_allclose(log_factorial(np.array([n])), [log_factorial(n)], rtol=1e-15)


def test_log_factorial_rejects_negative():
    with pytest.raises(ValueError):
        log_factorial(-1)


@pytest.mark.parametrize("order", [0, 1])
@pytest.mark.parametrize("x", [1e-3, 0.5, 1.7, 10.0, 40.0])
def test_bessel_i_matches_scipy(order, x):
    assert math.isclose(bessel_i(order, x), iv(order, x), rel_tol=1e-12)


def test_bessel_i_known_values():
    assert bessel_i(0, 0.0) == 1.0
    assert bessel_i(1, 0.0) == 0.0
    assert math.isclose(bessel_i(0, 1.0), 1.2660658777520082, rel_tol=1e-14)
    assert math.isclose(bessel_i(1, 1.0), 0.5651591039924851, rel_tol=1e-14)


def test_bessel_i_nonconvergence():
    with pytest.raises(NonConvergence):
        bessel_i(0, 50.0, NumericsConfig(max_terms=10))


def test_bessel_i_rejects_bad_input():
    with pytest.raises(ValueError):
        bessel_i(2, 1.0)
    with pytest.raises(ValueError):
        bessel_i(0, -1.0)


def test_coherent_overlap():
    assert math.isclose(abs(coherent_overlap(1.0, -1.0)) ** 2, math.exp(-4.0), rel_tol=1e-12)
    assert math.isclose(abs(coherent_overlap(0.3 + 0.2j, 0.3 + 0.2j)), 1.0, rel_tol=1e-14)


# ============================================================================
# Matrix exponential
# ============================================================================

def test_matrix_exponential_matches_scipy():
    rng = np.random.default_rng(5)
    A = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    np.testing.assert_allclose(matrix_exponential(A), expm(A), rtol=1e-10, atol=1e-10)


def test_matrix_exponential_of_antihermitian_is_unitary():
    rng = np.random.default_rng(11)
    H = rng.normal(size=(20, 20)) + 1j * rng.normal(size=(20, 20))
    U = matrix_exponential(1j * (H + H.conj().T))
    np.testing.assert_allclose(U @ U.conj().T, np.eye(20), atol=1e-11)


def test_matrix_exponential_zero_and_diagonal():
    np.testing.assert_allclose(matrix_exponential(np.zeros((4, 4))), np.eye(4))
    d = np.array([0.1, -2.0, 3.0])
    np.testing.assert_allclose(matrix_exponential(np.diag(d)), np.diag(np.exp(d)), rtol=1e-12)


def test_matrix_exponential_rejects_non_square():
    with pytest.raises(DimensionMismatch):
        matrix_exponential(np.zeros((2, 3)))


# ============================================================================
# Hermite functions
# ============================================================================

def test_hermite_functions_are_orthonormal():
    y = np.linspace(-20, 20, 40001)
    table = hermite_table(12, y)
    gram = trapezoid(table[:, None, :] * table[None, :, :], y, axis=-1)
    np.testing.assert_allclose(gram, np.eye(12), atol=1e-9)


def test_hermite_ground_state_has_unit_variance():
    y = np.linspace(-20, 20, 40001)
    density = hermite_wavefunction(0, y) ** 2
    assert math.isclose(trapezoid(y**2 * density, y), 1.0, rel_tol=1e-9)


def test_hermite_scalar_argument():
    assert hermite_table(3, 0.0).shape == (3,)
    assert math.isclose(hermite_wavefunction(0, 0.0), (2 * math.pi) ** -0.25)
