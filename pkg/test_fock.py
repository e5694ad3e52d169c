"""
Tests for fockforce.fock: mode operators, displacement, tensor-product
application and the beam splitter.

Usage:
    pytest test_fock.py
"""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from fockforce.errors import DimensionMismatch, MemoryCapExceeded, TruncationTooSmall
from fockforce.fock import (
    PHASE_I,
    REAL,
    FockVector,
    ModeOperator,
    MultiModeState,
    annihilation,
    apply_all_modes,
    apply_single_mode,
    beam_splitter,
    check_memory_cap,
    creation,
    displacement,
    displacement_analytic,
    expectation,
    fidelity,
    identity,
    inner_product,
    kron_operator,
    number,
    quadrature_x,
    quadrature_y,
    reduced_schmidt_coefficients,
    rotation,
    tail_mass,
    truncation_rule,
)
from fockforce.states import coherent


def basis(n: int, dim: int) -> FockVector:
    amps = np.zeros(dim)
    amps[n] = 1.0
    return FockVector(dim, amps)


def random_state(dims, seed=3) -> MultiModeState:
    rng = np.random.default_rng(seed)
    total = int(np.prod(dims))
    amps = rng.normal(size=total) + 1j * rng.normal(size=total)
    return MultiModeState(tuple(dims), amps / np.linalg.norm(amps))


# ============================================================================
# Operators
# ============================================================================

def test_ladder_operator_elements():
    a = annihilation(5).entries
    assert a[0, 1] == 1.0
    assert math.isclose(a[3, 4].real, 2.0)
    np.testing.assert_allclose(creation(5).entries, a.T)
    np.testing.assert_allclose(number(5).entries, a.T @ a)


def test_commutator_is_identity_below_cutoff():
    d = 8
    a, ad = annihilation(d), creation(d)
    commutator = (a @ ad - ad @ a).entries
    np.testing.assert_allclose(np.diag(commutator)[:-1], np.ones(d - 1))
    assert math.isclose(commutator[-1, -1].real, 1.0 - d)


def test_quadratures_are_hermitian_and_related_by_rotation():
    d = 10
    assert quadrature_x(d).is_hermitian()
    assert quadrature_y(d).is_hermitian()
    r = rotation(math.pi / 2, d)
    np.testing.assert_allclose((r @ quadrature_x(d) @ r.dag).entries, quadrature_y(d).entries, atol=1e-14)


def test_mode_operator_rejects_wrong_shape():
    with pytest.raises(DimensionMismatch):
        ModeOperator(3, np.eye(4))
    with pytest.raises(DimensionMismatch):
        identity(3) @ identity(4)


def test_truncation_rule():
    assert truncation_rule(0) == 10
    assert truncation_rule(2) == 26
    assert truncation_rule(3j) == 37


# ============================================================================
# Displacement
# ============================================================================

def test_displacement_forms_agree():
    beta = 0.7 - 0.2j
    np.testing.assert_allclose(
        displacement(beta, 30).entries,
        displacement_analytic(beta, 30).entries,
        atol=1e-10,
    )


def test_displacement_matches_scipy_on_padded_space():
    beta, dim, padded = 0.4 + 0.5j, 24, 64
    a = annihilation(padded).entries
    oracle = expm(beta * a.conj().T - np.conj(beta) * a)[:dim, :dim]
    np.testing.assert_allclose(displacement(beta, dim).entries, oracle, atol=1e-10)


def test_displacement_of_vacuum_is_coherent():
    beta = 1.1 + 0.4j
    dim = truncation_rule(beta)
    displaced = apply_single_mode(basis(0, dim), displacement(beta, dim), 0)
    assert fidelity(displaced, coherent(beta, dim)) > 1 - 1e-12


def test_displacement_is_unitary_away_from_cutoff():
    D = displacement(0.5j, 32).entries
    np.testing.assert_allclose(D[:20] @ D[:20].conj().T, np.eye(20), atol=1e-10)


def test_displacement_zero_is_identity():
    np.testing.assert_allclose(displacement(0, 12).entries, np.eye(12))


def test_displacement_truncation_too_small():
    with pytest.raises(TruncationTooSmall) as info:
        displacement(3.0, 6)
    assert info.value.suggested_dim == 37


# ============================================================================
# Containers and tensor products
# ============================================================================

def test_fock_vector_validation():
    with pytest.raises(DimensionMismatch):
        FockVector(1, [1.0])
    with pytest.raises(DimensionMismatch):
        FockVector(3, [1.0, 0.0])


def test_amplitudes_are_read_only():
    state = basis(1, 4)
    with pytest.raises(ValueError):
        state.amps[0] = 1.0


def test_memory_cap():
    assert check_memory_cap((4, 4), memory_cap=16) == 16
    with pytest.raises(MemoryCapExceeded):
        check_memory_cap((4, 5), memory_cap=16)
    with pytest.raises(MemoryCapExceeded):
        MultiModeState((4, 5), np.zeros(20), memory_cap=16)


@pytest.mark.parametrize("mode", [0, 1, 2])
def test_apply_single_mode_matches_kron(mode):
    dims = (3, 4, 2)
    state = random_state(dims)
    op = ModeOperator(dims[mode], np.arange(dims[mode] ** 2).reshape(dims[mode], dims[mode]) + 0.5j)
    full = kron_operator([op], dims, [mode])
    np.testing.assert_allclose(apply_single_mode(state, op, mode).amps, full @ state.amps, atol=1e-12)


def test_operators_on_distinct_modes_commute():
    dims = (4, 4, 4)
    state = random_state(dims, seed=5)
    op = rotation(0.7, 4)
    forward = apply_all_modes(state, op)
    backward = state
    for mode in reversed(range(3)):
        backward = apply_single_mode(backward, op, mode)
    assert np.max(np.abs(forward.amps - backward.amps)) <= 1e-12
    full = kron_operator([op, op, op], dims, [0, 1, 2])
    np.testing.assert_allclose(forward.amps, full @ state.amps, atol=1e-12)


def test_expectation_order_matches_kron():
    dims = (4, 3)
    state = random_state(dims, seed=8)
    ops = [(creation(4), 0), (annihilation(3), 1), (number(4), 0)]
    full = kron_operator([creation(4)], dims, [0]) @ kron_operator([annihilation(3)], dims, [1]) @ kron_operator(
        [number(4)], dims, [0]
    )
    expected = np.vdot(state.amps, full @ state.amps)
    assert np.isclose(expectation(state, ops), expected, atol=1e-12)


def test_apply_single_mode_dimension_checks():
    state = random_state((3, 4))
    with pytest.raises(DimensionMismatch):
        apply_single_mode(state, identity(3), 1)
    with pytest.raises(DimensionMismatch):
        apply_single_mode(state, identity(3), 2)
    with pytest.raises(DimensionMismatch):
        inner_product(state, random_state((4, 3)))


def test_tail_mass():
    assert math.isclose(tail_mass(basis(7, 8)), 1.0)
    assert tail_mass(basis(4, 8)) == 0.0
    product = MultiModeState.product([basis(0, 6), basis(5, 6)])
    assert math.isclose(tail_mass(product), 1.0)


def test_schmidt_coefficients():
    product = MultiModeState.product([coherent(0.5, 14), coherent(-0.3, 14)])
    coefficients = reduced_schmidt_coefficients(product)
    assert math.isclose(coefficients[0], 1.0, rel_tol=1e-12)
    assert np.all(coefficients[1:] < 1e-12)

    bell = np.zeros((2, 2))
    bell[0, 0] = bell[1, 1] = 1 / math.sqrt(2)
    np.testing.assert_allclose(reduced_schmidt_coefficients(MultiModeState((2, 2), bell)), [1 / math.sqrt(2)] * 2)


# ============================================================================
# Beam splitter
# ============================================================================

def test_real_beam_splitter_on_single_photon():
    d = 4
    out = beam_splitter(MultiModeState.product([basis(1, d), basis(0, d)]), 0, 1, math.pi / 4, REAL)
    tensor = out.tensor()
    assert np.isclose(tensor[1, 0], 1 / math.sqrt(2))
    assert np.isclose(tensor[0, 1], -1 / math.sqrt(2))


def test_phase_beam_splitter_on_single_photon():
    d = 4
    out = beam_splitter(MultiModeState.product([basis(1, d), basis(0, d)]), 0, 1, math.pi / 4, PHASE_I)
    tensor = out.tensor()
    assert np.isclose(tensor[1, 0], 1 / math.sqrt(2))
    assert np.isclose(tensor[0, 1], -1j / math.sqrt(2))


def test_hong_ou_mandel_dip():
    d = 5
    out = beam_splitter(MultiModeState.product([basis(1, d), basis(1, d)]), 0, 1, math.pi / 4)
    tensor = out.tensor()
    assert abs(tensor[1, 1]) < 1e-12
    assert np.isclose(abs(tensor[2, 0]) ** 2, 0.5)
    assert np.isclose(abs(tensor[0, 2]) ** 2, 0.5)


def test_beam_splitter_conserves_photon_number():
    d = 12
    state = MultiModeState.product([basis(3, d), basis(2, d)])
    out = beam_splitter(state, 0, 1, 0.3)
    total = expectation(out, [(number(d), 0)]) + expectation(out, [(number(d), 1)])
    assert math.isclose(total.real, 5.0, rel_tol=1e-12)
    assert math.isclose(out.norm, 1.0, rel_tol=1e-12)


def test_beam_splitter_identity_and_errors():
    state = random_state((3, 3))
    assert beam_splitter(state, 0, 1, 0.0) is state
    with pytest.raises(DimensionMismatch):
        beam_splitter(state, 1, 1, 0.5)
    with pytest.raises(DimensionMismatch):
        beam_splitter(random_state((3, 4)), 0, 1, 0.5)
    with pytest.raises(ValueError):
        beam_splitter(state, 0, 1, 0.5, convention="Complex")
