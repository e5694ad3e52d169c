"""
Tests for fockforce.metrology: quadrature sensitivity, estimation bounds,
generalized-cat readout and collective-spin Ramsey bounds.

Usage:
    pytest test_metrology.py
"""

import math

import numpy as np
import pytest

from fockforce.errors import (
    CasimirMismatch,
    ComponentsNotResolvable,
    DegenerateGenerator,
    DimensionCapExceeded,
    FockForceError,
    OddPairCount,
)
from fockforce.metrology import (
    CollectiveSpinOps,
    RamseyScheme,
    apply_weak_force,
    casimir_eigenvalue_check,
    cat_force_bound,
    cat_generator_variance,
    circle_epsilon_min_analytic,
    collective_spin,
    correlated_pair_variance,
    dicke_state,
    estimation_bound,
    generalized_cat_readout,
    ghz_state,
    large_squeezing_limit,
    min_detectable_force,
    quadrature_stats,
    ramsey_bounds,
    ramsey_variance,
    ramsey_variance_brute_force,
    squeezed_epsilon_min_analytic,
)
from fockforce.models.schemas import BoundConvention, FamilyTag, ForceParams, StateFamily
from fockforce.states import build, coherent


# ============================================================================
# Quadrature sensitivity
# ============================================================================

def test_standard_quantum_limit():
    report = min_detectable_force(StateFamily(tag=FamilyTag.COHERENT, alpha=2.0), 32)
    assert abs(report.epsilon_min - 0.5) <= 1e-6
    assert report.linear
    assert report.convention == "snr"
    assert math.isclose(report.signal, 2.0, rel_tol=1e-9)


def test_signal_is_linear_in_force():
    state = build(StateFamily(tag=FamilyTag.SQUEEZED_VACUUM, r=0.5))
    baseline, _ = quadrature_stats(state)
    signals = [
        quadrature_stats(apply_weak_force(state, ForceParams(epsilon=eps)))[0] - baseline for eps in (0.05, 0.1)
    ]
    assert math.isclose(signals[1] / signals[0], 2.0, rel_tol=1e-7)


@pytest.mark.parametrize("r", [0.5, 1.0])
def test_squeezed_vacuum_sensitivity(r):
    report = min_detectable_force(StateFamily(tag=FamilyTag.SQUEEZED_VACUUM, r=r), 64)
    assert abs(report.epsilon_min - 0.5 * math.exp(-r)) <= 1e-4
    assert abs(report.variance - math.exp(-2 * r)) <= 1e-5


def test_two_mode_squeezed_sensitivity():
    two_mode = min_detectable_force(StateFamily(tag=FamilyTag.TWO_MODE_SQUEEZED, r=1.0))
    single = min_detectable_force(StateFamily(tag=FamilyTag.SQUEEZED_VACUUM, r=1.0), 64)
    assert abs(two_mode.epsilon_min - 0.130076) <= 2e-4
    assert abs(two_mode.epsilon_min / single.epsilon_min - 1 / math.sqrt(2)) <= 1e-4
    assert two_mode.mode_count == 2


def test_circle_state_sensitivity():
    report = min_detectable_force(StateFamily(tag=FamilyTag.CIRCLE, alpha=0.85))
    assert abs(report.epsilon_min - 0.221108) <= 2e-4
    assert abs(report.epsilon_min - circle_epsilon_min_analytic(0.85)) <= 2e-4


def test_circle_state_large_alpha_asymptote():
    report = min_detectable_force(StateFamily(tag=FamilyTag.CIRCLE, alpha=6.0))
    assert abs(report.epsilon_min - 0.25) <= 0.006


def test_min_detectable_force_rejects_cat_families():
    with pytest.raises(FockForceError):
        min_detectable_force(StateFamily(tag=FamilyTag.EVEN_CAT, alpha=2.0))


def test_report_row_has_fixed_columns():
    row = min_detectable_force(StateFamily(tag=FamilyTag.COHERENT, alpha=1.0)).to_row()
    assert list(row) == [
        "family", "alpha", "r", "lambda", "K", "nu",
        "N", "n_total", "S_per_eps", "V", "snr_slope", "eps_min", "convention",
    ]


def test_weak_force_shifts_y_by_two_epsilon():
    state = coherent(0.5, 20)
    mean, var = quadrature_stats(apply_weak_force(state, ForceParams(epsilon=0.3)))
    assert math.isclose(mean, 0.6, rel_tol=1e-9)
    assert math.isclose(var, 1.0, rel_tol=1e-9)


@pytest.mark.parametrize(
    "family,dim",
    [
        (StateFamily(tag=FamilyTag.CIRCLE, alpha=0.85), 20),
        (StateFamily(tag=FamilyTag.TWO_MODE_SQUEEZED, r=1.0), None),
    ],
)
def test_correlated_pair_variance_identity(family, dim):
    state = build(family, dim)
    _, variance = quadrature_stats(apply_weak_force(state, ForceParams(epsilon=0.1)))
    assert abs(variance - correlated_pair_variance(state)) <= 1e-8


def test_correlated_pair_variance_on_tmsv():
    state = build(StateFamily(tag=FamilyTag.TWO_MODE_SQUEEZED, r=1.0))
    assert abs(correlated_pair_variance(state) - 2 * math.exp(-2.0)) <= 1e-5


def test_analytic_helpers():
    assert math.isclose(squeezed_epsilon_min_analytic(1.0, 2), 1 / (2 * math.sqrt(2) * math.e))
    assert abs(circle_epsilon_min_analytic(0.85) - 0.221108) < 1e-6
    assert abs(large_squeezing_limit(8.0) - 0.25) < 1e-3
    assert abs(large_squeezing_limit(8.0, 2) - 0.25) < 1e-3


# ============================================================================
# Estimation bounds
# ============================================================================

def test_estimation_bound_conventions():
    unit = estimation_bound(16.0, BoundConvention.UNIT_FACTOR, theta_per_epsilon=2.0)
    cramer_rao = estimation_bound(16.0, "cramer_rao", theta_per_epsilon=2.0)
    assert unit.delta_theta == 0.25
    assert cramer_rao.delta_theta == 0.125
    assert unit.delta_epsilon == 0.125
    assert cramer_rao.convention == BoundConvention.CRAMER_RAO


def test_estimation_bound_degenerate():
    with pytest.raises(DegenerateGenerator):
        estimation_bound(0.0)


@pytest.mark.parametrize("n_modes", [1, 2, 3])
def test_cat_generator_variance(n_modes):
    assert abs(cat_generator_variance(2.0, n_modes) / n_modes**2 - 1) <= 0.01
    assert abs(cat_generator_variance(3.0, n_modes) / n_modes**2 - 1) <= 1e-6


def test_cat_bound_scales_as_inverse_n_alpha():
    modes = np.array([1, 2, 3, 4])
    bounds = [cat_force_bound(2.0, int(n)).delta_epsilon for n in modes]
    slope = np.polyfit(np.log(modes), np.log(bounds), 1)[0]
    assert abs(slope + 1) <= 0.02
    assert abs(bounds[0] - 0.5) <= 0.01


def test_entangled_cats_beat_independent_cats():
    entangled = cat_force_bound(2.0, 3).delta_epsilon
    independent = cat_force_bound(2.0, 3, entangled=False).delta_epsilon
    assert math.isclose(independent / entangled, math.sqrt(3), rel_tol=0.02)


def test_entangled_advantage_at_fixed_photon_number():
    n_total = 36
    for n in (1, 2, 3, 4):
        alpha = math.sqrt(n_total / n)
        entangled = cat_force_bound(alpha, n).delta_epsilon
        copies = cat_force_bound(alpha, n, entangled=False).delta_epsilon
        assert math.isclose(entangled / copies, 1 / math.sqrt(n), rel_tol=0.01)
        assert math.isclose(copies, 1 / math.sqrt(n_total), rel_tol=0.01)


def test_generalized_cat_readout():
    beta = 0.01 * complex(math.cos(0.6), math.sin(0.6))
    theta, phi = generalized_cat_readout(3.0, beta)
    assert abs(theta - 3.0 * beta.imag) <= 5e-3
    assert abs(phi - 3.0 * beta.real) <= 5e-3


def test_generalized_cat_readout_needs_resolvable_components():
    with pytest.raises(ComponentsNotResolvable):
        generalized_cat_readout(1.0, 0.01j)
    with pytest.raises(ValueError):
        generalized_cat_readout(3.0, 0.5)


# ============================================================================
# Collective spin
# ============================================================================

@pytest.mark.parametrize("n", range(1, 9))
def test_ramsey_bounds(n):
    assert abs(ramsey_bounds(n, RamseyScheme.PRODUCT) - 1 / math.sqrt(n)) <= 1e-12
    assert abs(ramsey_bounds(n, RamseyScheme.GHZ) - 1 / n) <= 1e-12
    assert abs(ramsey_variance_brute_force(n, "ghz") - ramsey_variance(n, "ghz")) <= 1e-12
    if n % 2 == 0:
        assert abs(ramsey_bounds(n, RamseyScheme.PAIRWISE) - 1 / math.sqrt(2 * n)) <= 1e-12
        assert abs(ramsey_variance_brute_force(n, "pairwise") - 2 * n) <= 1e-12


def test_pairwise_needs_even_count():
    with pytest.raises(OddPairCount):
        ramsey_bounds(3, RamseyScheme.PAIRWISE)


@pytest.mark.parametrize("n", range(1, 7))
def test_casimir_on_dicke_states(n):
    value = casimir_eigenvalue_check(collective_spin(n))
    assert abs(value - 0.5 * n * (0.5 * n + 1)) <= 1e-10


def test_casimir_mismatch_is_detected():
    ops = collective_spin(3)
    broken = CollectiveSpinOps(3, 2 * ops.jx, ops.jy, ops.jz)
    with pytest.raises(CasimirMismatch):
        casimir_eigenvalue_check(broken)


def test_ghz_in_dicke_basis():
    n = 5
    expected = (dicke_state(n, 0) + dicke_state(n, n)) / math.sqrt(2)
    np.testing.assert_allclose(ghz_state(n), expected)


def test_qubit_cap():
    with pytest.raises(DimensionCapExceeded):
        collective_spin(13)
