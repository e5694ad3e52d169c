"""
Tests for fockforce.sampling: counter-based RNG streams, parity readout,
homodyne readout and shot-record files.

Usage:
    pytest test_sampling.py
"""

import io
import math

import numpy as np
import pytest
from scipy.stats import chisquare, norm

from fockforce.errors import DimensionMismatch, GridTooNarrow
from fockforce.metrology import quadrature_stats
from fockforce.models.schemas import FamilyTag, StateFamily
from fockforce.sampling import (
    SHOT_BLOCK,
    ShotRecord,
    ShotScheme,
    block_generator,
    check_seed,
    derive_seed,
    estimate_theta,
    estimator_moments,
    homodyne_chi_square,
    homodyne_distribution,
    replicate_parity,
    sample_homodyne,
    sample_parity_readout,
    shot_noise_slope,
    uniforms,
)
from fockforce.states import build, coherent, squeezed_vacuum


# ============================================================================
# Random streams
# ============================================================================

def test_uniform_stream_is_prefix_stable():
    long = uniforms(42, 3 * SHOT_BLOCK + 17)
    np.testing.assert_array_equal(uniforms(42, 100), long[:100])
    np.testing.assert_array_equal(long[:SHOT_BLOCK], block_generator(42, 0).random(SHOT_BLOCK))


def test_uniform_stream_ignores_worker_count():
    np.testing.assert_array_equal(uniforms(7, 50_000, workers=1), uniforms(7, 50_000, workers=4))


def test_streams_differ_between_seeds():
    assert not np.array_equal(uniforms(0, 64), uniforms(1, 64))


def test_seed_range():
    assert check_seed(2**64 - 1) == 2**64 - 1
    with pytest.raises(ValueError):
        check_seed(-1)
    with pytest.raises(ValueError):
        check_seed(2**64)


def test_derive_seed():
    assert derive_seed(3, 1) == derive_seed(3, 1)
    assert len({derive_seed(3, i) for i in range(100)}) == 100


# ============================================================================
# Parity readout
# ============================================================================

def test_parity_at_zero_angle_is_boundary():
    record = sample_parity_readout(0.0, 100, seed=0)
    assert np.all(record.outcomes == 1)
    estimate = estimate_theta(record)
    assert estimate.theta_hat == 0.0
    assert estimate.plus_count == 100
    assert estimate.boundary


def test_parity_estimate_is_consistent():
    estimate = estimate_theta(sample_parity_readout(0.3, 10_000, seed=0))
    assert abs(estimate.theta_hat - 0.3) <= 3 * estimate.std_error
    assert estimate.std_error == 0.005
    assert not estimate.boundary


def test_parity_outcome_frequencies():
    theta, shots = 0.7, 20_000
    record = sample_parity_readout(theta, shots, seed=11)
    plus = int(np.sum(record.outcomes == 1))
    p = math.cos(theta) ** 2
    _, p_value = chisquare([plus, shots - plus], [shots * p, shots * (1 - p)])
    assert p_value > 1e-3


def test_parity_replications_match_delta_method():
    estimates = replicate_parity(0.3, 10_000, 200, seed=0)
    assert abs(np.std(estimates, ddof=1) / 0.005 - 1) <= 0.2


def test_estimator_moments_follow_delta_method():
    mean, std = estimator_moments(0.3, 10_000)
    assert abs(mean - 0.3) <= 2 * std / math.sqrt(200)
    assert math.isclose(std, 0.005, rel_tol=0.01)
    _, small_sample_std = estimator_moments(0.3, 100)
    assert math.isclose(small_sample_std, 0.05128, rel_tol=1e-3)


def test_parity_estimator_bias_over_replications():
    estimates = replicate_parity(0.3, 10_000, 200, seed=0)
    standard_error = np.std(estimates, ddof=1) / math.sqrt(200)
    assert abs(np.mean(estimates) - 0.3) <= 3 * standard_error


def test_replications_ignore_worker_count():
    np.testing.assert_array_equal(
        replicate_parity(0.4, 500, 20, seed=5, workers=1),
        replicate_parity(0.4, 500, 20, seed=5, workers=3),
    )


def test_shot_noise_slope():
    slope, stds = shot_noise_slope(0.3, (100, 1000, 10_000), replications=200, seed=2)
    assert abs(slope + 0.5) <= 0.05
    assert np.all(np.diff(stds) < 0)


def test_parity_rejects_zero_shots():
    with pytest.raises(ValueError):
        sample_parity_readout(0.3, 0, seed=0)


# ============================================================================
# Homodyne readout
# ============================================================================

def test_vacuum_density_is_standard_normal():
    y, density = homodyne_distribution(coherent(0.0, 12))
    np.testing.assert_allclose(density, norm.pdf(y), atol=1e-12)


def test_squeezed_density_uses_y_quadrature():
    r = 0.5
    y, density = homodyne_distribution(squeezed_vacuum(r, 80))
    np.testing.assert_allclose(density, norm.pdf(y, scale=math.exp(-r)), atol=1e-9)


def test_homodyne_vacuum_variance():
    record = sample_homodyne(coherent(0.0, 12), 100_000, seed=0)
    assert 0.97 <= np.var(record.outcomes, ddof=1) <= 1.03
    assert record.scheme == ShotScheme.HOMODYNE


def test_homodyne_mean_follows_displacement():
    record = sample_homodyne(coherent(0.5j, 16), 50_000, seed=1)
    assert abs(np.mean(record.outcomes) - 1.0) <= 0.02


def test_homodyne_is_deterministic():
    state = squeezed_vacuum(0.3, 30)
    first = sample_homodyne(state, 10_000, seed=9)
    second = sample_homodyne(state, 10_000, seed=9, workers=2)
    np.testing.assert_array_equal(first.outcomes, second.outcomes)


@pytest.mark.parametrize(
    "state,seed",
    [
        (coherent(0.0, 12), 21),
        (squeezed_vacuum(0.5, 80), 22),
        (build(StateFamily(tag=FamilyTag.EVEN_CAT, alpha=2.0)), 23),
    ],
)
def test_homodyne_histogram_matches_exact_distribution(state, seed):
    record = sample_homodyne(state, 100_000, seed=seed)
    statistic, p_value = homodyne_chi_square(record, state)
    assert statistic >= 0.0
    assert p_value > 1e-3


def test_homodyne_even_cat_variance():
    state = build(StateFamily(tag=FamilyTag.EVEN_CAT, alpha=2.0))
    _, exact_variance = quadrature_stats(state)
    record = sample_homodyne(state, 100_000, seed=4)
    assert abs(np.var(record.outcomes, ddof=1) / exact_variance - 1) <= 0.03


def test_homodyne_chi_square_needs_homodyne_record():
    with pytest.raises(ValueError):
        homodyne_chi_square(sample_parity_readout(0.3, 10, seed=0), coherent(0.0, 12))


def test_homodyne_grid_too_narrow():
    with pytest.raises(GridTooNarrow):
        homodyne_distribution(coherent(0.0, 12), grid=(-2.0, 2.0, 1e-3))


def test_homodyne_needs_one_mode():
    state = build(StateFamily(tag=FamilyTag.TWO_MODE_SQUEEZED, r=0.3))
    with pytest.raises(DimensionMismatch):
        sample_homodyne(state, 10, seed=0)


# ============================================================================
# Shot records
# ============================================================================

def test_shot_record_csv():
    record = sample_parity_readout(0.3, 5, seed=4)
    text = record.to_csv()
    lines = text.split("\n")
    assert lines[0] == "# scheme=parity seed=4 shots=5 theta=0.3"
    assert lines[1] == "shot,outcome"
    assert len(lines) == 8 and lines[-1] == ""
    restored = ShotRecord.from_csv(io.StringIO(text))
    np.testing.assert_array_equal(restored.outcomes, record.outcomes)
    assert restored.params == {"theta": 0.3}


def test_shot_record_rejects_wrong_length():
    with pytest.raises(DimensionMismatch):
        ShotRecord(ShotScheme.PARITY, 3, 0, np.array([1, -1]))
