"""
Tests for fockforce.services.SweepService.

Usage:
    pytest test_sweep.py
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from fockforce.cli.output import table_to_csv
from fockforce.models.schemas import FamilyTag, RunConfig, StateFamily, SweepAxis, SweepSpec
from fockforce.services import SWEEP_COLUMNS, SweepService, sweep


def squeezed_spec() -> SweepSpec:
    return SweepSpec(
        family=StateFamily(tag=FamilyTag.SQUEEZED_VACUUM),
        axis=SweepAxis.R,
        values=[0.0, 0.5, 1.0],
    )


def test_squeezed_sweep_values():
    frame = sweep(squeezed_spec())
    assert list(frame.columns) == SWEEP_COLUMNS
    np.testing.assert_allclose(frame["eps_min"].astype(float), [0.5, 0.30327, 0.18394], atol=1e-4)
    assert frame["error"].isna().all()
    assert list(frame["point"]) == [0, 1, 2]


def test_cat_sweep_bound_scales_as_inverse_n():
    spec = SweepSpec(family=StateFamily(tag=FamilyTag.N_MODE_CAT, alpha=2.0), axis=SweepAxis.N, values=[1, 2, 3])
    bounds = sweep(spec)["bound"].astype(float).to_numpy()
    np.testing.assert_allclose(bounds * np.array([1, 2, 3]), bounds[0], rtol=0.01)


def test_circle_sweep_minimum_near_optimum():
    spec = SweepSpec(
        family=StateFamily(tag=FamilyTag.CIRCLE, alpha=1.0),
        axis=SweepAxis.ALPHA,
        linspace=(0.1, 3.0, 30),
    )
    frame = sweep(spec)
    best = frame["alpha"].astype(float)[frame["eps_min"].astype(float).idxmin()]
    assert abs(best - 0.85) <= 0.05 + 1e-9


def test_parallel_sweep_is_identical():
    spec = squeezed_spec()
    sequential = SweepService(RunConfig(workers=1)).run_sweep(spec)
    parallel = SweepService(RunConfig(workers=3)).run_sweep(spec)
    assert sequential.equals(parallel)
    assert table_to_csv(sequential.to_dict("records"), SWEEP_COLUMNS) == table_to_csv(
        parallel.to_dict("records"), SWEEP_COLUMNS
    )


def test_point_seeds_are_seed_xor_index():
    frame = SweepService(RunConfig(seed=6)).run_sweep(squeezed_spec())
    assert list(frame["seed"]) == [6 ^ 0, 6 ^ 1, 6 ^ 2]


def test_failed_points_carry_error():
    spec = SweepSpec(family=StateFamily(tag=FamilyTag.COHERENT), axis=SweepAxis.ALPHA, values=[0.5, 3.0])
    service = SweepService(RunConfig(dim=14))
    frame = service.run_sweep(spec)
    assert frame["error"].isna().tolist() == [True, False]
    assert "dim" in frame["error"][1]
    assert not service.all_failed(frame)


def test_all_failed():
    spec = SweepSpec(family=StateFamily(tag=FamilyTag.COHERENT), axis=SweepAxis.ALPHA, values=[3.0, 4.0])
    assert SweepService.all_failed(SweepService(RunConfig(dim=14)).run_sweep(spec))


def test_generalized_cat_sweep_reports_eigen_residual():
    spec = SweepSpec(
        family=StateFamily(tag=FamilyTag.GENERALIZED_CAT, alpha=2.0, nu=1),
        axis=SweepAxis.K,
        values=[2, 3, 4],
    )
    frame = sweep(spec)
    assert (frame["eigen_residual"].astype(float) <= 1e-9).all()
    assert list(frame["convention"]) == ["eigen"] * 3


def test_integer_axes_reject_fractions():
    spec = SweepSpec(family=StateFamily(tag=FamilyTag.N_MODE_CAT, alpha=2.0), axis=SweepAxis.N, values=[1.5])
    frame = sweep(spec)
    assert "integer" in frame["error"][0]


def test_sweep_spec_validation():
    with pytest.raises(ValidationError):
        SweepSpec(family=StateFamily(tag=FamilyTag.COHERENT), axis=SweepAxis.ALPHA, values=[1.0, 1.0])
    with pytest.raises(ValidationError):
        SweepSpec(family=StateFamily(tag=FamilyTag.COHERENT), axis=SweepAxis.ALPHA)
    spec = SweepSpec(family=StateFamily(tag=FamilyTag.COHERENT), axis=SweepAxis.ALPHA, linspace=(0.0, 1.0, 5))
    assert math.isclose(spec.grid()[-1], 1.0)
    assert len(spec.grid()) == 5
