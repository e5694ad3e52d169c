"""
Sweep service: evaluate one state family over a parameter grid.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import ValidationError
from tqdm import tqdm

from fockforce.errors import FockForceError
from fockforce.fock import apply_single_mode, rotation
from fockforce.metrology import QUADRATURE_FAMILIES, cat_force_bound, min_detectable_force
from fockforce.models.schemas import FamilyTag, RunConfig, StateFamily, SweepAxis, SweepSpec
from fockforce.states import build, suggest_dim


logger = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    "point",
    "family",
    "alpha",
    "r",
    "lambda",
    "K",
    "nu",
    "N",
    "n_total",
    "S_per_eps",
    "V",
    "snr_slope",
    "eps_min",
    "generator_variance",
    "delta_theta",
    "bound",
    "eigen_residual",
    "convention",
    "seed",
    "error",
]

_AXIS_FIELD = {
    SweepAxis.ALPHA: "alpha",
    SweepAxis.R: "r",
    SweepAxis.LAMBDA: "lam",
    SweepAxis.N: "n_modes",
    SweepAxis.K: "k",
}


class SweepService:
    """Runs a SweepSpec row by row, optionally on a thread pool."""

    def __init__(self, run: RunConfig, progress: bool = False):
        self.run = run
        self.progress = progress

    def family_at(self, spec: SweepSpec, value: float) -> StateFamily:
        """The base family with the swept parameter set to `value`."""
        fields = spec.family.model_dump()
        name = _AXIS_FIELD[spec.axis]
        if spec.axis in (SweepAxis.N, SweepAxis.K):
            if value != int(value):
                raise ValueError(f"{spec.axis.value} must be an integer, got {value}")
            value = int(value)
        if spec.axis == SweepAxis.R:
            fields["lam"] = None
        if spec.axis == SweepAxis.LAMBDA:
            fields["r"] = None
        fields[name] = value
        return StateFamily.model_validate(fields)

    def evaluate_point(self, spec: SweepSpec, index: int, value: float) -> Dict[str, Any]:
        """
        One sweep row. Failures become an `error` entry instead of raising.
        """
        row: Dict[str, Any] = {column: None for column in SWEEP_COLUMNS}
        row.update({"point": index, "family": spec.family.tag.value, "seed": self.run.seed ^ index})
        try:
            family = self.family_at(spec, value)
            row.update(family.params())
            row.update(self._evaluate(family, spec))
        except (FockForceError, ValidationError, ValueError) as e:
            logger.warning(f"sweep point {index} ({spec.axis.value}={value}) failed: {e}")
            row["error"] = str(e).splitlines()[0]
        return row

    def _evaluate(self, family: StateFamily, spec: SweepSpec) -> Dict[str, Any]:
        run = self.run
        if family.tag in QUADRATURE_FAMILIES:
            report = min_detectable_force(family, run.dim, memory_cap=run.memory_cap)
            result = report.to_row()
            result.pop("family")
            result["bound"] = report.epsilon_min
            return result

        if family.tag in (FamilyTag.EVEN_CAT, FamilyTag.N_MODE_CAT):
            bound = cat_force_bound(
                family.alpha,
                family.n_modes,
                spec.convention,
                dim=run.dim,
                memory_cap=run.memory_cap,
            )
            n_total = family.n_modes * family.alpha**2
            return {
                "N": family.n_modes,
                "n_total": n_total,
                "generator_variance": bound.generator_variance,
                "delta_theta": bound.delta_theta,
                "bound": bound.delta_epsilon,
                "convention": bound.convention.value,
            }

        if family.tag == FamilyTag.GENERALIZED_CAT:
            dim = run.dim or suggest_dim(family)
            state = build(family, dim)
            eigenvalue = np.exp(-2j * math.pi * family.nu / family.k)
            rotated = apply_single_mode(state, rotation(2 * math.pi / family.k, dim), 0)
            residual = float(np.linalg.norm(rotated.amps - eigenvalue * state.amps))
            return {
                "N": 1,
                "n_total": state.mean_photon,
                "eigen_residual": residual,
                "convention": "eigen",
            }

        raise FockForceError(f"family {family.tag.value} is not supported by sweeps")

    def run_sweep(self, spec: SweepSpec) -> pd.DataFrame:
        """
        Evaluate every grid point; rows come back in grid order whatever the
        worker count.
        """
        grid = spec.grid()
        logger.info(f"sweeping {spec.family.tag.value} over {spec.axis.value}: {len(grid)} point(s)")

        def task(item):
            index, value = item
            return self.evaluate_point(spec, index, value)

        items = list(enumerate(grid))
        if self.run.workers > 1:
            with ThreadPoolExecutor(max_workers=self.run.workers) as pool:
                rows: List[Dict[str, Any]] = list(
                    tqdm(pool.map(task, items), total=len(items), disable=not self.progress)
                )
        else:
            rows = [task(item) for item in tqdm(items, disable=not self.progress, desc="sweep")]

        failed = sum(1 for row in rows if row["error"] is not None)
        if failed:
            logger.warning(f"{failed} of {len(rows)} sweep point(s) failed")
        return pd.DataFrame(rows, columns=SWEEP_COLUMNS)

    @staticmethod
    def all_failed(frame: pd.DataFrame) -> bool:
        return bool(frame["error"].notna().all())


def sweep(spec: SweepSpec, run: Optional[RunConfig] = None) -> pd.DataFrame:
    """Convenience wrapper around SweepService.run_sweep."""
    return SweepService(run or RunConfig()).run_sweep(spec)
