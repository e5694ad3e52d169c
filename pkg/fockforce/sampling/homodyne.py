"""
Homodyne readout of the momentum quadrature Y = -i(a - a^dagger).

The Y-representation wavefunction of sum_n c_n |n> is
sum_n c_n (-i)^n psi_n(y), with psi_n the quadrature eigenfunctions of
fockforce.numerics.hermite.
"""

import logging
from typing import Tuple, Union

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid
from scipy.stats import chisquare

from fockforce.errors import DimensionMismatch, GridTooNarrow
from fockforce.fock import FockVector, MultiModeState
from fockforce.numerics import hermite_table

from .records import ShotRecord, ShotScheme
from .rng import check_seed, uniforms


logger = logging.getLogger(__name__)

Grid = Tuple[float, float, float]

DEFAULT_GRID: Grid = (-12.0, 12.0, 1e-3)

# Largest probability allowed outside the grid
MISSING_MASS_TOL = 1e-9


def _grid_points(grid: Grid) -> np.ndarray:
    y_min, y_max, step = grid
    if step <= 0 or y_max <= y_min:
        raise ValueError(f"grid needs y_max > y_min and step > 0, got {grid}")
    count = int(round((y_max - y_min) / step)) + 1
    return np.linspace(y_min, y_max, count)


def _single_mode_amps(state: Union[FockVector, MultiModeState]) -> np.ndarray:
    if isinstance(state, MultiModeState):
        if state.n_modes != 1:
            raise DimensionMismatch(f"homodyne readout takes one mode, got {state.n_modes}")
    return state.amps / state.norm


def homodyne_distribution(
    state: Union[FockVector, MultiModeState],
    grid: Grid = DEFAULT_GRID,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Exact density P(y) of Y outcomes on a grid.

    Returns:
        (y, P(y))

    Raises:
        GridTooNarrow: more than 1e-9 of the probability lies outside the grid
    """
    amps = _single_mode_amps(state)
    y = _grid_points(grid)
    phases = (-1j) ** np.arange(amps.size)
    wavefunction = (amps * phases) @ hermite_table(amps.size, y)
    density = np.abs(wavefunction) ** 2

    missing = 1.0 - float(trapezoid(density, y))
    if missing > MISSING_MASS_TOL:
        raise GridTooNarrow(f"grid {grid} misses {missing:.3e} of the Y distribution")
    logger.debug(f"homodyne grid {grid}: missing mass {missing:.3e}")
    return y, density


def sample_homodyne(
    state: Union[FockVector, MultiModeState],
    shots: int,
    seed: int,
    grid: Grid = DEFAULT_GRID,
    workers: int = 1,
) -> ShotRecord:
    """
    Draw Y outcomes by inverting the grid CDF of homodyne_distribution.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    seed = check_seed(seed)
    y, density = homodyne_distribution(state, grid)
    cdf = cumulative_trapezoid(density, y, initial=0.0)
    cdf /= cdf[-1]
    # flat stretches of the CDF would make the inverse ambiguous
    cdf, keep = np.unique(cdf, return_index=True)
    outcomes = np.interp(uniforms(seed, shots, workers), cdf, y[keep])
    y_min, y_max, step = grid
    return ShotRecord(
        ShotScheme.HOMODYNE,
        shots,
        seed,
        outcomes,
        {"y_min": y_min, "y_max": y_max, "step": step},
    )


def homodyne_chi_square(
    record: ShotRecord,
    state: Union[FockVector, MultiModeState],
    bins: int = 50,
) -> Tuple[float, float]:
    """
    Chi-square of homodyne outcomes against the exact grid distribution.

    Bin edges sit on grid points at equal-probability quantiles, so every
    bin expects about shots / bins counts.

    Returns:
        (statistic, p-value)
    """
    if record.scheme != ShotScheme.HOMODYNE:
        raise ValueError(f"homodyne_chi_square needs a homodyne record, got {record.scheme.value}")
    if bins < 2:
        raise ValueError(f"bins must be >= 2, got {bins}")
    grid = (record.params["y_min"], record.params["y_max"], record.params["step"])
    y, density = homodyne_distribution(state, grid)
    cdf = cumulative_trapezoid(density, y, initial=0.0)
    cdf /= cdf[-1]

    cut = np.unique(np.searchsorted(cdf, np.linspace(0.0, 1.0, bins + 1)[1:-1]))
    probs = np.diff(np.concatenate(([0.0], cdf[cut], [1.0])))
    observed = np.bincount(np.searchsorted(y[cut], record.outcomes, side="right"), minlength=cut.size + 1)
    result = chisquare(observed, probs * record.shots)
    logger.debug(f"homodyne chi-square {result.statistic:.3f} over {cut.size + 1} bins, p={result.pvalue:.4f}")
    return float(result.statistic), float(result.pvalue)
