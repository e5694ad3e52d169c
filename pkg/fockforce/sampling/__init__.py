"""
Seeded Monte Carlo readout: parity-basis shots and homodyne quadrature samples.
"""

from .rng import SHOT_BLOCK, block_generator, check_seed, derive_seed, uniforms
from .records import ShotRecord, ShotScheme, format_number
from .parity import estimate_theta, estimator_moments, replicate_parity, sample_parity_readout, shot_noise_slope
from .homodyne import DEFAULT_GRID, homodyne_chi_square, homodyne_distribution, sample_homodyne

__all__ = [
    "SHOT_BLOCK",
    "block_generator",
    "check_seed",
    "derive_seed",
    "uniforms",
    "ShotRecord",
    "ShotScheme",
    "format_number",
    "estimate_theta",
    "estimator_moments",
    "replicate_parity",
    "sample_parity_readout",
    "shot_noise_slope",
    "DEFAULT_GRID",
    "homodyne_chi_square",
    "homodyne_distribution",
    "sample_homodyne",
]
