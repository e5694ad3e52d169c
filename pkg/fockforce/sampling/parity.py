"""
Parity-basis readout: after a rotation theta the state is
cos(theta)|+> + i sin(theta)|->, so each shot gives + with probability
cos^2(theta).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence, Tuple

import numpy as np
from scipy.stats import binom
from tqdm import tqdm

from fockforce.models.schemas import EstimatorResult

from .records import ShotRecord, ShotScheme
from .rng import check_seed, derive_seed, uniforms


logger = logging.getLogger(__name__)


def sample_parity_readout(theta: float, shots: int, seed: int, workers: int = 1) -> ShotRecord:
    """
    M Bernoulli shots with P(+) = cos^2(theta); outcomes are +1 / -1.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    seed = check_seed(seed)
    p_plus = math.cos(theta) ** 2
    draws = uniforms(seed, shots, workers)
    outcomes = np.where(draws < p_plus, 1, -1).astype(np.int8)
    return ShotRecord(ShotScheme.PARITY, shots, seed, outcomes, {"theta": float(theta)})


def estimate_theta(record: ShotRecord) -> EstimatorResult:
    """
    theta_hat = arccos(sqrt(k / M)) with delta-method error 1 / (2 sqrt(M)).

    k in {0, M} is flagged as a boundary estimate.
    """
    if record.scheme != ShotScheme.PARITY:
        raise ValueError(f"estimate_theta needs a parity record, got {record.scheme.value}")
    shots = record.shots
    plus = int(np.count_nonzero(record.outcomes > 0))
    theta_hat = math.acos(math.sqrt(plus / shots))
    boundary = plus in (0, shots)
    if boundary:
        logger.warning(f"boundary estimate: {plus} of {shots} shots were +")
    return EstimatorResult(
        theta_hat=theta_hat,
        std_error=1.0 / (2.0 * math.sqrt(shots)),
        shots=shots,
        plus_count=plus,
        boundary=boundary,
    )


def estimator_moments(theta: float, shots: int) -> Tuple[float, float]:
    """
    Exact mean and standard deviation of theta_hat over the binomial law of k.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    k = np.arange(shots + 1)
    weights = binom.pmf(k, shots, math.cos(theta) ** 2)
    estimates = np.arccos(np.sqrt(k / shots))
    mean = float(weights @ estimates)
    return mean, float(math.sqrt(weights @ (estimates - mean) ** 2))


def replicate_parity(
    theta: float,
    shots: int,
    replications: int,
    seed: int,
    workers: int = 1,
    progress: bool = False,
) -> np.ndarray:
    """
    theta_hat from `replications` independent runs of M shots.

    Replication r uses derive_seed(seed, r), so the result does not depend
    on the number of workers.
    """
    seeds = [derive_seed(seed, rep) for rep in range(replications)]

    def one(rep_seed: int) -> float:
        return estimate_theta(sample_parity_readout(theta, shots, rep_seed)).theta_hat

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            estimates = list(tqdm(pool.map(one, seeds), total=replications, disable=not progress))
    else:
        estimates = [one(s) for s in tqdm(seeds, disable=not progress, desc="replications")]
    return np.array(estimates)


def shot_noise_slope(
    theta: float,
    shot_counts: Sequence[int] = (100, 1000, 10000),
    replications: int = 200,
    seed: int = 0,
    workers: int = 1,
) -> Tuple[float, np.ndarray]:
    """
    Log-log slope of std(theta_hat) against M (shot noise gives -1/2).

    Returns:
        (slope, standard deviations per shot count)
    """
    stds = np.array(
        [
            np.std(replicate_parity(theta, m, replications, derive_seed(seed, i), workers), ddof=1)
            for i, m in enumerate(shot_counts)
        ]
    )
    slope = float(np.polyfit(np.log(shot_counts), np.log(stds), 1)[0])
    logger.debug(f"shot-noise slope {slope:.4f} from stds {stds}")
    return slope, stds
