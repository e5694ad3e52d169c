"""
Built-in verification suite behind `fockforce verify`.

Each check is a function returning one or more VerifyCheck entries; an
exception inside a check turns into a failed entry carrying the message.
Nothing here depends on wall-clock time, so the summary for a given seed
is reproducible byte for byte.
"""

import logging
import math
from typing import Callable, List, Optional, Tuple

import numpy as np

from fockforce.errors import FockForceError, TruncationTooSmall
from fockforce.fock import (
    MultiModeState,
    annihilation,
    apply_single_mode,
    beam_splitter,
    creation,
    displacement,
    displacement_analytic,
    expectation,
    fidelity,
    number,
    rotation,
)
from fockforce.metrology import (
    RamseyScheme,
    apply_weak_force,
    cat_force_bound,
    cat_generator_variance,
    casimir_eigenvalue_check,
    circle_epsilon_min_analytic,
    collective_spin,
    correlated_pair_variance,
    generalized_cat_readout,
    min_detectable_force,
    quadrature_stats,
    ramsey_bounds,
    ramsey_variance,
    ramsey_variance_brute_force,
)
from fockforce.models.schemas import (
    FamilyTag,
    ForceParams,
    RunConfig,
    StateFamily,
    SweepAxis,
    SweepSpec,
    VerifyCheck,
    VerifySummary,
)
from fockforce.numerics import bessel_i
from fockforce.sampling import (
    derive_seed,
    estimator_moments,
    homodyne_chi_square,
    replicate_parity,
    sample_homodyne,
    sample_parity_readout,
    shot_noise_slope,
    uniforms,
)
from fockforce.services import SweepService
from fockforce.states import (
    Parity,
    build,
    cat,
    circle_mean_photon,
    coherent,
    generalized_cat,
    n_mode_cat,
    squeezed_vacuum,
    suggest_dim,
    support_residue,
    two_mode_squeezed,
)


logger = logging.getLogger(__name__)

# Amplitude used by the truncation precondition check when none is given
PRECONDITION_ALPHA = 2.0

Check = Callable[["VerifyContext"], List[VerifyCheck]]


class VerifyContext:
    """Run settings visible to the checks."""

    def __init__(self, run: RunConfig, alpha: Optional[float] = None):
        self.run = run
        self.alpha = PRECONDITION_ALPHA if alpha is None else alpha


def _close(check_id: str, value: float, expected: float, tol: float, relative: bool = False) -> VerifyCheck:
    scale = abs(expected) if relative else 1.0
    passed = bool(abs(value - expected) <= tol * scale)
    return VerifyCheck(
        id=check_id,
        passed=passed,
        value=float(value),
        expected=float(expected),
        tol=tol,
        detail=None if passed else f"|{value:.9g} - {expected:.9g}| exceeds {tol:g}{' (relative)' if relative else ''}",
    )


def _at_least(check_id: str, value: float, bound: float) -> VerifyCheck:
    passed = bool(value >= bound)
    return VerifyCheck(
        id=check_id,
        passed=passed,
        value=float(value),
        expected=float(bound),
        detail=None if passed else f"{value:.12g} is below {bound:.12g}",
    )


def _flag(check_id: str, passed: bool, detail: str) -> VerifyCheck:
    return VerifyCheck(id=check_id, passed=bool(passed), detail=None if passed else detail)


# ============================================================================
# Preconditions and numerics
# ============================================================================

def check_truncation_precondition(ctx: VerifyContext) -> List[VerifyCheck]:
    dim = ctx.run.dim or suggest_dim(StateFamily(tag=FamilyTag.COHERENT, alpha=ctx.alpha))
    coherent(ctx.alpha, dim)
    return [_flag("precondition.truncation", True, "")]


def check_numerics(ctx: VerifyContext) -> List[VerifyCheck]:
    d_exp = displacement(0.3 + 0.4j, 32).entries
    d_closed = displacement_analytic(0.3 + 0.4j, 32).entries
    rows = 16
    identity = np.eye(rows)
    return [
        _close("numerics.bessel_i0", bessel_i(0, 1.0), 1.2660658777520082, 1e-12, relative=True),
        _close("numerics.bessel_i1", bessel_i(1, 1.0), 0.5651591039924851, 1e-12, relative=True),
        _close("numerics.displacement_forms", float(np.max(np.abs(d_exp - d_closed))), 0.0, 1e-9),
        _close(
            "numerics.displacement_unitary",
            float(np.max(np.abs(d_exp[:rows, :].conj() @ d_exp[:rows, :].T - identity))),
            0.0,
            1e-9,
        ),
    ]


def check_fock_invariants(ctx: VerifyContext) -> List[VerifyCheck]:
    dim = 20
    commutator = (annihilation(dim) @ creation(dim) - creation(dim) @ annihilation(dim)).entries
    below_cutoff = float(np.max(np.abs(commutator[:-1, :-1] - np.eye(dim - 1))))

    d = 24
    state = MultiModeState.product([coherent(0.7, d), coherent(0.3j, d)])
    mixed = beam_splitter(state, 0, 1, 0.3)

    def photons(s: MultiModeState) -> float:
        return float((expectation(s, [(number(d), 0)]) + expectation(s, [(number(d), 1)])).real)

    return [
        _close("fock.commutator", below_cutoff, 0.0, 1e-12),
        _close("fock.beam_splitter_norm", mixed.norm, state.norm, 1e-12),
        _close("fock.beam_splitter_photons", photons(mixed), photons(state), 1e-10),
    ]


def check_state_examples(ctx: VerifyContext) -> List[VerifyCheck]:
    gencat = generalized_cat(4, 1, 2.0, suggest_dim(StateFamily(tag=FamilyTag.GENERALIZED_CAT, alpha=2.0, k=4, nu=1)))
    return [
        _close("state.coherent_mean_photon", coherent(2.0, 26).mean_photon, 4.0, 1e-9),
        _close("state.circle_mean_photon", circle_mean_photon(0.85), 0.54557, 5e-5),
        _close("state.gencat_support", float(support_residue(gencat, 4)), 3.0, 0.0),
    ]


# ============================================================================
# Quadrature sensitivity
# ============================================================================

def check_sql(ctx: VerifyContext) -> List[VerifyCheck]:
    report = min_detectable_force(StateFamily(tag=FamilyTag.COHERENT, alpha=2.0), 32)
    return [_close("sql.eps_min", report.epsilon_min, 0.5, 1e-6)]


def check_squeezed(ctx: VerifyContext) -> List[VerifyCheck]:
    checks = []
    for r in (0.5, 1.0):
        report = min_detectable_force(StateFamily(tag=FamilyTag.SQUEEZED_VACUUM, r=r), 64)
        checks.append(_close(f"squeezed.eps_min.r={r}", report.epsilon_min, 0.5 * math.exp(-r), 1e-4))
        checks.append(_close(f"squeezed.variance.r={r}", report.variance, math.exp(-2 * r), 1e-5))
    return checks


def check_two_mode_squeezed(ctx: VerifyContext) -> List[VerifyCheck]:
    two_mode = min_detectable_force(StateFamily(tag=FamilyTag.TWO_MODE_SQUEEZED, r=1.0), memory_cap=ctx.run.memory_cap)
    single = min_detectable_force(StateFamily(tag=FamilyTag.SQUEEZED_VACUUM, r=1.0), 64)
    return [
        _close("tmsv.eps_min", two_mode.epsilon_min, 1.0 / (2.0 * math.sqrt(2.0) * math.e), 2e-4),
        _close("tmsv.ratio", two_mode.epsilon_min / single.epsilon_min, 1.0 / math.sqrt(2.0), 1e-4),
    ]


def check_circle(ctx: VerifyContext) -> List[VerifyCheck]:
    report = min_detectable_force(StateFamily(tag=FamilyTag.CIRCLE, alpha=0.85), memory_cap=ctx.run.memory_cap)
    large = min_detectable_force(StateFamily(tag=FamilyTag.CIRCLE, alpha=6.0), memory_cap=ctx.run.memory_cap)

    spec = SweepSpec(
        family=StateFamily(tag=FamilyTag.CIRCLE, alpha=0.85),
        axis=SweepAxis.ALPHA,
        linspace=(0.1, 3.0, 30),
    )
    frame = SweepService(ctx.run.model_copy(update={"dim": None})).run_sweep(spec)
    grid = np.array(spec.grid())
    best = float(grid[int(np.nanargmin(frame["eps_min"].astype(float).to_numpy()))])
    return [
        _close("circle.eps_min", report.epsilon_min, 0.221108, 2e-4),
        _close("circle.analytic", report.epsilon_min, circle_epsilon_min_analytic(0.85), 2e-4),
        _close("circle.sweep_minimum", best, 0.85, float(0.5 * (grid[1] - grid[0]) + 1e-9)),
        _close("circle.asymptote", large.epsilon_min, 0.25, 0.006),
    ]


def check_correlated_pairs(ctx: VerifyContext) -> List[VerifyCheck]:
    force = ForceParams(epsilon=0.1)
    checks = []
    for name, state in (
        ("circle", build(StateFamily(tag=FamilyTag.CIRCLE, alpha=0.85), 20)),
        ("tmsv", build(StateFamily(tag=FamilyTag.TWO_MODE_SQUEEZED, r=1.0))),
    ):
        _, variance = quadrature_stats(apply_weak_force(state, force))
        checks.append(_close(f"pairs.identity.{name}", variance, correlated_pair_variance(state), 1e-8))
        if name == "tmsv":
            checks.append(_close("pairs.tmsv_value", variance, 2.0 * math.exp(-2.0), 1e-5))
    return checks


def check_force_linearity(ctx: VerifyContext) -> List[VerifyCheck]:
    family = StateFamily(tag=FamilyTag.SQUEEZED_VACUUM, r=0.5)
    state = build(family)
    baseline, _ = quadrature_stats(state)

    def signal(eps: float) -> float:
        return quadrature_stats(apply_weak_force(state, ForceParams(epsilon=eps)))[0] - baseline

    report = min_detectable_force(family)
    return [
        _close("metrology.linearity", signal(0.1) / signal(0.05), 2.0, 1e-7),
        _flag("metrology.linear_flag", report.linear, "signal of the squeezed report failed the linearity check"),
    ]


# ============================================================================
# Beam splitter
# ============================================================================

def check_beam_splitter(ctx: VerifyContext) -> List[VerifyCheck]:
    alpha, dim = 1.0, 24
    root2 = math.sqrt(2.0) * alpha
    vacuum = coherent(0.0, dim)

    pair = MultiModeState.product([coherent(alpha, dim), coherent(alpha, dim)])
    merged = MultiModeState.product([coherent(root2, dim), vacuum])

    two_cat = n_mode_cat(alpha, 2, dim)
    cat_target = MultiModeState.product([cat(root2, Parity.EVEN, dim), vacuum])

    r, tmsv_dim = 0.5, 40
    tmsv = two_mode_squeezed(math.tanh(r), tmsv_dim)
    squeezed_pair = MultiModeState.product([squeezed_vacuum(r, tmsv_dim), squeezed_vacuum(-r, tmsv_dim)])

    quarter = math.pi / 4
    return [
        _at_least("beam_splitter.coherent", fidelity(beam_splitter(pair, 0, 1, quarter), merged), 1 - 1e-8),
        _at_least("beam_splitter.cat", fidelity(beam_splitter(two_cat, 0, 1, quarter), cat_target), 1 - 1e-8),
        _at_least("beam_splitter.tmsv", fidelity(beam_splitter(tmsv, 0, 1, quarter), squeezed_pair), 1 - 1e-6),
    ]


# ============================================================================
# Cat states
# ============================================================================

def check_cat_generator(ctx: VerifyContext) -> List[VerifyCheck]:
    checks = []
    for n in (1, 2, 3):
        checks.append(_close(f"cat.variance.alpha=2.N={n}", cat_generator_variance(2.0, n), n**2, 0.01, relative=True))
        checks.append(_close(f"cat.variance.alpha=3.N={n}", cat_generator_variance(3.0, n), n**2, 1e-6, relative=True))

    modes = np.array([1, 2, 3, 4])
    bounds = [cat_force_bound(2.0, int(n), memory_cap=ctx.run.memory_cap).delta_epsilon for n in modes]
    slope = float(np.polyfit(np.log(modes), np.log(bounds), 1)[0])
    checks.append(_close("cat.bound_slope", slope, -1.0, 0.02))

    spec = SweepSpec(family=StateFamily(tag=FamilyTag.N_MODE_CAT, alpha=2.0), axis=SweepAxis.N, values=[1, 2, 3])
    column = SweepService(ctx.run.model_copy(update={"dim": None})).run_sweep(spec)["bound"].astype(float).to_numpy()
    deviation = float(np.max(np.abs(column * np.array([1, 2, 3]) / column[0] - 1.0)))
    checks.append(_close("cat.sweep_inverse_n", deviation, 0.0, 0.01))

    # fixed n_tot = N alpha^2: entangled over N-copies bound goes as 1/sqrt(N)
    n_total = 36.0
    for n in (1, 2, 3, 4):
        alpha = math.sqrt(n_total / n)
        entangled = cat_force_bound(alpha, n, memory_cap=ctx.run.memory_cap).delta_epsilon
        copies = cat_force_bound(alpha, n, entangled=False).delta_epsilon
        checks.append(_close(f"cat.fixed_photons.N={n}", entangled / copies, 1.0 / math.sqrt(n), 0.01, relative=True))
    return checks


def check_generalized_cat(ctx: VerifyContext) -> List[VerifyCheck]:
    checks = []
    alpha = 2.0
    for k, nu in ((2, 0), (2, 1), (4, 0), (4, 1), (4, 3)):
        dim = suggest_dim(StateFamily(tag=FamilyTag.GENERALIZED_CAT, alpha=alpha, k=k, nu=nu))
        state = generalized_cat(k, nu, alpha, dim)
        rotated = apply_single_mode(state, rotation(2 * math.pi / k, dim), 0)
        residual = float(np.linalg.norm(rotated.amps - np.exp(-2j * math.pi * nu / k) * state.amps))
        checks.append(_close(f"gencat.eigen.K={k}.nu={nu}", residual, 0.0, 1e-9))

    beta = 0.01 * complex(math.cos(0.6), math.sin(0.6))
    theta, phi = generalized_cat_readout(3.0, beta)
    checks.append(_close("gencat.readout_theta", theta, 3.0 * beta.imag, 5e-3))
    checks.append(_close("gencat.readout_phi", phi, 3.0 * beta.real, 5e-3))
    return checks


# ============================================================================
# Ramsey
# ============================================================================

_RAMSEY_EXPECTED = {
    RamseyScheme.PRODUCT: lambda n: 1.0 / math.sqrt(n),
    RamseyScheme.GHZ: lambda n: 1.0 / n,
    RamseyScheme.PAIRWISE: lambda n: 1.0 / math.sqrt(2.0 * n),
}


def check_ramsey(ctx: VerifyContext) -> List[VerifyCheck]:
    checks = []
    for scheme, expected in _RAMSEY_EXPECTED.items():
        for n in range(1, 9):
            if scheme == RamseyScheme.PAIRWISE and n % 2:
                continue
            checks.append(_close(f"ramsey.{scheme.value}.N={n}", ramsey_bounds(n, scheme), expected(n), 1e-12))
            brute = ramsey_variance_brute_force(n, scheme)
            checks.append(_close(f"ramsey.brute.{scheme.value}.N={n}", brute, ramsey_variance(n, scheme), 1e-12))
    for n in range(1, 7):
        value = casimir_eigenvalue_check(collective_spin(n))
        checks.append(_close(f"casimir.N={n}", value, 0.5 * n * (0.5 * n + 1.0), 1e-10))
    return checks


# ============================================================================
# Monte Carlo and determinism
# ============================================================================

def check_monte_carlo(ctx: VerifyContext) -> List[VerifyCheck]:
    seed, workers = ctx.run.seed, ctx.run.workers
    shots, replications = 10_000, 200
    estimates = replicate_parity(0.3, shots, replications, derive_seed(seed, 0), workers=workers)
    spread = float(np.std(estimates, ddof=1))
    mean_error = spread / math.sqrt(replications)
    exact_mean, exact_std = estimator_moments(0.3, shots)

    vacuum = coherent(0.0, 16)
    outcomes = sample_homodyne(vacuum, 100_000, derive_seed(seed, 1), workers=workers).outcomes

    slope, _ = shot_noise_slope(
        0.3, (100, 1000, 10_000), replications=400, seed=derive_seed(seed, 2), workers=workers
    )

    even_cat = build(StateFamily(tag=FamilyTag.EVEN_CAT, alpha=2.0))
    record = sample_homodyne(even_cat, 100_000, derive_seed(seed, 3), workers=workers)
    _, p_value = homodyne_chi_square(record, even_cat)
    _, exact_variance = quadrature_stats(even_cat)

    return [
        _close("monte_carlo.parity_std", spread, 1.0 / (2.0 * math.sqrt(shots)), 0.2, relative=True),
        _close("monte_carlo.parity_bias_exact", exact_mean, 0.3, 2.0 * exact_std / math.sqrt(replications)),
        _close("monte_carlo.parity_bias", float(np.mean(estimates)), 0.3, 3.0 * mean_error),
        _close("monte_carlo.shot_noise_slope", slope, -0.5, 0.05),
        _close("monte_carlo.homodyne_vacuum", float(np.var(outcomes, ddof=1)), 1.0, 0.03),
        _close(
            "monte_carlo.homodyne_cat_variance",
            float(np.var(record.outcomes, ddof=1)),
            exact_variance,
            0.03,
            relative=True,
        ),
        _at_least("monte_carlo.homodyne_chi_square", p_value, 1e-3),
    ]


def check_determinism(ctx: VerifyContext) -> List[VerifyCheck]:
    seed = ctx.run.seed
    first = sample_parity_readout(0.3, 5000, seed).to_csv()
    second = sample_parity_readout(0.3, 5000, seed).to_csv()
    threaded = np.array_equal(uniforms(seed, 20_000, workers=1), uniforms(seed, 20_000, workers=4))

    spec = SweepSpec(family=StateFamily(tag=FamilyTag.SQUEEZED_VACUUM), axis=SweepAxis.R, values=[0.0, 0.5, 1.0])
    base = ctx.run.model_copy(update={"dim": None})
    sequential = SweepService(base.model_copy(update={"workers": 1})).run_sweep(spec)
    parallel = SweepService(base.model_copy(update={"workers": 3})).run_sweep(spec)
    eps = sequential["eps_min"].astype(float).to_numpy()

    checks = [
        _flag("determinism.parity_record", first == second, "parity records differ for the same seed"),
        _flag("determinism.block_stream", threaded, "uniform stream depends on the worker count"),
        _flag("determinism.sweep", sequential.equals(parallel), "parallel sweep differs from sequential sweep"),
    ]
    for r, value in zip((0.0, 0.5, 1.0), eps):
        checks.append(_close(f"sweep.squeezed.r={r}", value, 0.5 * math.exp(-r), 1e-4))
    return checks


CHECKS: List[Tuple[str, Check]] = [
    ("precondition.truncation", check_truncation_precondition),
    ("numerics", check_numerics),
    ("fock_invariants", check_fock_invariants),
    ("state_examples", check_state_examples),
    ("sql", check_sql),
    ("squeezed", check_squeezed),
    ("two_mode_squeezed", check_two_mode_squeezed),
    ("circle", check_circle),
    ("correlated_pairs", check_correlated_pairs),
    ("force_linearity", check_force_linearity),
    ("beam_splitter", check_beam_splitter),
    ("cat_generator", check_cat_generator),
    ("generalized_cat", check_generalized_cat),
    ("ramsey", check_ramsey),
    ("monte_carlo", check_monte_carlo),
    ("determinism", check_determinism),
]


def _failed_check(check_id: str, error: Exception) -> VerifyCheck:
    detail = f"{type(error).__name__}: {str(error).splitlines()[0] if str(error) else ''}"
    if isinstance(error, TruncationTooSmall) and error.suggested_dim:
        detail += f" (try --dim {error.suggested_dim})"
    return VerifyCheck(id=check_id, passed=False, detail=detail)


def run_verify(run: RunConfig, alpha: Optional[float] = None, progress: bool = False) -> VerifySummary:
    """
    Run every check and collect a VerifySummary.

    Args:
        run: Seed, workers, memory cap and (for the precondition) dim
        alpha: Amplitude for the truncation precondition check
        progress: Log each check group as it starts
    """
    ctx = VerifyContext(run, alpha)
    results: List[VerifyCheck] = []
    for check_id, check in CHECKS:
        if progress:
            logger.info(f"verify: {check_id}")
        try:
            results.extend(check(ctx))
        except (FockForceError, ValueError, ArithmeticError) as e:
            logger.warning(f"{check_id} raised {type(e).__name__}: {e}")
            results.append(_failed_check(check_id, e))

    failed = [c.id for c in results if not c.passed]
    if failed:
        logger.warning(f"failing checks: {', '.join(failed)}")
    return VerifySummary(passed=len(results) - len(failed), failed=len(failed), seed=run.seed, checks=results)
