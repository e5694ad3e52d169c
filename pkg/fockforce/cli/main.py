"""
fockforce command line.

    fockforce <state|sensitivity|sweep|sample|verify> [flags]

Settings are resolved as built-in defaults < JSON file given with --config
< command-line flags. FOCKFORCE_OUT_DIR may redirect output files.

Exit codes: 0 success, 1 verify failure, 2 input or construction error,
3 solver error, 4 every sweep point failed.
"""

import argparse
import json
import logging
import math
import sys
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from pydantic import ValidationError

from fockforce import config
from fockforce.errors import FockForceError, NoRoot, TruncationTooSmall
from fockforce.fock import as_multimode, expectation, number, tail_mass, truncation_rule
from fockforce.metrology import (
    QUADRATURE_FAMILIES,
    apply_weak_force,
    min_detectable_force,
    quadrature_stats,
)
from fockforce.models.schemas import (
    BoundConvention,
    FamilyTag,
    ForceParams,
    OutputFormat,
    RunConfig,
    StateFamily,
    SweepAxis,
    SweepSpec,
)
from fockforce.sampling import (
    DEFAULT_GRID,
    ShotScheme,
    estimate_theta,
    sample_homodyne,
    sample_parity_readout,
)
from fockforce.services import SWEEP_COLUMNS, SweepService
from fockforce.states import build, serialize_state, suggest_dim, support_residue

from .output import document_to_json, emit, emit_rows, resolve_output_path
from .verify import run_verify


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_SOLVER_ERROR = 3
EXIT_SWEEP_FAILED = 4

DEFAULTS: Dict[str, Any] = {
    "family": FamilyTag.COHERENT.value,
    "alpha": None,
    "r": None,
    "lambda": None,
    "N": 1,
    "K": 2,
    "nu": 0,
    "eps": None,
    "dim": None,
    "tol": 1e-6,
    "seed": 0,
    "shots": 1000,
    "format": OutputFormat.CSV.value,
    "out": None,
    "workers": None,
    "memory_cap": None,
    "verbose": False,
    "save_state": None,
    "axis": None,
    "values": None,
    "linspace": None,
    "convention": BoundConvention.UNIT_FACTOR.value,
    "scheme": ShotScheme.PARITY.value,
    "theta": 0.0,
    "records": None,
    "grid": None,
}

STATE_COLUMNS = [
    "family",
    "alpha",
    "r",
    "lambda",
    "K",
    "nu",
    "dims",
    "norm",
    "mean_photon",
    "mean_photon_per_mode",
    "tail_mass",
    "support",
    "leading_amplitudes",
]

SENSITIVITY_COLUMNS = [
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
    "convention",
    "eps",
    "snr",
]

SAMPLE_COLUMNS = [
    "scheme",
    "shots",
    "seed",
    "theta",
    "theta_hat",
    "std_error",
    "plus_count",
    "boundary",
    "sample_mean",
    "sample_variance",
    "exact_mean",
    "exact_variance",
]

# Number of amplitudes listed by `state`
LEADING_AMPLITUDES = 5

_SUPPORT_MODULUS = {
    FamilyTag.EVEN_CAT: lambda family: 2,
    FamilyTag.ODD_CAT: lambda family: 2,
    FamilyTag.N_MODE_CAT: lambda family: 2,
    FamilyTag.GENERALIZED_CAT: lambda family: family.k,
}


# ============================================================================
# Argument parsing and settings
# ============================================================================

def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=None)
    common.add_argument("--family", choices=[tag.value for tag in FamilyTag], help="State family")
    common.add_argument("--alpha", type=float, help="Coherent amplitude")
    common.add_argument("--r", type=float, help="Squeezing parameter")
    common.add_argument("--lambda", dest="lambda", type=float, help="Squeezing as tanh r")
    common.add_argument("--N", dest="N", type=int, help="Number of modes (ncat)")
    common.add_argument("--K", dest="K", type=int, help="Generalized-cat modulus")
    common.add_argument("--nu", type=int, help="Generalized-cat residue")
    common.add_argument("--eps", type=float, help="Force displacement epsilon")
    common.add_argument("--dim", type=int, help="Per-mode truncation dimension")
    common.add_argument("--tol", type=float, help="Reporting tolerance")
    common.add_argument("--seed", type=int, help="64-bit RNG seed")
    common.add_argument("--shots", type=int, help="Number of shots")
    common.add_argument("--format", choices=[fmt.value for fmt in OutputFormat], help="Output format")
    common.add_argument("--out", help="Output file (stdout when omitted)")
    common.add_argument("--config", help="JSON file with default flag values")
    common.add_argument("--workers", type=int, help="Parallel workers")
    common.add_argument("--memory-cap", dest="memory_cap", type=int, help="Amplitude cap for multi-mode states")
    common.add_argument("--verbose", action="store_true", default=None, help="Debug logging")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="fockforce", description="Weak-force detection in truncated Fock space")
    commands = parser.add_subparsers(dest="command", required=True)

    state = commands.add_parser("state", parents=[common], help="Construct a state and summarize it")
    state.add_argument("--save-state", dest="save_state", help="Also write the state as JSON to this file")

    commands.add_parser("sensitivity", parents=[common], help="Minimum detectable force by quadrature readout")

    sweep = commands.add_parser("sweep", parents=[common], help="Evaluate a family over a parameter grid")
    sweep.add_argument("--axis", choices=[axis.value for axis in SweepAxis], help="Parameter to sweep")
    sweep.add_argument("--values", help="Comma-separated grid values")
    sweep.add_argument("--linspace", help="start,stop,count")
    sweep.add_argument("--convention", choices=[c.value for c in BoundConvention], help="Estimation-bound convention")

    sample = commands.add_parser("sample", parents=[common], help="Monte Carlo readout")
    sample.add_argument("--scheme", choices=[s.value for s in ShotScheme], help="Readout scheme")
    sample.add_argument("--theta", type=float, help="Rotation angle for parity readout")
    sample.add_argument("--records", help="Write the shot record CSV to this file")
    sample.add_argument("--grid", help="Homodyne grid y_min,y_max,step")

    commands.add_parser("verify", parents=[common], help="Run the built-in verification suite")
    return parser


def load_config_file(path: str) -> Dict[str, Any]:
    """Read a JSON settings file; keys are flag names with or without dashes."""
    with open(path, encoding="utf-8") as f:
        raw = json.load(f)
    if not isinstance(raw, dict):
        raise ValueError(f"config file {path} must hold a JSON object")
    settings = {}
    for key, value in raw.items():
        name = key.lstrip("-").replace("-", "_")
        if name not in DEFAULTS:
            raise ValueError(f"unknown setting {key!r} in {path}")
        settings[name] = value
    return settings


def resolve_settings(args: argparse.Namespace) -> Dict[str, Any]:
    """Merge defaults, the --config file and explicit flags (in that order)."""
    settings = dict(DEFAULTS)
    config_path = getattr(args, "config", None)
    if config_path:
        settings.update(load_config_file(config_path))
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        settings[key] = value
    if settings["workers"] is None:
        settings["workers"] = config.WORKERS
    if settings["memory_cap"] is None:
        settings["memory_cap"] = config.MEMORY_CAP
    return settings


def family_from_settings(settings: Dict[str, Any]) -> StateFamily:
    return StateFamily(
        tag=settings["family"],
        alpha=settings["alpha"] or 0.0,
        r=settings["r"],
        lam=settings["lambda"],
        n_modes=settings["N"],
        k=settings["K"],
        nu=settings["nu"],
    )


def run_config_from_settings(settings: Dict[str, Any]) -> RunConfig:
    return RunConfig(
        dim=settings["dim"],
        tol=settings["tol"],
        seed=settings["seed"],
        output_format=settings["format"],
        output_path=settings["out"],
        memory_cap=settings["memory_cap"],
        workers=settings["workers"],
    )


def _floats(text: Any, what: str) -> List[float]:
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    try:
        return [float(part) for part in str(text).split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"{what} must be comma-separated numbers, got {text!r}")


# ============================================================================
# Commands
# ============================================================================

def _leading_amplitudes(state, tol: float, count: int = LEADING_AMPLITUDES) -> List[Dict[str, Any]]:
    """The `count` largest amplitudes above tol, listed in basis order."""
    multi = as_multimode(state)
    top = np.argsort(-np.abs(multi.amps), kind="stable")[:count]
    top = np.sort(top[np.abs(multi.amps[top]) > tol])
    entries = []
    for flat in top:
        amp = multi.amps[flat]
        entries.append(
            {
                "n": [int(i) for i in np.unravel_index(flat, multi.mode_dims)],
                "re": float(amp.real),
                "im": float(amp.imag),
            }
        )
    return entries


def _format_amplitude(entry: Dict[str, Any]) -> str:
    occupation = ",".join(str(n) for n in entry["n"])
    return f"|{occupation}>={entry['re']:.9g}{entry['im']:+.9g}j"


def cmd_state(settings: Dict[str, Any], run: RunConfig) -> int:
    """Build a state and report norm, photon number, tail mass and leading amplitudes."""
    family = family_from_settings(settings)
    state = build(family, run.dim, memory_cap=run.memory_cap)
    multi = as_multimode(state)

    if multi.mean_photon is not None:
        mean = multi.mean_photon
    else:
        mean = sum(expectation(multi, [(number(d), mode)]).real for mode, d in enumerate(multi.mode_dims))

    support = None
    if family.tag in _SUPPORT_MODULUS:
        k = _SUPPORT_MODULUS[family.tag](family)
        residue = support_residue(state, k, tol=run.tol)
        if residue is not None:
            support = f"n ≡ {residue} (mod {k})"

    leading = _leading_amplitudes(state, run.tol)
    row: Dict[str, Any] = {"family": family.tag.value}
    row.update(family.params())
    row.update(
        {
            "dims": "x".join(str(d) for d in multi.mode_dims),
            "norm": multi.norm,
            "mean_photon": mean,
            "mean_photon_per_mode": mean / multi.n_modes,
            "tail_mass": tail_mass(multi),
            "support": support,
            "leading_amplitudes": ";".join(_format_amplitude(e) for e in leading),
        }
    )
    logger.info(f"built {family.tag.value} state with dims {multi.mode_dims}")

    document = dict(row, dims=list(multi.mode_dims), leading_amplitudes=leading)
    emit_rows([row], STATE_COLUMNS, run.output_format, run.output_path, document=document)

    if settings["save_state"]:
        emit(serialize_state(state, family) + "\n", settings["save_state"])
    return EXIT_OK


def cmd_sensitivity(settings: Dict[str, Any], run: RunConfig) -> int:
    """Minimum detectable force of a quadrature-readout family."""
    family = family_from_settings(settings)
    if family.tag not in QUADRATURE_FAMILIES:
        supported = ", ".join(tag.value for tag in QUADRATURE_FAMILIES)
        raise FockForceError(f"sensitivity covers {supported}; use sweep for {family.tag.value}")

    report = min_detectable_force(family, run.dim, memory_cap=run.memory_cap)
    at_eps: Dict[str, Any] = {"eps": None, "snr": None}

    eps = settings["eps"]
    if eps is not None:
        dim = run.dim or max(suggest_dim(family), truncation_rule(eps))
        state = build(family, dim, memory_cap=run.memory_cap)
        signal, variance = quadrature_stats(apply_weak_force(state, ForceParams(epsilon=eps)))
        at_eps = {"eps": eps, "snr": signal / math.sqrt(variance)}

    # CSV flattens the report into table columns; JSON keeps the schema's field names
    row = dict(report.to_row(), **at_eps)
    document = dict(report.model_dump(mode="json", by_alias=True), **at_eps)
    emit_rows([row], SENSITIVITY_COLUMNS, run.output_format, run.output_path, document=document)
    return EXIT_OK


def cmd_sweep(settings: Dict[str, Any], run: RunConfig) -> int:
    """One row per grid point; exit 4 when every point failed."""
    if settings["axis"] is None:
        raise ValueError("sweep needs --axis")
    linspace = None
    if settings["linspace"] is not None:
        parts = _floats(settings["linspace"], "--linspace")
        if len(parts) != 3 or parts[2] != int(parts[2]):
            raise ValueError("--linspace takes start,stop,count")
        linspace = (parts[0], parts[1], int(parts[2]))
    values = _floats(settings["values"], "--values") if settings["values"] is not None else None

    spec = SweepSpec(
        family=family_from_settings(settings),
        axis=settings["axis"],
        values=values,
        linspace=linspace,
        convention=settings["convention"],
    )
    frame = SweepService(run, progress=settings["verbose"]).run_sweep(spec)
    rows = frame.to_dict("records")
    document = {
        "family": spec.family.tag.value,
        "axis": spec.axis.value,
        "convention": spec.convention.value,
        "rows": rows,
    }
    emit_rows(rows, SWEEP_COLUMNS, run.output_format, run.output_path, document=document)

    if SweepService.all_failed(frame):
        logger.error("every sweep point failed")
        return EXIT_SWEEP_FAILED
    return EXIT_OK


def cmd_sample(settings: Dict[str, Any], run: RunConfig) -> int:
    """Seeded parity or homodyne shots plus a summary row."""
    scheme = ShotScheme(settings["scheme"])
    shots = settings["shots"]
    row: Dict[str, Any] = {column: None for column in SAMPLE_COLUMNS}

    if scheme == ShotScheme.PARITY:
        theta = settings["theta"]
        record = sample_parity_readout(theta, shots, run.seed, workers=run.workers)
        estimate = estimate_theta(record)
        row.update(
            {
                "theta": theta,
                "theta_hat": estimate.theta_hat,
                "std_error": estimate.std_error,
                "plus_count": estimate.plus_count,
                "boundary": estimate.boundary,
                "exact_mean": math.cos(2 * theta),
                "exact_variance": math.sin(2 * theta) ** 2,
            }
        )
    else:
        grid = tuple(_floats(settings["grid"], "--grid")) if settings["grid"] is not None else DEFAULT_GRID
        if len(grid) != 3:
            raise ValueError("--grid takes y_min,y_max,step")
        family = family_from_settings(settings)
        eps = settings["eps"] or 0.0
        dim = run.dim or max(suggest_dim(family), truncation_rule(eps))
        state = build(family, dim, memory_cap=run.memory_cap)
        if eps:
            state = apply_weak_force(state, ForceParams(epsilon=eps))
        record = sample_homodyne(state, shots, run.seed, grid=grid, workers=run.workers)
        exact_mean, exact_variance = quadrature_stats(state)
        row.update({"exact_mean": exact_mean, "exact_variance": exact_variance})

    outcomes = record.outcomes.astype(float)
    row.update(
        {
            "scheme": scheme.value,
            "shots": shots,
            "seed": run.seed,
            "sample_mean": float(np.mean(outcomes)),
            "sample_variance": float(np.var(outcomes, ddof=1)) if shots > 1 else None,
        }
    )

    if settings["records"]:
        path = resolve_output_path(settings["records"])
        record.to_csv(path)
        logger.info(f"wrote {shots} shot(s) to {path}")

    emit_rows([row], SAMPLE_COLUMNS, run.output_format, run.output_path, document=row)
    return EXIT_OK


def cmd_verify(settings: Dict[str, Any], run: RunConfig) -> int:
    """Run the verification suite; the summary is always JSON."""
    summary = run_verify(run, alpha=settings["alpha"], progress=settings["verbose"])
    emit(document_to_json(summary.model_dump()), run.output_path)
    logger.info(f"verify: {summary.passed} passed, {summary.failed} failed")
    return EXIT_OK if summary.ok else EXIT_VERIFY_FAILED


COMMANDS: Dict[str, Callable[[Dict[str, Any], RunConfig], int]] = {
    "state": cmd_state,
    "sensitivity": cmd_sensitivity,
    "sweep": cmd_sweep,
    "sample": cmd_sample,
    "verify": cmd_verify,
}


# ============================================================================
# Entry points
# ============================================================================

def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv, run one command and return its exit code.

    Args:
        argv: Arguments without the program name (sys.argv[1:] when None)
    """
    args = build_parser().parse_args(argv)
    try:
        settings = resolve_settings(args)
        config.setup_logging(bool(settings["verbose"]))
        run = run_config_from_settings(settings)
        return COMMANDS[args.command](settings, run)
    except NoRoot as e:
        logger.error(f"solver error: {e}")
        return EXIT_SOLVER_ERROR
    except TruncationTooSmall as e:
        hint = f"; rerun with --dim {e.suggested_dim}" if e.suggested_dim else ""
        logger.error(f"{e}{hint}")
        return EXIT_INPUT_ERROR
    except ValidationError as e:
        logger.error(f"invalid input: {e}")
        return EXIT_INPUT_ERROR
    except (FockForceError, ValueError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INPUT_ERROR


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())
