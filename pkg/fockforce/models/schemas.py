"""
Pydantic schemas for configurations, state families and analysis reports.
"""

import math
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, computed_field, field_validator, model_validator


# ============================================================================
# Numerics
# ============================================================================

class NumericsConfig(BaseModel):
    """Tolerances for the special-function and matrix-exponential kernels."""

    series_tol: float = Field(
        default=1e-16,
        gt=0,
        description="Absolute term cutoff for power series",
    )
    expm_tol: float = Field(
        default=1e-13,
        gt=0,
        description="Matrix-exponential truncation tolerance",
    )
    max_terms: int = Field(
        default=500,
        ge=1,
        description="Safety cap on the number of series terms",
    )

    model_config = {"frozen": True}


# ============================================================================
# State families
# ============================================================================

class FamilyTag(str, Enum):
    """State families known to the simulator."""

    COHERENT = "coherent"
    SQUEEZED_VACUUM = "squeezed"
    TWO_MODE_SQUEEZED = "tmsv"
    CIRCLE = "circle"
    EVEN_CAT = "cat"
    ODD_CAT = "oddcat"
    N_MODE_CAT = "ncat"
    GENERALIZED_CAT = "gencat"


class StateFamily(BaseModel):
    """A family tag plus the parameters that pick one member of it."""

    tag: FamilyTag = Field(..., description="State family")
    alpha: float = Field(default=0.0, description="Coherent amplitude (real)")
    r: Optional[float] = Field(default=None, description="Squeezing parameter")
    lam: Optional[float] = Field(
        default=None,
        alias="lambda",
        description="Squeezing expressed as lambda = tanh r",
    )
    n_modes: int = Field(default=1, ge=1, description="Number of modes N")
    k: int = Field(default=2, ge=1, description="Modulus K of a generalized cat")
    nu: int = Field(default=0, ge=0, description="Residue nu of a generalized cat")

    model_config = {"frozen": True, "populate_by_name": True}

    @model_validator(mode="after")
    def check_consistency(self):
        if self.r is not None and self.lam is not None:
            if abs(math.tanh(self.r) - self.lam) > 1e-12:
                raise ValueError(
                    f"lambda={self.lam} is not tanh(r={self.r})={math.tanh(self.r)}"
                )
        if self.lam is not None and not -1.0 < self.lam < 1.0:
            raise ValueError("lambda must lie in (-1, 1)")
        if self.nu >= self.k:
            raise ValueError(f"nu={self.nu} must satisfy 0 <= nu <= K-1 (K={self.k})")
        return self

    @property
    def squeezing(self) -> float:
        """Canonical squeezing parameter r (lambda is converted with atanh)."""
        if self.r is not None:
            return self.r
        if self.lam is not None:
            return math.atanh(self.lam)
        return 0.0

    @property
    def tanh_r(self) -> float:
        return math.tanh(self.squeezing)

    def params(self) -> Dict[str, Any]:
        """
        Parameter columns for report rows.

        The same keys come back for every family so that a table's columns
        depend only on the command that produced it.
        """
        return {
            "alpha": self.alpha,
            "r": self.squeezing,
            "lambda": self.tanh_r,
            "K": self.k,
            "nu": self.nu,
        }


class ForceParams(BaseModel):
    """How the weak force displaces the oscillator(s)."""

    epsilon: float = Field(default=0.0, description="Momentum-quadrature displacement per mode")
    beta_re: Optional[float] = Field(default=None, description="Real part of a general displacement")
    beta_im: Optional[float] = Field(default=None, description="Imaginary part of a general displacement")
    per_mode: bool = Field(
        default=True,
        description="Force acts identically and independently on each mode",
    )

    model_config = {"frozen": True}

    @property
    def beta(self) -> complex:
        """General displacement; defaults to i*epsilon when only epsilon is given."""
        if self.beta_re is None and self.beta_im is None:
            return 1j * self.epsilon
        return complex(self.beta_re or 0.0, self.beta_im or 0.0)


# ============================================================================
# Reports
# ============================================================================

class SensitivityReport(BaseModel):
    """Signal, variance and minimum detectable force for one configuration."""

    family: StateFamily = Field(..., description="State family analysed")
    signal: float = Field(..., description="Signal S per unit epsilon (S/eps)")
    variance: float = Field(..., gt=0, description="Variance V of the collective quadrature")
    snr_slope: float = Field(..., description="SNR per unit epsilon, (S/eps)/sqrt(V)")
    epsilon_min: float = Field(..., gt=0, description="Smallest epsilon with SNR >= 1")
    mean_photon_total: float = Field(..., description="Total mean photon number n_tot")
    mode_count: int = Field(..., ge=1, description="Number of modes N")
    linear: bool = Field(default=True, description="Signal passed the linearity check")
    convention: str = Field(default="snr", description="How epsilon_min was obtained")

    def to_row(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {"family": self.family.tag.value}
        row.update(self.family.params())
        row.update(
            {
                "N": self.mode_count,
                "n_total": self.mean_photon_total,
                "S_per_eps": self.signal,
                "V": self.variance,
                "snr_slope": self.snr_slope,
                "eps_min": self.epsilon_min,
                "convention": self.convention,
            }
        )
        return row


class BoundConvention(str, Enum):
    """Which prefactor turns a generator variance into a parameter bound."""

    UNIT_FACTOR = "unit"
    CRAMER_RAO = "cramer_rao"


class EstimationBound(BaseModel):
    """Generator variance and the parameter-uncertainty bound it implies."""

    generator_variance: float = Field(..., gt=0, description="Var of the rotation generator")
    delta_theta: float = Field(..., description="Bound on the rotation parameter")
    convention_factor: float = Field(..., description="1 (unit) or 1/2 (Cramer-Rao)")
    theta_per_epsilon: float = Field(default=1.0, description="d theta / d epsilon")
    convention: BoundConvention = Field(default=BoundConvention.UNIT_FACTOR)

    @computed_field
    @property
    def delta_epsilon(self) -> float:
        return self.delta_theta / self.theta_per_epsilon


class EstimatorResult(BaseModel):
    """Parity-readout estimate of a rotation angle."""

    theta_hat: float = Field(..., description="Estimated rotation angle")
    std_error: float = Field(..., description="Delta-method standard error")
    shots: int = Field(..., ge=1, description="Number of shots M")
    plus_count: int = Field(..., ge=0, description="Number of '+' outcomes k")
    boundary: bool = Field(default=False, description="k was 0 or M")


# ============================================================================
# Run configuration
# ============================================================================

class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class RunConfig(BaseModel):
    """Options shared by every CLI command."""

    dim: Optional[int] = Field(
        default=None,
        ge=2,
        description="Truncation dimension; derived from the truncation rule when omitted",
    )
    tol: float = Field(default=1e-6, gt=0, description="Reporting tolerance")
    seed: int = Field(default=0, ge=0, lt=2**64, description="64-bit RNG seed")
    output_format: OutputFormat = Field(default=OutputFormat.CSV)
    output_path: Optional[str] = Field(default=None, description="Write output here instead of stdout")
    memory_cap: int = Field(default=2**22, ge=1, description="Amplitude cap for multi-mode tensors")
    workers: int = Field(default=1, ge=1, description="Parallel workers for sweeps")


class SweepAxis(str, Enum):
    ALPHA = "alpha"
    R = "r"
    LAMBDA = "lambda"
    N = "N"
    K = "K"


class SweepSpec(BaseModel):
    """A one-dimensional parameter sweep over a state family."""

    family: StateFamily = Field(..., description="Base family; the swept axis overrides one parameter")
    axis: SweepAxis = Field(..., description="Parameter swept")
    values: Optional[List[float]] = Field(default=None, description="Explicit grid values")
    linspace: Optional[Tuple[float, float, int]] = Field(
        default=None,
        description="(start, stop, count) linear grid",
    )
    convention: BoundConvention = Field(default=BoundConvention.UNIT_FACTOR)

    @field_validator("values")
    @classmethod
    def strictly_increasing(cls, v):
        if v is not None:
            if not v:
                raise ValueError("values must be non-empty")
            if any(b <= a for a, b in zip(v, v[1:])):
                raise ValueError("values must be strictly increasing")
        return v

    @model_validator(mode="after")
    def one_grid(self):
        if (self.values is None) == (self.linspace is None):
            raise ValueError("give exactly one of values or linspace")
        if self.linspace is not None:
            start, stop, count = self.linspace
            if count < 1 or (count > 1 and stop <= start):
                raise ValueError("linspace needs count >= 1 and stop > start")
        return self

    def grid(self) -> List[float]:
        if self.values is not None:
            return list(self.values)
        start, stop, count = self.linspace
        if count == 1:
            return [float(start)]
        step = (stop - start) / (count - 1)
        return [start + i * step for i in range(count)]


# ============================================================================
# Serialized states
# ============================================================================

class StateDocument(BaseModel):
    """JSON form of a constructed state."""

    family: Optional[str] = Field(default=None, description="Family tag the state was built from")
    params: Dict[str, float] = Field(default_factory=dict, description="Family parameters")
    dims: List[int] = Field(..., min_length=1, description="Per-mode truncation dimensions")
    amps: List[Tuple[float, float]] = Field(..., description="[re, im] amplitude pairs, mode 0 slowest")
    mean_photon: Optional[float] = Field(default=None, description="Analytic total mean photon number")

    @model_validator(mode="after")
    def amps_fill_dims(self):
        expected = math.prod(self.dims)
        if len(self.amps) != expected:
            raise ValueError(f"{len(self.amps)} amplitudes for dims {self.dims} (expected {expected})")
        return self


# ============================================================================
# Verification
# ============================================================================

class VerifyCheck(BaseModel):
    """Outcome of one built-in verification check."""

    id: str = Field(..., description="Stable check identifier")
    passed: bool = Field(..., description="Whether the check passed")
    value: Optional[float] = Field(default=None, description="Measured value")
    expected: Optional[float] = Field(default=None, description="Reference value")
    tol: Optional[float] = Field(default=None, description="Allowed deviation")
    detail: Optional[str] = Field(default=None, description="Failure reason, if any")


class VerifySummary(BaseModel):
    """Machine-readable result of `fockforce verify`."""

    passed: int = Field(..., ge=0, description="Number of checks that passed")
    failed: int = Field(..., ge=0, description="Number of checks that failed")
    seed: int = Field(..., description="Seed used by the Monte Carlo checks")
    checks: List[VerifyCheck] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0
