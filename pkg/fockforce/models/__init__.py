"""
Pydantic schemas for configurations, state families and reports.
"""

from .schemas import (
    BoundConvention,
    EstimationBound,
    EstimatorResult,
    FamilyTag,
    ForceParams,
    NumericsConfig,
    OutputFormat,
    RunConfig,
    SensitivityReport,
    StateDocument,
    StateFamily,
    SweepAxis,
    SweepSpec,
    VerifyCheck,
    VerifySummary,
)

__all__ = [
    "BoundConvention",
    "EstimationBound",
    "EstimatorResult",
    "FamilyTag",
    "ForceParams",
    "NumericsConfig",
    "OutputFormat",
    "RunConfig",
    "SensitivityReport",
    "StateDocument",
    "StateFamily",
    "SweepAxis",
    "SweepSpec",
    "VerifyCheck",
    "VerifySummary",
]
