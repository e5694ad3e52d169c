"""
Services that drive the analysis modules over many configurations.
"""

from .sweep_service import SWEEP_COLUMNS, SweepService, sweep

__all__ = ["SWEEP_COLUMNS", "SweepService", "sweep"]
