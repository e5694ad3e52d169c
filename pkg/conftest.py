"""
Shared pytest fixtures.
"""

import sys
from pathlib import Path

import pytest

# Add package root to path
sys.path.insert(0, str(Path(__file__).parent))

from fockforce import config  # noqa: E402
from fockforce.models.schemas import RunConfig  # noqa: E402


@pytest.fixture
def run_config() -> RunConfig:
    """Default run settings: seed 0, one worker, automatic truncation."""
    return RunConfig()


@pytest.fixture(autouse=True)
def no_out_dir(monkeypatch):
    """Keep a developer's FOCKFORCE_OUT_DIR from redirecting test output."""
    monkeypatch.setattr(config, "OUT_DIR", None)
