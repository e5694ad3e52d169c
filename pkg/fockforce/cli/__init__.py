"""
Command-line front end: state, sensitivity, sweep, sample and verify.
"""

from .main import COMMANDS, build_parser, main, run
from .verify import CHECKS, run_verify

__all__ = ["COMMANDS", "build_parser", "main", "run", "CHECKS", "run_verify"]
