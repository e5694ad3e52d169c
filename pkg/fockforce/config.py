"""
Environment-driven configuration for fockforce.
"""

import logging
import os

from dotenv import load_dotenv


# Load environment variables
load_dotenv()

# Output directory override (the only setting the environment may change for a run)
OUT_DIR = os.getenv("FOCKFORCE_OUT_DIR")

LOG_LEVEL = os.getenv("FOCKFORCE_LOG_LEVEL", "INFO")

# Largest multi-mode amplitude tensor we are willing to allocate
MEMORY_CAP = int(os.getenv("FOCKFORCE_MEMORY_CAP", str(2**22)))

# Worker threads for sweeps and shot generation
WORKERS = int(os.getenv("FOCKFORCE_WORKERS", "1"))

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


def setup_logging(verbose: bool = False) -> None:
    """Configure root logging on stderr, once per process."""
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT)
