"""
Configuration management for the plane-partition congruence toolkit.
Loads environment variables and defines system-wide settings.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

from modules.errors import ConfigError

# Load .env from the project root (same directory as config.py)
_env_path = Path(__file__).resolve().parent / ".env"
load_dotenv(dotenv_path=_env_path)


def _env_int(name, default):
    """
    Read an integer setting from the environment.

    Args:
        name (str): Environment variable name
        default (int): Value used when the variable is unset or empty

    Returns:
        int: Parsed value

    Raises:
        ConfigError: If the variable is set but is not a decimal integer
    """
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw, 10)
    except ValueError:
        raise ConfigError(f"{name} must be a decimal integer, got {raw!r}")


def _env_flag(name, default=False):
    raw = os.getenv(name, "").strip().lower()
    if not raw:
        return default
    return raw in ("1", "true", "yes", "on")


# Enumeration oracles (exponential; exceeding a cap is an error, never a truncation)
ORACLE_LIMIT = _env_int("PLANECONG_ORACLE_LIMIT", 25)
ORACLE_MAX_COMPONENTS = _env_int("PLANECONG_ORACLE_MAX_K", 8)

# Series arithmetic: residues are int64, so products of two residues must fit
MAX_MODULUS = 2**31
SERIES_CACHE_SIZE = 64

# Verification horizons
DEFAULT_EMPIRICAL_HORIZON = _env_int("PLANECONG_EMPIRICAL_HORIZON", 500)

# Search / scan
DEFAULT_SCAN_PRIME_LIMIT = _env_int("PLANECONG_SCAN_PRIME_LIMIT", 31)
SCAN_HORIZON_FACTOR = 10  # values per residue class = 10 * ell
DEFAULT_WORKER_COUNT = _env_int("PLANECONG_WORKERS", 1)
SHOW_PROGRESS = _env_flag("PLANECONG_PROGRESS")

# Run recording (opt-in with --record)
RUN_LOG_DIR = os.getenv("PLANECONG_RUN_DIR", "runs")

# Logging
LOG_LEVEL = os.getenv("PLANECONG_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "{asctime} [{levelname:5}] {name} - {message}"
LOG_DATE_FORMAT = "%H:%M:%S"

if ORACLE_LIMIT < 0:
    raise ConfigError(f"PLANECONG_ORACLE_LIMIT must be nonnegative, got {ORACLE_LIMIT}")
if DEFAULT_WORKER_COUNT < 1:
    raise ConfigError(f"PLANECONG_WORKERS must be at least 1, got {DEFAULT_WORKER_COUNT}")
