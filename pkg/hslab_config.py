import logging
import os
from typing import Dict, List

logger = logging.getLogger(__name__)

FAMILIES: Dict[str, str] = {
    "A": "Ehrhart series of the half-open slices of [0, r)^n",
    "B": "Ehrhart series of the closed slices of [0, r]^n",
    "flag-eulerian": "Colored permutations counted by flag descents",
}

# Per-subcommand input limits
COMMAND_LIMITS: Dict[str, Dict] = {
    "table": {
        "max_n": 6,
        "max_r": 4,
        "families": list(FAMILIES),
        "formats": ["json", "csv"],
    },
    "ehrhart": {
        "max_n": 6,
        "max_r": 4,
        "families": ["A", "B"],
        "modes": ["interpolate", "closed-form", "series"],
        "formats": ["json", "csv"],
    },
    "verify": {
        "max_n": 6,
        "max_r": 4,
        "formats": ["json"],
    },
}

VERIFY_DEFAULTS: Dict[str, int] = {
    "max_n": 5,
    "max_r": 3,
    # exponential generating functions (relAB, relAC, B = C)
    "series_nx": 4,
    # ordinary generating functions and the Foata-Han formula
    "ogf_nx": 3,
    # grid checks on phi / cstd
    "grid_n": 3,
    "grid_t": 3,
    # tableaux
    "sytdes_size": 7,
    "rsk_size": 5,
}

SUITES: Dict[str, str] = {
    "permstats": "Equidistribution of colored permutation statistics",
    "bijections": "Standardization, phi, alpha, alpha* and the block involution",
    "lattice": "Lattice-point counts, Ehrhart series and the main theorems",
    "closedform": "Closed-form Ehrhart polynomials and flag Eulerian numbers",
    "series": "Generating-function identities on truncated series",
    "tableaux": "Standard tableaux and the SYT-descent identity",
    "fixtures": "Stored reference tables",
}

DEFAULT_THREADS = 1
DEFAULT_FIXTURE_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                    "fixtures", "golden.json")


def get_command_limits(command: str) -> Dict:
    """Get input limits for a CLI subcommand."""
    return COMMAND_LIMITS.get(command, COMMAND_LIMITS["verify"])


def get_verify_defaults() -> Dict[str, int]:
    return dict(VERIFY_DEFAULTS)


def get_all_suites() -> List[str]:
    """Get list of all verification suites, in registry order."""
    return list(SUITES.keys())


def is_valid_suite(suite: str) -> bool:
    return suite == "all" or suite.lower() in SUITES


def get_thread_count() -> int:
    """Worker cap from HSLAB_THREADS; falls back to the default on bad input."""
    raw = os.getenv("HSLAB_THREADS")
    if raw is None or raw.strip() == "":
        return DEFAULT_THREADS
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"HSLAB_THREADS={raw!r} is not an integer, using {DEFAULT_THREADS}")
        return DEFAULT_THREADS
    if value < 1:
        logger.warning(f"HSLAB_THREADS={value} must be positive, using {DEFAULT_THREADS}")
        return DEFAULT_THREADS
    return value


def get_fixture_path() -> str:
    return os.getenv("HSLAB_FIXTURES", DEFAULT_FIXTURE_PATH)


def get_log_level() -> str:
    level = os.getenv("HSLAB_LOG_LEVEL", "WARNING").strip().upper()
    if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        logger.warning(f"HSLAB_LOG_LEVEL={level!r} is not a logging level, using WARNING")
        return "WARNING"
    return level
