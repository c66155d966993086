#!/usr/bin/env python3
"""
Configuration constants, budgets and exit codes.
"""
import logging
import os

__version__ = "0.3.0"

# Exhaustive search budget (number of assignments / states)
DEFAULT_BUDGET = 10_000_000

# Dynamics
DEFAULT_STEP_LIMIT = 100_000

# Constructors: backtracking cap for the tree inner stage
TREE_SEARCH_LIMIT = 1_000_000

# Random graphs
RANDOM_GRAPH_MAX_TRIES = 1000
DEFAULT_SEED = 0

# Parallel workers for oracle enumeration
DEFAULT_JOBS = 1

# Exit codes (stable, documented in README)
EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_BUDGET_EXCEEDED = 3
EXIT_FAILED_BOUND = 4
EXIT_CONSTRUCTION_ERROR = 5
EXIT_INAPPLICABLE = 6

# Logging
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
DEFAULT_LOG_LEVEL = "WARNING"

# File format marker written into every flat file
FORMAT_VERSION = 1


def _int_env(name: str, default: int) -> int:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        logging.getLogger(__name__).warning("Ignoring malformed %s=%r", name, raw)
        return default
    return value if value > 0 else default


def state_budget() -> int:
    """State budget, overridable with VJG_BUDGET."""
    return _int_env("VJG_BUDGET", DEFAULT_BUDGET)


def step_limit() -> int:
    """Dynamics step limit, overridable with VJG_STEP_LIMIT."""
    return _int_env("VJG_STEP_LIMIT", DEFAULT_STEP_LIMIT)


def log_level() -> str:
    level = os.environ.get("VJG_LOG_LEVEL", "").strip().upper()
    return level if isinstance(logging.getLevelName(level), int) else DEFAULT_LOG_LEVEL
