"""
Runtime configuration for GirthLab.
Everything comes from environment variables with built-in fallbacks.
"""

import os
import sys
from typing import Optional

DEFAULT_SEED = 20240611

# n(n-1) bits, i.e. n <= 6
EXHAUSTIVE_BIT_CAP = 30

# pruned candidate count allowed per order in cage search
CAGE_SPACE_CAP = 2 ** 24


def debug_enabled() -> bool:
    return bool(os.getenv("GIRTHLAB_DEBUG"))


def debug(message: str):
    """Print a diagnostic line to stderr when GIRTHLAB_DEBUG is set."""
    if debug_enabled():
        print(f"🔍 DEBUG: {message}", file=sys.stderr)


def worker_count(requested: Optional[int] = None) -> int:
    """
    Number of worker processes for partitioned sweeps.

    Args:
        requested: explicit override; None reads GIRTHLAB_THREADS

    Returns:
        A positive worker count. 0 (or unset) means one per CPU.
    """
    if requested is None:
        raw = os.getenv("GIRTHLAB_THREADS", "0")
        try:
            requested = int(raw)
        except ValueError:
            debug(f"GIRTHLAB_THREADS={raw!r} is not an integer, using 1 worker")
            return 1
    if requested < 0:
        debug(f"negative worker count {requested}, using 1 worker")
        return 1
    if requested == 0:
        return os.cpu_count() or 1
    return requested


def witness_dir() -> str:
    """Where counterexample witness files are written."""
    return os.getenv("GIRTHLAB_WITNESS_DIR") or os.getcwd()
