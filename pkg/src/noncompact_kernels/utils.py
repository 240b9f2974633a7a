"""Utility functions and configuration for noncompact-kernels."""

import json
import os
import zlib
from datetime import datetime
from pathlib import Path

import numpy as np
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


# =============================================================================
# NUMERICAL CONFIGURATION - Tolerances shared across the package
# =============================================================================

# Hyperboloid membership: |<v,v>_M + 1| is checked relative to v_0^2
MINKOWSKI_TOL = 1e-10

# arccosh arguments within this distance below 1 are clamped, beyond is an error
ARCCOSH_CLAMP_TOL = 1e-9

# Symmetry check for SPD matrices, relative to the matrix scale
SYMMETRY_TOL = 1e-12

# Group membership checks (Lorentz form preservation, determinant, reconstruction)
GROUP_TOL = 1e-10

# Quadrature settings for the oracle kernels
QUAD_EPSREL = 1e-10
QUAD_MAX_ERROR = 1e-8
QUAD_LIMIT = 200

# Jitter escalation for GP factorizations, relative to the mean diagonal
JITTER_LEVELS = (1e-10, 1e-8, 1e-6)


# =============================================================================
# RUNTIME CONFIGURATION - Read from the environment
# =============================================================================

DEFAULT_SEED = int(os.getenv("NCK_SEED", "0"))
DEFAULT_NUM_FEATURES = int(os.getenv("NCK_NUM_FEATURES", "2000"))
REJECTION_MAX_ITERATIONS = int(os.getenv("NCK_REJECTION_MAX_ITERATIONS", str(10**6)))

# Named random streams. A global seed expands into one Philox stream per
# (component, replicate) pair, so adding a component never shifts another.
RNG_STREAMS = {
    "basis": 0,
    "weights": 1,
    "noise": 2,
    "sampler": 3,
    "zonal": 4,
    "points": 5,
    "reference": 6,
}


# =============================================================================
# UTILITY FUNCTIONS
# =============================================================================


def is_debug() -> bool:
    """Check if debug mode is enabled."""
    return os.getenv("DEBUG", "false").lower() == "true"


def get_run_log_path() -> Path | None:
    """Get the JSONL audit log path, or None when run logging is disabled."""
    path = os.getenv("NCK_RUN_LOG", "")
    return Path(path) if path else None


def log_run_step(step: str, data: dict) -> None:
    """Append an experiment step to the audit log, if one is configured."""
    log_file = get_run_log_path()
    if log_file is None:
        return

    log_file.parent.mkdir(parents=True, exist_ok=True)

    log_entry = {
        "timestamp": datetime.now().isoformat(),
        "step": step,
        "data": data,
    }

    with open(log_file, "a") as f:
        f.write(json.dumps(log_entry, default=str) + "\n")


def stream_index(stream: str | int) -> int:
    """Map a stream name to its spawn-key index.

    Unknown names are hashed with CRC32 so that they remain stable across runs.
    """
    if isinstance(stream, int):
        return stream
    if stream in RNG_STREAMS:
        return RNG_STREAMS[stream]
    return zlib.crc32(stream.encode()) + len(RNG_STREAMS)


def make_rng(seed: int, stream: str | int = 0, replicate: int = 0) -> np.random.Generator:
    """Get a counter-based generator for one component of a seeded run.

    Args:
        seed: Global 64-bit seed of the run.
        stream: Component name (see RNG_STREAMS) or explicit index.
        replicate: Replicate counter, e.g. the basis index in a sweep.

    Returns:
        A Philox-backed generator keyed by (seed, stream, replicate).
    """
    sequence = np.random.SeedSequence(seed, spawn_key=(stream_index(stream), replicate))
    return np.random.Generator(np.random.Philox(sequence))


def rng_provenance(seed: int) -> dict:
    """Describe the stream-splitting scheme for output headers."""
    return {
        "bit_generator": "Philox",
        "seed": seed,
        "spawn_key": "(stream, replicate)",
        "streams": dict(RNG_STREAMS),
    }
