"""Configuration defaults for ratchet_junction.

Environment readers for the run settings and the physics defaults
used by each command. The environment is consulted for the
worker count and log level only.
"""

import math
import os
from pathlib import Path

# --- Run settings ---

def get_output_dir() -> Path:
    """Get the default output directory."""
    return Path.cwd() / "ratchet_output"


def get_n_jobs() -> int:
    """Get the worker count from RATCHET_N_JOBS (default 1)."""
    env_val = os.environ.get("RATCHET_N_JOBS")
    if not env_val:
        return 1
    try:
        n_jobs = int(env_val)
    except ValueError:
        return 1
    return n_jobs if n_jobs != 0 else 1


def get_log_level() -> str:
    """Get the log level name from RATCHET_LOG_LEVEL (default INFO)."""
    return os.environ.get("RATCHET_LOG_LEVEL", "INFO").upper()


# --- Efficiency map (prefactor vs relative amplitude) ---

EFFICIENCY_THETA = 0.0
EFFICIENCY_ALPHA_GRID = "0.05:4:80"
EFFICIENCY_ZETA_GRID = "0:1:200"
EFFICIENCY_ODE_OMEGA = 3.0

# --- Voltage map / channel (sin-sin ideal diode) ---

CHANNEL_THETA = math.pi / 2
CHANNEL_ALPHA = 1.0
CHANNEL_CRITICAL_CURRENT = 1.18
CHANNEL_DRIVE_AMPLITUDE = 1.18
CHANNEL_OMEGA = 0.01
CHANNEL_LOG_RATIO_GRID = "-3:3:61"
CHANNEL_I_DC_GRID = "-0.5:1.5:81"

# --- Noise sweep ---

NOISE_TOTAL = 8.1
NOISE_Q = 4.0
NOISE_PHI = 0.0
NOISE_ZETA_GRID = "0.01:0.99:490"
