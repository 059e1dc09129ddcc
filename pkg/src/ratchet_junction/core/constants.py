"""Constants for ratchet junction computations."""

import math
from enum import StrEnum


class DriveFamily(StrEnum):
    """Harmonic basis of a biharmonic drive."""

    COS_COS = "cos-cos"
    SIN_SIN = "sin-sin"


class ExtremumBranch(StrEnum):
    """Origin of a waveform extremum pair."""

    INTERIOR = "interior"
    ENDPOINT = "endpoint"
    NUMERICAL = "numerical"


class Direction(StrEnum):
    """Sign of a dc bias sweep or of directed transport."""

    POSITIVE = "positive"
    NEGATIVE = "negative"


class DcSign(StrEnum):
    """Sign of the dc term accompanying the ac drive."""

    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"


class TransportIntent(StrEnum):
    """Requested transport direction relative to the dc term."""

    ALONG_DC = "along-dc"
    AGAINST_DC = "against-dc"


class MapMode(StrEnum):
    """How grid cells of an efficiency map or channel scan are computed."""

    CLOSED_FORM = "closed-form"
    ODE = "ode"


class Command(StrEnum):
    """CLI commands."""

    WAVEFORM = "waveform"
    EFFICIENCY_MAP = "efficiency-map"
    IV_MAP = "iv-map"
    CHANNEL = "channel"
    NOISE_SWEEP = "noise-sweep"


class OutputFormat(StrEnum):
    """Data file formats."""

    CSV = "csv"
    JSON = "json"


# Canonical phases are matched within this distance (radians)
CANONICAL_PHASE_TOLERANCE = 1e-6

# Waveform extrema search
EXTREMA_SCAN_POINTS = 16384
EXTREMA_XATOL = 1e-12
EXTREMA_MAX_CANDIDATES = 4

# Junction integration
MAX_STEP = 0.01
STEPS_PER_PERIOD = 100
SLOW_DRIVE_OMEGA = 0.1
SLOW_TRANSIENT_PERIODS = 200
SLOW_AVERAGE_PERIODS = 400
FAST_TRANSIENT_PERIODS = 50
FAST_AVERAGE_PERIODS = 100
DEFAULT_SCAN_PHASES = (0.0, math.pi / 2, math.pi)

# Critical-current bisection
V_THRESHOLD = 1e-4
BISECTION_TOLERANCE = 1e-4
INITIAL_BRACKET = 0.25
MAX_BRACKET = 1024.0

# Photon coefficients
TAIL_TOLERANCE = 1e-12
TRUNCATION_MARGIN = 20
MAX_TRUNCATION_ORDER = 10_000
MAX_BESSEL_ORDER = 10_000
MAX_BESSEL_ARGUMENT = 1_000.0
ORACLE_MIN_SAMPLES = 2**12

# Output
CSV_SIGNIFICANT_DIGITS = 17
