"""Core numerical modules for ratchet_junction.

Numerical modules (waveform, junction, shotnoise, sweeps) are imported by
their full path; this package re-exports constants and exceptions only.
"""

from ratchet_junction.core.constants import (
    Command,
    DcSign,
    Direction,
    DriveFamily,
    ExtremumBranch,
    MapMode,
    OutputFormat,
    TransportIntent,
)
from ratchet_junction.core.exceptions import (
    BranchSelectionError,
    ConfigurationError,
    ConvergenceError,
    DegenerateWaveformError,
    DomainError,
    EmptyChannelError,
    IntegrationError,
    RatchetError,
)

__all__ = [
    "BranchSelectionError",
    "Command",
    "ConfigurationError",
    "ConvergenceError",
    "DcSign",
    "DegenerateWaveformError",
    "Direction",
    "DomainError",
    "DriveFamily",
    "EmptyChannelError",
    "ExtremumBranch",
    "IntegrationError",
    "MapMode",
    "OutputFormat",
    "RatchetError",
    "TransportIntent",
]
