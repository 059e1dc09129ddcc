"""Ratchet Junction - biharmonic ac drives for Josephson-junction ratchets.

This package provides the normalized biharmonic waveform algebra, a
resistively shunted junction simulator with critical-current bisection,
and the photon-assisted shot-noise model of a driven tunnel junction.
"""

__version__ = "0.1.0"

from ratchet_junction.config import Config
from ratchet_junction.core.constants import Command, DriveFamily, MapMode, OutputFormat
from ratchet_junction.models import (
    BiharmonicSpec,
    DriveSpectrum,
    JunctionConfig,
    NoiseSetup,
    RunConfig,
    SimControl,
)
from ratchet_junction.runner import JobRunner, run

__all__ = [
    "BiharmonicSpec",
    "Command",
    "Config",
    "DriveFamily",
    "DriveSpectrum",
    "JobRunner",
    "JunctionConfig",
    "MapMode",
    "NoiseSetup",
    "OutputFormat",
    "RunConfig",
    "SimControl",
    "run",
]
