"""Data models for ratchet_junction."""

from ratchet_junction.models.drive import BiharmonicSpec, wrap_phase
from ratchet_junction.models.junction import JunctionConfig, SimControl
from ratchet_junction.models.noise import DriveSpectrum, NoiseSetup
from ratchet_junction.models.run_config import (
    PARAMETER_MODELS,
    ChannelScanParameters,
    CommandParameters,
    EfficiencyMapParameters,
    IvMapParameters,
    NoiseSweepParameters,
    RunConfig,
    WaveformParameters,
)

__all__ = [
    "PARAMETER_MODELS",
    "BiharmonicSpec",
    "ChannelScanParameters",
    "CommandParameters",
    "DriveSpectrum",
    "EfficiencyMapParameters",
    "IvMapParameters",
    "JunctionConfig",
    "NoiseSetup",
    "NoiseSweepParameters",
    "RunConfig",
    "SimControl",
    "WaveformParameters",
    "wrap_phase",
]
