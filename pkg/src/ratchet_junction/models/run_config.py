"""Run configuration for the command-line front end.

A :class:`RunConfig` holds a command name and a flat parameter mapping.
Each command validates its parameters through its own model, so a bad
value is rejected, with its parameter name, before any computation starts.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator

from ratchet_junction.config import defaults
from ratchet_junction.core.constants import Command, DriveFamily, MapMode, OutputFormat
from ratchet_junction.core.sweeps import parse_grid
from ratchet_junction.models.drive import wrap_phase


class CommandParameters(BaseModel):
    """Base for per-command parameter models."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    @field_validator("*", mode="after")
    @classmethod
    def check_grid(cls, v: Any, info: ValidationInfo) -> Any:
        """Parse every ``*_grid`` field once so malformed grids fail early."""
        if info.field_name.endswith("_grid") and v is not None:
            parse_grid(v)
        return v


class ControlOverrides(CommandParameters):
    """Optional integration settings; unset values fall back to the Omega-dependent defaults."""

    dt: float | None = Field(default=None, gt=0.0, allow_inf_nan=False)
    transient_periods: int | None = Field(default=None, ge=1)
    average_periods: int | None = Field(default=None, ge=1)


class WaveformParameters(CommandParameters):
    """Parameters of the ``waveform`` command."""

    family: DriveFamily = DriveFamily.COS_COS
    zeta: float = Field(default=2.0 / 3.0, ge=0.0, le=1.0, allow_inf_nan=False)
    alpha: float = Field(default=1.0, gt=0.0, allow_inf_nan=False)
    theta: float = Field(default=0.0, allow_inf_nan=False)
    amplitude: float = Field(default=1.0, ge=0.0, allow_inf_nan=False)
    omega: float = Field(default=1.0, gt=0.0, allow_inf_nan=False)
    samples: int = Field(default=512, ge=2)

    @field_validator("theta")
    @classmethod
    def wrap_theta(cls, v: float) -> float:
        """Wrap theta into (-pi, pi]."""
        return wrap_phase(v)


class EfficiencyMapParameters(ControlOverrides):
    """Parameters of the ``efficiency-map`` command."""

    family: DriveFamily = DriveFamily.COS_COS
    theta: float = Field(default=defaults.EFFICIENCY_THETA, allow_inf_nan=False)
    alpha_grid: str = defaults.EFFICIENCY_ALPHA_GRID
    zeta_grid: str = defaults.EFFICIENCY_ZETA_GRID
    mode: MapMode = MapMode.CLOSED_FORM
    amplitude: float = Field(default=1.0, ge=0.0, allow_inf_nan=False)
    omega: float = Field(default=defaults.EFFICIENCY_ODE_OMEGA, gt=0.0, allow_inf_nan=False)

    @field_validator("alpha_grid")
    @classmethod
    def positive_alpha(cls, v: str) -> str:
        """Prefactors must be positive."""
        if parse_grid(v)[0] <= 0.0:
            raise ValueError("alpha values must be > 0")
        return v

    @field_validator("zeta_grid")
    @classmethod
    def unit_zeta(cls, v: str) -> str:
        """Relative amplitudes must lie in [0, 1]."""
        grid = parse_grid(v)
        if grid[0] < 0.0 or grid[-1] > 1.0:
            raise ValueError("zeta values must lie in [0, 1]")
        return v


class ChannelParameters(ControlOverrides):
    """Parameters shared by ``iv-map`` and ``channel``."""

    family: DriveFamily = DriveFamily.SIN_SIN
    theta: float = Field(default=defaults.CHANNEL_THETA, allow_inf_nan=False)
    alpha: float = Field(default=defaults.CHANNEL_ALPHA, gt=0.0, allow_inf_nan=False)
    i0: float = Field(default=defaults.CHANNEL_DRIVE_AMPLITUDE, ge=0.0, allow_inf_nan=False)
    ic: float = Field(default=defaults.CHANNEL_CRITICAL_CURRENT, gt=0.0, allow_inf_nan=False)
    omega: float = Field(default=defaults.CHANNEL_OMEGA, gt=0.0, allow_inf_nan=False)
    log_ratio_grid: str = defaults.CHANNEL_LOG_RATIO_GRID
    zeta_grid: str | None = None

    @field_validator("zeta_grid")
    @classmethod
    def open_unit_zeta(cls, v: str | None) -> str | None:
        """An explicit zeta grid must lie in (0, 1)."""
        if v is None:
            return v
        grid = parse_grid(v)
        if grid[0] <= 0.0 or grid[-1] >= 1.0:
            raise ValueError("zeta values must lie in (0, 1)")
        return v

    @property
    def amplitude_ratio(self) -> float:
        """Drive amplitude I0/I_c."""
        return self.i0 / self.ic


class IvMapParameters(ChannelParameters):
    """Parameters of the ``iv-map`` command."""

    i_dc_grid: str = defaults.CHANNEL_I_DC_GRID


class ChannelScanParameters(ChannelParameters):
    """Parameters of the ``channel`` command."""

    mode: MapMode = MapMode.CLOSED_FORM


class NoiseSweepParameters(CommandParameters):
    """Parameters of the ``noise-sweep`` command."""

    total: float = Field(default=defaults.NOISE_TOTAL, gt=0.0, allow_inf_nan=False)
    q: float = Field(default=defaults.NOISE_Q, allow_inf_nan=False)
    phi: float = Field(default=defaults.NOISE_PHI, allow_inf_nan=False)
    zeta_grid: str = defaults.NOISE_ZETA_GRID
    conductance: float = Field(default=1.0, gt=0.0, allow_inf_nan=False)
    fano: float = Field(default=1.0, gt=0.0, allow_inf_nan=False)

    @field_validator("zeta_grid")
    @classmethod
    def open_unit_zeta(cls, v: str) -> str:
        """Sweep points must lie in (0, 1)."""
        grid = parse_grid(v)
        if grid[0] <= 0.0 or grid[-1] >= 1.0:
            raise ValueError("zeta values must lie in (0, 1)")
        return v

    @field_validator("phi")
    @classmethod
    def wrap_phi(cls, v: float) -> float:
        """Wrap phi into (-pi, pi]."""
        return wrap_phase(v)


PARAMETER_MODELS: dict[Command, type[CommandParameters]] = {
    Command.WAVEFORM: WaveformParameters,
    Command.EFFICIENCY_MAP: EfficiencyMapParameters,
    Command.IV_MAP: IvMapParameters,
    Command.CHANNEL: ChannelScanParameters,
    Command.NOISE_SWEEP: NoiseSweepParameters,
}


class RunConfig(BaseModel):
    """One CLI job: command, flat parameters, and output settings."""

    command: Command = Field(description="Command to run")
    parameters: dict[str, Any] = Field(
        default_factory=dict,
        description="Flat parameter mapping validated by the command's model",
    )
    output: Path | None = Field(default=None, description="Data file path")
    output_format: OutputFormat = Field(default=OutputFormat.CSV, description="csv or json")

    def resolve(self) -> CommandParameters:
        """Validate ``parameters`` against the command's model.

        Returns:
            Parameter model with defaults filled in.

        Raises:
            pydantic.ValidationError: Naming every offending parameter.
        """
        return PARAMETER_MODELS[self.command].model_validate(self.parameters)

    def resolved(self) -> RunConfig:
        """Copy with every parameter, defaults included, written out."""
        params = self.resolve().model_dump(mode="json")
        return self.model_copy(update={"parameters": params})
