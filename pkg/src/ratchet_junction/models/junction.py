"""Pydantic models for the overdamped junction simulation."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from ratchet_junction.core.constants import (
    DEFAULT_SCAN_PHASES,
    MAX_STEP,
    SLOW_AVERAGE_PERIODS,
    SLOW_TRANSIENT_PERIODS,
)
from ratchet_junction.models.drive import BiharmonicSpec


class JunctionConfig(BaseModel):
    """Dimensionless RCSJ parameters.

    Currents are in units of I_c and time in units of 1/omega_c, so the
    internal dynamics always use I_c = 1.
    """

    model_config = ConfigDict(frozen=True)

    i_dc: float = Field(
        default=0.0,
        allow_inf_nan=False,
        description="dc bias current I_dc/I_c",
    )
    drive: BiharmonicSpec = Field(
        default_factory=BiharmonicSpec,
        description="ac drive; amplitude holds I0/I_c and omega holds omega/omega_c",
    )
    critical_current: float = Field(
        default=1.0,
        gt=0.0,
        allow_inf_nan=False,
        description=(
            "I_c in physical units; a scale label only, the dynamics use I_c = 1 "
            "and the CLI takes the physical ratio I0/I_c through --i0 and --ic"
        ),
    )


class SimControl(BaseModel):
    """Fixed-step integration and averaging settings."""

    model_config = ConfigDict(frozen=True)

    dt: float = Field(
        default=MAX_STEP,
        gt=0.0,
        allow_inf_nan=False,
        description="Integration step in units of 1/omega_c",
    )
    transient_periods: int = Field(
        default=SLOW_TRANSIENT_PERIODS,
        ge=1,
        description="Drive periods discarded before averaging",
    )
    average_periods: int = Field(
        default=SLOW_AVERAGE_PERIODS,
        ge=1,
        description="Drive periods averaged",
    )
    initial_phase: float = Field(
        default=0.0,
        allow_inf_nan=False,
        description="phi(0) in radians",
    )
    scan_phases: tuple[float, ...] = Field(
        default=DEFAULT_SCAN_PHASES,
        min_length=1,
        description="Initial phases whose running states are united in boundary scans",
    )
