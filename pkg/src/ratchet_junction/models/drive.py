"""Pydantic models describing a two-tone drive.

A biharmonic drive is

    f(t) = I0 * [zeta * h(omega t) + alpha (1 - zeta) * h(2 omega t + theta)]

with h = cos for the cos-cos family and h = sin for the sin-sin family.
The fundamental amplitude is I1 = I0 zeta and the second-harmonic
amplitude is I2 = I0 alpha (1 - zeta).
"""

from __future__ import annotations

import math
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ratchet_junction.core.constants import DriveFamily


def wrap_phase(value: float) -> float:
    """Wrap a phase into the half-open interval (-pi, pi].

    Args:
        value: Phase in radians.

    Returns:
        Equivalent phase in (-pi, pi].
    """
    wrapped = math.remainder(value, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


class BiharmonicSpec(BaseModel):
    """Full description of a biharmonic drive."""

    model_config = ConfigDict(frozen=True)

    family: DriveFamily = Field(
        default=DriveFamily.COS_COS,
        description="Harmonic basis: cos-cos or sin-sin",
    )
    zeta: float = Field(
        default=2.0 / 3.0,
        ge=0.0,
        le=1.0,
        allow_inf_nan=False,
        description="Relative amplitude of the fundamental",
    )
    alpha: float = Field(
        default=1.0,
        gt=0.0,
        allow_inf_nan=False,
        description="Prefactor of the second harmonic",
    )
    theta: float = Field(
        default=0.0,
        description="Relative phase of the second harmonic, wrapped into (-pi, pi]",
    )
    amplitude: float = Field(
        default=1.0,
        ge=0.0,
        allow_inf_nan=False,
        description="Overall scale I0 (I0/I_c for a junction drive)",
    )
    omega: float = Field(
        default=1.0,
        gt=0.0,
        allow_inf_nan=False,
        description="Angular frequency (units of omega_c for a junction drive)",
    )

    @field_validator("theta")
    @classmethod
    def wrap_theta(cls, v: float) -> float:
        """Reject non-finite phases and wrap the rest into (-pi, pi]."""
        if not math.isfinite(v):
            raise ValueError("theta must be finite")
        return wrap_phase(v)

    @property
    def first_harmonic(self) -> float:
        """Amplitude I1 of the fundamental."""
        return self.amplitude * self.zeta

    @property
    def second_harmonic(self) -> float:
        """Amplitude I2 of the second harmonic."""
        return self.amplitude * self.alpha * (1.0 - self.zeta)

    @property
    def period(self) -> float:
        """Drive period 2 pi / omega."""
        return 2.0 * math.pi / self.omega

    def replace(self, **changes: Any) -> BiharmonicSpec:
        """Return a validated copy with the given fields changed."""
        return type(self).model_validate({**self.model_dump(), **changes})
