"""Pydantic models for photon-assisted shot noise."""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ratchet_junction.models.drive import wrap_phase


class DriveSpectrum(BaseModel):
    """Voltage drive V_ac1 cos(wt) + V_ac2 cos(2wt + phi) in Bessel arguments."""

    model_config = ConfigDict(frozen=True)

    z1: float = Field(default=0.0, ge=0.0, allow_inf_nan=False, description="eV_ac1/omega")
    z2: float = Field(default=0.0, ge=0.0, allow_inf_nan=False, description="eV_ac2/(2 omega)")
    phi: float = Field(default=0.0, description="Phase of the 2 omega tone")

    @field_validator("phi")
    @classmethod
    def wrap_phi(cls, v: float) -> float:
        """Reject non-finite phases and wrap the rest into (-pi, pi]."""
        if not math.isfinite(v):
            raise ValueError("phi must be finite")
        return wrap_phase(v)

    @classmethod
    def from_total(cls, total: float, zeta: float, phi: float = 0.0) -> DriveSpectrum:
        """Build a spectrum from V_ac = V_ac1 + V_ac2 and zeta = V_ac1/V_ac.

        Args:
            total: eV_ac/omega.
            zeta: Share of the fundamental in the total amplitude.
            phi: Phase of the second tone.

        Returns:
            Spectrum with z1 = zeta*total and z2 = (1 - zeta)*total/2.
        """
        return cls(z1=zeta * total, z2=(1.0 - zeta) * total / 2.0, phi=phi)


class NoiseSetup(BaseModel):
    """dc bias and junction constants entering the noise power."""

    model_config = ConfigDict(frozen=True)

    q: float = Field(default=0.0, allow_inf_nan=False, description="eV_dc/omega")
    conductance: float = Field(default=1.0, gt=0.0, allow_inf_nan=False, description="G")
    fano: float = Field(default=1.0, gt=0.0, allow_inf_nan=False, description="Fano factor F")
