"""Tests for ratchet_junction data models."""

import math

import pytest
from pydantic import ValidationError

from ratchet_junction.core.constants import Command, DriveFamily, MapMode, OutputFormat
from ratchet_junction.models import (
    BiharmonicSpec,
    ChannelScanParameters,
    DriveSpectrum,
    EfficiencyMapParameters,
    JunctionConfig,
    NoiseSetup,
    NoiseSweepParameters,
    RunConfig,
    SimControl,
    wrap_phase,
)


class TestWrapPhase:
    """Tests for phase wrapping."""

    def test_range(self) -> None:
        """Test phases land in (-pi, pi]."""
        assert wrap_phase(3.0 * math.pi) == pytest.approx(math.pi)
        assert wrap_phase(-math.pi) == pytest.approx(math.pi)
        assert wrap_phase(0.5 + 2.0 * math.pi) == pytest.approx(0.5)


class TestBiharmonicSpec:
    """Tests for the drive model."""

    def test_defaults(self) -> None:
        """Test the default drive is the cos-cos optimum at alpha = 1."""
        spec = BiharmonicSpec()
        assert spec.family is DriveFamily.COS_COS
        assert spec.zeta == pytest.approx(2.0 / 3.0)
        assert spec.first_harmonic == pytest.approx(2.0 / 3.0)
        assert spec.second_harmonic == pytest.approx(1.0 / 3.0)
        assert spec.period == pytest.approx(2.0 * math.pi)

    def test_theta_wrapped(self) -> None:
        """Test theta is stored wrapped."""
        assert BiharmonicSpec(theta=-math.pi).theta == pytest.approx(math.pi)

    @pytest.mark.parametrize(
        "changes",
        [{"zeta": 1.5}, {"zeta": -0.1}, {"alpha": 0.0}, {"omega": 0.0}, {"amplitude": -1.0}],
    )
    def test_invalid_values(self, changes: dict) -> None:
        """Test out-of-range fields are rejected."""
        with pytest.raises(ValidationError):
            BiharmonicSpec(**changes)

    def test_replace_revalidates(self) -> None:
        """Test replace returns a validated copy."""
        spec = BiharmonicSpec()
        assert spec.replace(zeta=0.2).zeta == 0.2
        with pytest.raises(ValidationError):
            spec.replace(zeta=2.0)

    def test_frozen(self) -> None:
        """Test the drive is immutable."""
        spec = BiharmonicSpec()
        with pytest.raises(ValidationError):
            spec.zeta = 0.1  # type: ignore[misc]


class TestJunctionModels:
    """Tests for junction settings."""

    def test_defaults(self) -> None:
        """Test default control and config values."""
        control = SimControl()
        assert control.dt == pytest.approx(0.01)
        assert control.scan_phases == pytest.approx((0.0, math.pi / 2, math.pi))
        assert JunctionConfig().i_dc == 0.0

    def test_invalid_control(self) -> None:
        """Test non-positive steps and empty phase scans are rejected."""
        with pytest.raises(ValidationError):
            SimControl(dt=0.0)
        with pytest.raises(ValidationError):
            SimControl(scan_phases=())
        with pytest.raises(ValidationError):
            SimControl(average_periods=0)


class TestNoiseModels:
    """Tests for the noise models."""

    def test_from_total(self) -> None:
        """Test the total amplitude split between the tones."""
        spec = DriveSpectrum.from_total(8.1, 0.6)
        assert spec.z1 == pytest.approx(4.86)
        assert spec.z2 == pytest.approx(1.62)

    def test_rejects_negative(self) -> None:
        """Test negative arguments and conductances are rejected."""
        with pytest.raises(ValidationError):
            DriveSpectrum(z1=-1.0)
        with pytest.raises(ValidationError):
            NoiseSetup(conductance=0.0)


class TestRunConfig:
    """Tests for CLI run configuration."""

    def test_resolve_defaults(self) -> None:
        """Test missing parameters take command defaults."""
        params = RunConfig(command=Command.NOISE_SWEEP).resolve()
        assert isinstance(params, NoiseSweepParameters)
        assert params.total == pytest.approx(8.1)
        assert params.zeta_grid == "0.01:0.99:490"

    def test_resolved_writes_all_parameters(self) -> None:
        """Test resolved() spells out every parameter."""
        resolved = RunConfig(command=Command.EFFICIENCY_MAP, parameters={"theta": 0.0}).resolved()
        assert resolved.parameters["mode"] == "closed-form"
        assert resolved.parameters["alpha_grid"] == "0.05:4:80"
        assert resolved.output_format is OutputFormat.CSV

    def test_unknown_parameter(self) -> None:
        """Test parameters foreign to the command are rejected by name."""
        config = RunConfig(command=Command.WAVEFORM, parameters={"q": 4})
        with pytest.raises(ValidationError, match="q"):
            config.resolve()

    def test_bad_grid_named(self) -> None:
        """Test a malformed grid names its parameter."""
        config = RunConfig(command=Command.NOISE_SWEEP, parameters={"zeta_grid": "0:1"})
        with pytest.raises(ValidationError, match="zeta_grid"):
            config.resolve()

    def test_noise_grid_must_exclude_endpoints(self) -> None:
        """Test the noise zeta grid lies inside (0, 1)."""
        config = RunConfig(command=Command.NOISE_SWEEP, parameters={"zeta_grid": "0:0.9:10"})
        with pytest.raises(ValidationError):
            config.resolve()

    def test_alpha_grid_positive(self) -> None:
        """Test the prefactor grid must be positive."""
        with pytest.raises(ValidationError):
            EfficiencyMapParameters(alpha_grid="0:2:5")

    def test_channel_ratio(self) -> None:
        """Test the amplitude ratio and mode of a channel scan."""
        params = ChannelScanParameters(i0=1.0, ic=2.0)
        assert params.amplitude_ratio == pytest.approx(0.5)
        assert params.mode is MapMode.CLOSED_FORM
        assert params.theta == pytest.approx(math.pi / 2)
