"""Tests for photon-assisted shot noise."""

import math

import numpy as np
import pytest

from ratchet_junction.core import shotnoise
from ratchet_junction.core.exceptions import ConvergenceError, DomainError
from ratchet_junction.models import DriveSpectrum, NoiseSetup


class TestBessel:
    """Tests for the integer-order Bessel function."""

    def test_known_values(self) -> None:
        """Test J_0(0) = 1 and J_1(0) = 0."""
        assert shotnoise.bessel_j(0, 0.0) == 1.0
        assert shotnoise.bessel_j(1, 0.0) == 0.0

    def test_negative_order(self) -> None:
        """Test J_{-n} = (-1)^n J_n."""
        for n in (1, 2, 5):
            assert shotnoise.bessel_j(-n, 3.3) == pytest.approx((-1) ** n * shotnoise.bessel_j(n, 3.3))

    def test_range_checks(self) -> None:
        """Test order and argument limits."""
        with pytest.raises(DomainError):
            shotnoise.bessel_j(20_000, 1.0)
        with pytest.raises(DomainError):
            shotnoise.bessel_j(1, -0.5)
        with pytest.raises(DomainError):
            shotnoise.bessel_j(1, 2000.0)


class TestPhotonCoefficients:
    """Tests for the photon coefficients."""

    @pytest.mark.parametrize(
        "spec",
        [
            DriveSpectrum(z1=2.0, z2=1.5, phi=0.0),
            DriveSpectrum(z1=5.5, z2=1.3, phi=0.8),
            DriveSpectrum(z1=0.4, z2=3.0, phi=-2.1),
        ],
    )
    def test_matches_fft(self, spec: DriveSpectrum) -> None:
        """Test the Bessel sum agrees with the FFT of exp(-i Phi)."""
        coeffs = shotnoise.photon_coefficients(spec)
        oracle = shotnoise.photon_coefficients_oracle(spec, coeffs.n_max)
        np.testing.assert_allclose(coeffs.values, oracle.values, atol=1e-12)

    def test_matches_fft_random_spectra(self) -> None:
        """Test the Bessel sum agrees with the FFT over seeded random drives."""
        rng = np.random.default_rng(20240611)
        for _ in range(50):
            z1, z2 = rng.uniform(0.0, 10.0, size=2)
            spec = DriveSpectrum(z1=float(z1), z2=float(z2), phi=float(rng.uniform(-math.pi, math.pi)))
            coeffs = shotnoise.photon_coefficients(spec)
            oracle = shotnoise.photon_coefficients_oracle(spec, coeffs.n_max)
            np.testing.assert_allclose(coeffs.values, oracle.values, atol=1e-12)

    def test_normalization(self) -> None:
        """Test sum |a_n|^2 = 1 within the tail tolerance."""
        coeffs = shotnoise.photon_coefficients(DriveSpectrum(z1=6.0, z2=2.0, phi=0.4))
        assert float(np.sum(coeffs.weights)) == pytest.approx(1.0, abs=1e-12)
        assert abs(coeffs.tail_mass) <= 1e-12

    def test_zero_mean_photon_number(self) -> None:
        """Test sum n |a_n|^2 vanishes."""
        coeffs = shotnoise.photon_coefficients(DriveSpectrum(z1=3.0, z2=2.2, phi=1.1))
        assert float(np.sum(coeffs.orders * coeffs.weights)) == pytest.approx(0.0, abs=1e-12)

    def test_single_tone(self) -> None:
        """Test a single tone reduces to J_n(z1)."""
        coeffs = shotnoise.photon_coefficients(DriveSpectrum(z1=2.5))
        for n in (-3, 0, 2):
            assert coeffs.coefficient(n).real == pytest.approx(shotnoise.bessel_j(n, 2.5), abs=1e-14)
        assert coeffs.coefficient(coeffs.n_max + 1) == 0j

    def test_undriven(self) -> None:
        """Test no drive leaves all weight in n = 0."""
        coeffs = shotnoise.photon_coefficients(DriveSpectrum())
        assert coeffs.coefficient(0) == pytest.approx(1.0)
        assert float(np.sum(coeffs.weights)) == pytest.approx(1.0)

    def test_phase_reversal(self) -> None:
        """Test a_n(phi + pi) = (-1)^n conj(a_{-n}(phi))."""
        spec = DriveSpectrum(z1=3.0, z2=1.0, phi=0.5)
        flipped = DriveSpectrum(z1=3.0, z2=1.0, phi=0.5 + math.pi)
        a = shotnoise.photon_coefficients(spec, n_max=40)
        b = shotnoise.photon_coefficients(flipped, n_max=40)
        for n in range(-10, 11):
            assert b.coefficient(n) == pytest.approx((-1) ** n * a.coefficient(-n).conjugate(), abs=1e-13)

    def test_truncation_cap(self) -> None:
        """Test an unreachable tail tolerance fails to converge."""
        with pytest.raises(ConvergenceError):
            shotnoise.photon_coefficients(DriveSpectrum(z1=1.0), tail_tolerance=-1.0)

    def test_initial_truncation(self) -> None:
        """Test the starting order ceil(z1 + 2 z2) + 20."""
        assert shotnoise.initial_truncation(DriveSpectrum(z1=2.2, z2=1.0)) == 25

    def test_oversized_argument(self) -> None:
        """Test arguments beyond the Bessel range are rejected."""
        with pytest.raises(DomainError):
            shotnoise.photon_coefficients(DriveSpectrum(z1=1500.0))


class TestNoisePower:
    """Tests for noise power and excess noise."""

    def test_undriven_noise(self) -> None:
        """Test S = G F |q| without drive."""
        coeffs = shotnoise.photon_coefficients(DriveSpectrum())
        setup = NoiseSetup(q=2.5, conductance=2.0, fano=0.5)
        assert shotnoise.noise_power(coeffs, setup) == pytest.approx(2.5)

    @pytest.mark.parametrize("n_bias", [-3, 0, 2, 4])
    def test_noise_splits_at_integer_bias(self, n_bias: int) -> None:
        """Test S(q = N) = |N| + S_ac."""
        coeffs = shotnoise.photon_coefficients(DriveSpectrum.from_total(8.1, 0.6))
        noise = shotnoise.noise_power(coeffs, NoiseSetup(q=float(n_bias)))
        assert noise == pytest.approx(abs(n_bias) + shotnoise.excess_noise(coeffs, n_bias), abs=1e-10)

    def test_reversal_symmetry(self) -> None:
        """Test S(-q, phi + pi) = S(q, phi)."""
        a = shotnoise.photon_coefficients(DriveSpectrum(z1=4.0, z2=2.0, phi=0.3))
        b = shotnoise.photon_coefficients(DriveSpectrum(z1=4.0, z2=2.0, phi=0.3 + math.pi))
        for q in (0.5, 3.0, 4.7):
            assert shotnoise.noise_power(b, NoiseSetup(q=-q)) == pytest.approx(
                shotnoise.noise_power(a, NoiseSetup(q=q)), abs=1e-10
            )

    def test_excess_noise_non_negative(self) -> None:
        """Test the excess noise is never negative."""
        coeffs = shotnoise.photon_coefficients(DriveSpectrum(z1=1.0, z2=0.5))
        assert shotnoise.excess_noise(coeffs, 1) >= 0.0

    def test_excess_noise_needs_integer(self) -> None:
        """Test a fractional bias is rejected."""
        coeffs = shotnoise.photon_coefficients(DriveSpectrum(z1=1.0))
        with pytest.raises(DomainError):
            shotnoise.excess_noise(coeffs, 1.5)  # type: ignore[arg-type]

    def test_harmonic_difference_vanishes_without_second_tone(self) -> None:
        """Test the difference is zero when z2 = 0."""
        assert shotnoise.harmonic_noise_difference(DriveSpectrum(z1=3.0), 2) == pytest.approx(0.0, abs=1e-12)

    def test_optimal_noise_phase(self) -> None:
        """Test 0 for positive bias and pi for negative."""
        assert shotnoise.optimal_noise_phase(4.0) == 0.0
        assert shotnoise.optimal_noise_phase(-1.0) == pytest.approx(math.pi)
        with pytest.raises(DomainError):
            shotnoise.optimal_noise_phase(0.0)


class TestNoiseSweep:
    """Tests for the zeta sweep."""

    def test_reference_minimum(self) -> None:
        """Test the noise minimum near zeta = 0.6858 at q = 4, total 8.1."""
        zeta = np.linspace(0.01, 0.99, 490)
        result = shotnoise.noise_sweep(8.1, 4.0, 0.0, zeta)
        assert result.failures == 0
        assert result.argmin_noise == pytest.approx(0.6858, abs=2e-3)
        assert result.argmin_excess == pytest.approx(result.argmin_noise, abs=1e-6)
        assert result.q_rounded is False

    def test_fractional_q_rounds_excess(self) -> None:
        """Test the excess noise uses N = round(q)."""
        result = shotnoise.noise_sweep(4.0, 1.4, 0.0, np.linspace(0.2, 0.8, 5))
        assert result.excess_order == 1
        assert result.q_rounded is True

    def test_threaded_matches_serial(self) -> None:
        """Test worker threads give the same curve."""
        zeta = np.linspace(0.1, 0.9, 9)
        serial = shotnoise.noise_sweep(5.0, 2.0, 0.0, zeta)
        threaded = shotnoise.noise_sweep(5.0, 2.0, 0.0, zeta, n_jobs=2)
        np.testing.assert_array_equal(serial.noise, threaded.noise)

    def test_grid_outside_unit_interval(self) -> None:
        """Test zeta must stay inside (0, 1)."""
        with pytest.raises(DomainError):
            shotnoise.noise_sweep(8.1, 4.0, 0.0, np.array([0.0, 0.5]))

    def test_non_positive_total(self) -> None:
        """Test the total amplitude must be positive."""
        with pytest.raises(DomainError):
            shotnoise.noise_sweep(0.0, 4.0, 0.0, np.array([0.5]))

    def test_reversed_bias_and_phase_same_minimum(self) -> None:
        """Test q = -4 at phi = pi has the same minimum as q = 4 at phi = 0."""
        zeta = np.linspace(0.01, 0.99, 490)
        forward = shotnoise.noise_sweep(8.1, 4.0, 0.0, zeta)
        reversed_ = shotnoise.noise_sweep(8.1, -4.0, math.pi, zeta)
        assert reversed_.argmin_noise == pytest.approx(forward.argmin_noise, abs=1e-6)
        np.testing.assert_allclose(reversed_.noise, forward.noise, atol=1e-10)

    def test_quadrature_phase_is_noisier(self) -> None:
        """Test the lowest noise at phi = pi/2 stays above the lowest at phi = 0."""
        zeta = np.linspace(0.01, 0.99, 99)
        optimal = shotnoise.noise_sweep(8.1, 4.0, shotnoise.optimal_noise_phase(4.0), zeta)
        quadrature = shotnoise.noise_sweep(8.1, 4.0, math.pi / 2, zeta)
        assert float(np.nanmin(quadrature.noise)) > float(np.nanmin(optimal.noise))
