"""Photon-assisted shot noise of a biharmonically driven tunnel junction.

Low-temperature limit, in units hbar = e = 1. A drive
V_ac1 cos(wt) + V_ac2 cos(2wt + phi) dresses the tunnelling electrons with
the phase factor exp(-i Phi(t)), Phi(t) = z1 sin(wt) + z2 sin(2wt + phi),
z1 = eV_ac1/w and z2 = eV_ac2/(2w). Its Fourier coefficients

    a_n = sum_m J_{n-2m}(z1) J_m(z2) exp(-i m phi)

(coefficient of exp(-i n w t)) weight the photon sidebands of the noise.
Noise powers are returned in units of G F w.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy import special

from ratchet_junction.core.constants import (
    MAX_BESSEL_ARGUMENT,
    MAX_BESSEL_ORDER,
    MAX_TRUNCATION_ORDER,
    ORACLE_MIN_SAMPLES,
    TAIL_TOLERANCE,
    TRUNCATION_MARGIN,
)
from ratchet_junction.core.exceptions import ConvergenceError, DomainError, RatchetError
from ratchet_junction.core.sweeps import parallel_map, refine_extremum, require_increasing
from ratchet_junction.models.noise import DriveSpectrum, NoiseSetup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhotonCoefficients:
    """Truncated photon coefficients a_n, n in [-n_max, n_max]."""

    values: NDArray[np.complex128]
    n_max: int
    tail_mass: float

    @property
    def orders(self) -> NDArray[np.int64]:
        """Photon numbers n aligned with ``values``."""
        return np.arange(-self.n_max, self.n_max + 1)

    @property
    def weights(self) -> NDArray[np.float64]:
        """Sideband weights |a_n|^2."""
        return np.abs(self.values) ** 2

    def coefficient(self, n: int) -> complex:
        """a_n, zero outside the stored range."""
        if abs(n) > self.n_max:
            return 0j
        return complex(self.values[n + self.n_max])


@dataclass(frozen=True)
class NoiseSweepResult:
    """Noise power and excess noise along a zeta sweep."""

    zeta: NDArray[np.float64]
    noise: NDArray[np.float64]
    excess: NDArray[np.float64]
    argmin_noise: float
    argmin_excess: float
    q: float
    excess_order: int
    failures: int = 0

    @property
    def q_rounded(self) -> bool:
        """True if the excess noise was evaluated at round(q) != q."""
        return float(self.excess_order) != self.q


def bessel_j(n: int, z: float) -> float:
    """Bessel function of the first kind J_n(z) for integer order.

    Args:
        n: Integer order, |n| <= 10^4.
        z: Argument, 0 <= z <= 10^3.

    Returns:
        J_n(z); negative orders follow J_{-n} = (-1)^n J_n.

    Raises:
        DomainError: If n or z is out of range.
    """
    if int(n) != n or abs(n) > MAX_BESSEL_ORDER:
        raise DomainError(f"order must be an integer with |n| <= {MAX_BESSEL_ORDER}, got {n}")
    if not 0.0 <= z <= MAX_BESSEL_ARGUMENT:
        raise DomainError(f"argument must lie in [0, {MAX_BESSEL_ARGUMENT:g}], got {z}")
    return float(special.jv(int(n), z))


def _check_spectrum(spec: DriveSpectrum) -> None:
    for name, value in (("z1", spec.z1), ("z2", spec.z2)):
        if value > MAX_BESSEL_ARGUMENT:
            raise DomainError(f"{name} must be <= {MAX_BESSEL_ARGUMENT:g}, got {value}")


def initial_truncation(spec: DriveSpectrum) -> int:
    """Starting order ceil(z1 + 2 z2) + 20."""
    return math.ceil(spec.z1 + 2.0 * spec.z2) + TRUNCATION_MARGIN


def _bessel_sum(spec: DriveSpectrum, n_max: int) -> NDArray[np.complex128]:
    orders = np.arange(-n_max, n_max + 1)
    m_max = math.ceil(spec.z2 + 10.0 * np.cbrt(spec.z2)) + TRUNCATION_MARGIN
    values = np.zeros(orders.size, dtype=np.complex128)
    for m in range(-m_max, m_max + 1):
        weight = special.jv(m, spec.z2)
        if weight == 0.0:
            continue
        values += special.jv(orders - 2 * m, spec.z1) * (weight * np.exp(-1j * m * spec.phi))
    return values


def _tail(values: NDArray[np.complex128]) -> float:
    return float(1.0 - np.sum(np.abs(values) ** 2))


def photon_coefficients(
    spec: DriveSpectrum,
    n_max: int | None = None,
    tail_tolerance: float = TAIL_TOLERANCE,
) -> PhotonCoefficients:
    """Photon coefficients from the Bessel double sum.

    The truncation order starts at ``n_max`` (or ceil(z1 + 2 z2) + 20) and
    doubles until 1 - sum |a_n|^2 <= ``tail_tolerance``.

    Raises:
        ConvergenceError: If the order passes 10^4 before the tail is small.
    """
    _check_spectrum(spec)
    order = n_max if n_max is not None else initial_truncation(spec)
    if order < 0:
        raise DomainError(f"n_max must be >= 0, got {order}")
    while True:
        values = _bessel_sum(spec, order)
        tail = _tail(values)
        if abs(tail) <= tail_tolerance:
            return PhotonCoefficients(values=values, n_max=order, tail_mass=tail)
        if order >= MAX_TRUNCATION_ORDER:
            raise ConvergenceError(
                f"tail mass {tail:.3e} above {tail_tolerance:.1e} at n_max={order}"
            )
        logger.debug(f"Tail mass {tail:.3e} at n_max={order}; doubling")
        order = min(max(2 * order, 1), MAX_TRUNCATION_ORDER)


def photon_coefficients_oracle(
    spec: DriveSpectrum, n_max: int | None = None
) -> PhotonCoefficients:
    """Photon coefficients by FFT of exp(-i Phi) over one period.

    Independent of the Bessel sum; samples are a power of two, at least 2^12
    and at least eight per stored order.
    """
    _check_spectrum(spec)
    order = n_max if n_max is not None else initial_truncation(spec)
    samples = max(ORACLE_MIN_SAMPLES, 1 << math.ceil(math.log2(8 * (order + 1))))
    bandwidth = spec.z1 + 2.0 * spec.z2
    if samples < 4.0 * bandwidth:
        logger.warning(f"Oracle with {samples} samples may under-resolve bandwidth {bandwidth:.3g}")

    x = 2.0 * np.pi * np.arange(samples) / samples
    phase = spec.z1 * np.sin(x) + spec.z2 * np.sin(2.0 * x + spec.phi)
    spectrum = np.fft.ifft(np.exp(-1j * phase))
    orders = np.arange(-order, order + 1)
    values = spectrum[orders % samples]
    return PhotonCoefficients(values=values, n_max=order, tail_mass=_tail(values))


def noise_power(coeffs: PhotonCoefficients, setup: NoiseSetup) -> float:
    """Noise power S = G F sum_n |q + n| |a_n|^2 (units of G F w)."""
    total = np.sum(np.abs(setup.q + coeffs.orders) * coeffs.weights)
    return float(setup.conductance * setup.fano * total)


def excess_noise(coeffs: PhotonCoefficients, n_bias: int, setup: NoiseSetup | None = None) -> float:
    """Excess noise at integer bias N (units of G F w).

    For N >= 0, S_ac = 2 G F sum_{n>=1} n |a_{-N-n}|^2; for N < 0 the
    sideband index is -N + n. At q = N the noise power equals |N| + S_ac.

    Raises:
        DomainError: If N is not an integer.
    """
    if int(n_bias) != n_bias:
        raise DomainError(f"excess noise needs an integer bias, got {n_bias}")
    n_bias = int(n_bias)
    scale = 1.0 if setup is None else setup.conductance * setup.fano
    n = np.arange(1, coeffs.n_max + abs(n_bias) + 1)
    index = -n_bias - n if n_bias >= 0 else -n_bias + n
    inside = np.abs(index) <= coeffs.n_max
    weights = np.zeros(n.size)
    weights[inside] = coeffs.weights[index[inside] + coeffs.n_max]
    return float(2.0 * scale * np.sum(n * weights))


def harmonic_noise_difference(spec: DriveSpectrum, n_bias: int) -> float:
    """Excess noise of the two-tone drive minus that of its fundamental alone."""
    biharmonic = excess_noise(photon_coefficients(spec), n_bias)
    single = excess_noise(photon_coefficients(DriveSpectrum(z1=spec.z1)), n_bias)
    return biharmonic - single


def optimal_noise_phase(q: float) -> float:
    """Relative phase minimizing the noise: 0 for positive dc bias, pi for negative.

    Raises:
        DomainError: At zero bias, where neither phase is preferred.
    """
    if q > 0.0:
        return 0.0
    if q < 0.0:
        return math.pi
    raise DomainError("no preferred phase at zero dc bias")


def noise_sweep(
    total: float,
    q: float,
    phi: float,
    zeta_grid: NDArray[np.float64],
    *,
    conductance: float = 1.0,
    fano: float = 1.0,
    tail_tolerance: float = TAIL_TOLERANCE,
    n_jobs: int = 1,
) -> NoiseSweepResult:
    """Noise power and excess noise against zeta at fixed V_ac = V_ac1 + V_ac2.

    Each point uses z1 = zeta total and z2 = (1 - zeta) total / 2. The noise
    power uses q as given; the excess noise uses N = round(q).

    Returns:
        NoiseSweepResult with parabolic-refined minima of both curves.
    """
    if not total > 0.0:
        raise DomainError(f"total amplitude must be > 0, got {total}")
    require_increasing(zeta_grid, "zeta grid")
    if zeta_grid[0] <= 0.0 or zeta_grid[-1] >= 1.0:
        raise DomainError("zeta grid must lie in (0, 1)")

    setup = NoiseSetup(q=q, conductance=conductance, fano=fano)
    n_bias = round(q)
    if n_bias != q:
        logger.info(f"Excess noise evaluated at N={n_bias} (q={q})")

    def point(zeta: float) -> tuple[float, float]:
        try:
            coeffs = photon_coefficients(
                DriveSpectrum.from_total(total, zeta, phi), tail_tolerance=tail_tolerance
            )
        except RatchetError as e:
            logger.debug(f"Masked zeta={zeta}: {e}")
            return math.nan, math.nan
        return noise_power(coeffs, setup), excess_noise(coeffs, n_bias, setup)

    results = parallel_map(point, [float(z) for z in zeta_grid], n_jobs)
    noise = np.array([r[0] for r in results])
    excess = np.array([r[1] for r in results])
    failures = int(np.count_nonzero(np.isnan(noise)))
    if failures:
        logger.warning(f"Noise sweep: {failures} masked points")

    return NoiseSweepResult(
        zeta=zeta_grid,
        noise=noise,
        excess=excess,
        argmin_noise=refine_extremum(zeta_grid, noise, "min"),
        argmin_excess=refine_extremum(zeta_grid, excess, "min"),
        q=q,
        excess_order=n_bias,
        failures=failures,
    )
