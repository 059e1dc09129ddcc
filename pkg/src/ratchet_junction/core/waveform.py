"""Exact algebra of the biharmonic drive.

All extremum and load-term algebra is done at unit amplitude; results that
depend on scale are multiplied by ``spec.amplitude`` at the end. With
beta = alpha (1 - zeta), the cos-cos drive at theta = 0 is the quadratic
zeta c + beta (2c^2 - 1) in c = cos(omega t). It has

    M = zeta + beta
    m = -zeta^2/(8 beta) - beta    for zeta < 4 alpha/(1 + 4 alpha)   (interior)
    m = -zeta + beta               otherwise                          (endpoint)

The sin-sin drive at theta = pi/2 is the same quadratic reflected, giving
M_ss = -m_cc and m_ss = -M_cc. The phases theta = pi (cos-cos) and
theta = -pi/2 (sin-sin) are half-period-shifted negatives of the above,
so their extrema are (-m, -M) and their load term is -D.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import overload

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import integrate, optimize

from ratchet_junction.core.constants import (
    CANONICAL_PHASE_TOLERANCE,
    EXTREMA_MAX_CANDIDATES,
    EXTREMA_SCAN_POINTS,
    EXTREMA_XATOL,
    DcSign,
    Direction,
    DriveFamily,
    ExtremumBranch,
    TransportIntent,
)
from ratchet_junction.core.exceptions import (
    BranchSelectionError,
    DegenerateWaveformError,
    DomainError,
)
from ratchet_junction.models.drive import BiharmonicSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WaveformExtrema:
    """Maximum, minimum and load term of a drive over one period."""

    maximum: float
    minimum: float
    load_term: float
    branch: ExtremumBranch

    @property
    def span(self) -> float:
        """Peak-to-peak value M - m."""
        return self.maximum - self.minimum


@dataclass(frozen=True)
class PhaseChoice:
    """An optimal phase and the transport direction it produces."""

    theta: float
    transport: Direction
    intent: TransportIntent | None = None


def _harmonic(family: DriveFamily) -> Callable[[NDArray[np.float64]], NDArray[np.float64]]:
    return np.cos if family is DriveFamily.COS_COS else np.sin


def _unit_profile(spec: BiharmonicSpec, phase: ArrayLike) -> NDArray[np.float64]:
    """Unit-amplitude drive as a function of the phase omega t."""
    h = _harmonic(spec.family)
    x = np.asarray(phase, dtype=float)
    return spec.zeta * h(x) + spec.alpha * (1.0 - spec.zeta) * h(2.0 * x + spec.theta)


@overload
def evaluate(spec: BiharmonicSpec, t: float) -> float: ...
@overload
def evaluate(spec: BiharmonicSpec, t: NDArray[np.float64]) -> NDArray[np.float64]: ...
def evaluate(spec: BiharmonicSpec, t: float | NDArray[np.float64]) -> float | NDArray[np.float64]:
    """Evaluate the drive.

    Args:
        spec: Drive description.
        t: Time (scalar or array); the drive phase is ``spec.omega * t``.

    Returns:
        amplitude * [zeta h(omega t) + alpha (1 - zeta) h(2 omega t + theta)].
    """
    value = spec.amplitude * _unit_profile(spec, spec.omega * np.asarray(t, dtype=float))
    if np.ndim(value) == 0:
        return float(value)
    return value


def branch_point(alpha: float) -> float:
    """Relative amplitude 4 alpha/(1 + 4 alpha) where the minimum changes branch."""
    return 4.0 * alpha / (1.0 + 4.0 * alpha)


def interior_minimum(zeta: float, alpha: float) -> float:
    """Cos-cos minimum from the stationary point cos(omega t) = -zeta/(4 beta)."""
    beta = alpha * (1.0 - zeta)
    return -(zeta**2) / (8.0 * beta) - beta


def endpoint_minimum(zeta: float, alpha: float) -> float:
    """Cos-cos minimum at cos(omega t) = -1."""
    return -zeta + alpha * (1.0 - zeta)


def _check_closed_form_args(zeta: float, alpha: float) -> None:
    if math.isnan(zeta) or math.isnan(alpha):
        raise BranchSelectionError(f"no branch for zeta={zeta}, alpha={alpha}")
    if not 0.0 <= zeta <= 1.0:
        raise DomainError(f"zeta must lie in [0, 1], got {zeta}")
    if not alpha > 0.0 or math.isinf(alpha):
        raise DomainError(f"alpha must be a positive finite number, got {alpha}")


def _load_term(maximum: float, minimum: float) -> float:
    span = maximum - minimum
    if not span > 0.0:
        return math.nan
    return (maximum + minimum) / (2.0 * span)


def closed_form_extrema(family: DriveFamily, zeta: float, alpha: float) -> WaveformExtrema:
    """Closed-form extrema at the family's base phase and unit amplitude.

    The base phase is theta = 0 for cos-cos and theta = pi/2 for sin-sin.
    At the branch point both minimum formulas agree; ties go to the
    endpoint branch, which also covers zeta = 1 where the interior formula
    divides by zero.

    Args:
        family: Drive family.
        zeta: Relative amplitude in [0, 1].
        alpha: Second-harmonic prefactor, > 0.

    Returns:
        WaveformExtrema with the branch that produced the cos-cos minimum.

    Raises:
        DomainError: If zeta or alpha is out of range.
        BranchSelectionError: If no branch matches (NaN input).
    """
    _check_closed_form_args(zeta, alpha)
    threshold = branch_point(alpha)
    maximum = zeta + alpha * (1.0 - zeta)
    if zeta < threshold:
        minimum = interior_minimum(zeta, alpha)
        branch = ExtremumBranch.INTERIOR
    elif zeta >= threshold:
        minimum = endpoint_minimum(zeta, alpha)
        branch = ExtremumBranch.ENDPOINT
    else:
        raise BranchSelectionError(f"no branch for zeta={zeta}, alpha={alpha}")

    if family is DriveFamily.SIN_SIN:
        maximum, minimum = -minimum, -maximum
    return WaveformExtrema(
        maximum=maximum,
        minimum=minimum,
        load_term=_load_term(maximum, minimum),
        branch=branch,
    )


def canonical_phase(family: DriveFamily, theta: float) -> int | None:
    """Classify theta against the family's optimal phases.

    Returns:
        +1 for the base phase (0 for cos-cos, pi/2 for sin-sin), -1 for its
        mirror (pi for cos-cos, -pi/2 for sin-sin), None otherwise.
    """
    base = 0.0 if family is DriveFamily.COS_COS else math.pi / 2
    distance_to_base = abs(math.remainder(theta - base, 2.0 * math.pi))
    if distance_to_base <= CANONICAL_PHASE_TOLERANCE:
        return 1
    if abs(distance_to_base - math.pi) <= CANONICAL_PHASE_TOLERANCE:
        return -1
    return None


def canonical_extrema(
    family: DriveFamily, alpha: float, theta: float, zeta: float
) -> WaveformExtrema:
    """Closed-form unit-amplitude extrema at any of the family's optimal phases.

    Raises:
        DomainError: If theta is not an optimal phase of the family.
    """
    orientation = canonical_phase(family, theta)
    if orientation is None:
        raise DomainError(
            f"closed forms need theta in the optimal set of {family.value}, got {theta}"
        )
    base = closed_form_extrema(family, zeta, alpha)
    if orientation == 1:
        return base
    return WaveformExtrema(
        maximum=-base.minimum,
        minimum=-base.maximum,
        load_term=-base.load_term,
        branch=base.branch,
    )


def numerical_extrema(
    spec: BiharmonicSpec, points: int = EXTREMA_SCAN_POINTS
) -> WaveformExtrema:
    """Extrema of the drive at any theta by dense scan plus bounded refinement.

    One period is sampled on ``points`` uniform phases; each local
    extremum of the samples is polished with a bounded Brent search
    (absolute tolerance 1e-12) inside its neighbouring samples.

    Args:
        spec: Drive description; theta need not be canonical.
        points: Scan resolution.

    Returns:
        WaveformExtrema scaled by ``spec.amplitude``. The load term is NaN
        for a flat (zero-amplitude) drive.
    """
    step = 2.0 * math.pi / points
    phase = np.arange(points) * step
    samples = _unit_profile(spec, phase)

    def profile(x: float) -> float:
        return float(_unit_profile(spec, x))

    def polish(sign: float) -> float:
        y = sign * samples
        is_peak = (y >= np.roll(y, 1)) & (y >= np.roll(y, -1))
        candidates = np.flatnonzero(is_peak)
        if candidates.size > EXTREMA_MAX_CANDIDATES:
            candidates = candidates[np.argsort(y[candidates])[-EXTREMA_MAX_CANDIDATES:]]
        best = float(np.max(y))
        for i in candidates:
            centre = float(phase[i])
            result = optimize.minimize_scalar(
                lambda x: -sign * profile(x),
                bounds=(centre - step, centre + step),
                method="bounded",
                options={"xatol": EXTREMA_XATOL},
            )
            best = max(best, -float(result.fun))
        return sign * best

    unit_max = polish(1.0)
    unit_min = polish(-1.0)
    maximum = spec.amplitude * unit_max
    minimum = spec.amplitude * unit_min
    logger.debug(f"Numerical extrema for {spec.family.value} theta={spec.theta:.6g}: M={unit_max:.15g}, m={unit_min:.15g}")
    return WaveformExtrema(
        maximum=maximum,
        minimum=minimum,
        load_term=_load_term(maximum, minimum),
        branch=ExtremumBranch.NUMERICAL,
    )


def extrema(spec: BiharmonicSpec) -> WaveformExtrema:
    """Extrema of a drive: closed form at optimal phases, numerical otherwise.

    Returns:
        WaveformExtrema scaled by ``spec.amplitude``.
    """
    if canonical_phase(spec.family, spec.theta) is None:
        return numerical_extrema(spec)
    unit = canonical_extrema(spec.family, spec.alpha, spec.theta, spec.zeta)
    maximum = spec.amplitude * unit.maximum
    minimum = spec.amplitude * unit.minimum
    return WaveformExtrema(
        maximum=maximum,
        minimum=minimum,
        load_term=_load_term(maximum, minimum),
        branch=unit.branch,
    )


def load_term(family: DriveFamily, alpha: float, theta: float, zeta: float) -> float:
    """Load term D = (M + m)/(2(M - m)) at an optimal phase.

    Args:
        family: Drive family.
        alpha: Second-harmonic prefactor.
        theta: One of the family's optimal phases.
        zeta: Relative amplitude.

    Returns:
        Signed load term in (-1/2, 1/2).
    """
    return canonical_extrema(family, alpha, theta, zeta).load_term


def load_term_piecewise(alpha: float, zeta: float) -> float:
    """Explicit two-branch load term of the sin-sin drive at theta = pi/2.

    Both branches equal -1/8 at zeta = 4 alpha/(1 + 4 alpha).
    """
    _check_closed_form_args(zeta, alpha)
    if zeta < branch_point(alpha):
        return zeta * (8.0 * alpha * (zeta - 1.0) + zeta) / (
            2.0 * (-4.0 * alpha * (zeta - 1.0) + zeta) ** 2
        )
    return alpha * (zeta - 1.0) / (2.0 * zeta)


@dataclass(frozen=True)
class NormalizedWaveform:
    """Drive mapped affinely onto [-1/2, 1/2]: f* = f/(M - m) - D."""

    source: BiharmonicSpec
    extrema: WaveformExtrema

    @overload
    def __call__(self, t: float) -> float: ...
    @overload
    def __call__(self, t: NDArray[np.float64]) -> NDArray[np.float64]: ...
    def __call__(self, t: float | NDArray[np.float64]) -> float | NDArray[np.float64]:
        return evaluate(self.source, t) / self.extrema.span - self.extrema.load_term


def normalize(spec: BiharmonicSpec) -> NormalizedWaveform:
    """Normalize a drive to the image [-1/2, 1/2].

    Raises:
        DegenerateWaveformError: If the drive is flat (M = m).
    """
    found = extrema(spec)
    if not found.span > 0.0:
        raise DegenerateWaveformError(
            f"flat drive (amplitude={spec.amplitude}); normalization undefined"
        )
    return NormalizedWaveform(source=spec, extrema=found)


def _impulse_window(norm: NormalizedWaveform) -> tuple[float, float]:
    """Half period starting at an extremum of the fundamental."""
    spec = norm.source
    start = 0.0 if spec.family is DriveFamily.COS_COS else math.pi / 2
    return start / spec.omega, (start + math.pi) / spec.omega


def impulse(norm: NormalizedWaveform) -> float:
    """Impulse |integral of f*| over a half period, by adaptive quadrature.

    The window runs between consecutive zeros of the fundamental's
    antiderivative, so both harmonics integrate to zero and only the
    constant -D survives.
    """
    t0, t1 = _impulse_window(norm)
    value, abserr = integrate.quad(norm, t0, t1, epsabs=1e-13, epsrel=1e-13, limit=200)
    logger.debug(f"Impulse quadrature {value:.15g} (error estimate {abserr:.2e})")
    return abs(float(value))


def impulse_closed_form(norm: NormalizedWaveform) -> float:
    """Impulse from the load term: pi |D| / omega."""
    return math.pi * abs(norm.extrema.load_term) / norm.source.omega


def optimal_zeta(alpha: float) -> float:
    """Relative amplitude 2 alpha/(1 + 2 alpha) maximizing the ratchet effect.

    At this value the fundamental amplitude is twice the second-harmonic one.

    Raises:
        DomainError: If alpha <= 0.
    """
    if not alpha > 0.0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    if math.isinf(alpha):
        return 1.0
    return 2.0 * alpha / (1.0 + 2.0 * alpha)


def _transport(family: DriveFamily, theta: float) -> Direction:
    orientation = canonical_phase(family, theta)
    # Base cos-cos phase has D > 0; base sin-sin phase has D < 0
    base_positive = family is DriveFamily.COS_COS
    positive = base_positive if orientation == 1 else not base_positive
    return Direction.POSITIVE if positive else Direction.NEGATIVE


def optimal_phases(family: DriveFamily, dc_sign: DcSign = DcSign.ZERO) -> tuple[PhaseChoice, ...]:
    """Optimal relative phases of a family, labelled by transport direction.

    Without a dc term both phases are optimal. With a dc term each phase is
    also labelled as driving transport along or against it.

    Args:
        family: Drive family.
        dc_sign: Sign of the dc term.

    Returns:
        Two PhaseChoice entries: (0, pi) for cos-cos, (pi/2, -pi/2) for sin-sin.
    """
    thetas = (0.0, math.pi) if family is DriveFamily.COS_COS else (math.pi / 2, -math.pi / 2)
    choices = []
    for theta in thetas:
        transport = _transport(family, theta)
        intent = None
        if dc_sign is not DcSign.ZERO:
            along = (transport is Direction.POSITIVE) == (dc_sign is DcSign.POSITIVE)
            intent = TransportIntent.ALONG_DC if along else TransportIntent.AGAINST_DC
        choices.append(PhaseChoice(theta=theta, transport=transport, intent=intent))
    return tuple(choices)


def select_phase(family: DriveFamily, dc_sign: DcSign, intent: TransportIntent) -> float:
    """Pick the optimal phase moving transport along or against a nonzero dc term.

    Raises:
        DomainError: If ``dc_sign`` is zero.
    """
    if dc_sign is DcSign.ZERO:
        raise DomainError("transport intent needs a nonzero dc term")
    for choice in optimal_phases(family, dc_sign):
        if choice.intent is intent:
            return choice.theta
    raise DomainError(f"no phase for {family.value} with intent {intent.value}")  # pragma: no cover


def efficiency_estimate_perturbative(
    i1: float, i2: float, ic: float, omega_ratio: float, theta: float
) -> float:
    """Fast-driving perturbative efficiency 3 I1^2 I2 |cos theta| / (32 I_c^3 (w/w_c)^4).

    Its amplitude dependence disagrees with the universal scaling; kept for
    comparison.

    Raises:
        DomainError: If I_c or omega/omega_c is not positive, or an amplitude is negative.
    """
    if not ic > 0.0:
        raise DomainError(f"critical current must be > 0, got {ic}")
    if not omega_ratio > 0.0:
        raise DomainError(f"omega/omega_c must be > 0, got {omega_ratio}")
    if i1 < 0.0 or i2 < 0.0:
        raise DomainError(f"harmonic amplitudes must be >= 0, got I1={i1}, I2={i2}")
    return 3.0 * i1**2 * i2 / (32.0 * ic**3 * omega_ratio**4) * abs(math.cos(theta))


def efficiency_scaling_ru(alpha: float, zeta: float, prefactor: float = 1.0) -> float:
    """Universal scaling C alpha zeta^2 (1 - zeta); maximal at zeta = 2/3 for every alpha."""
    return prefactor * alpha * zeta**2 * (1.0 - zeta)


def waveform_diode_efficiency(
    family: DriveFamily, alpha: float, theta: float, zeta: float
) -> float:
    """Waveform diode efficiency eta_ac = 2 D (signed)."""
    return 2.0 * load_term(family, alpha, theta, zeta)


def universal_waveform(
    sign: int = 1, *, family: DriveFamily = DriveFamily.COS_COS, omega: float = 1.0
) -> BiharmonicSpec:
    """Two-harmonic optimal waveform cos(wt) +/- cos(2wt)/2 or sin(wt) +/- cos(2wt)/2.

    Args:
        sign: +1 or -1, the sign of the second harmonic.
        family: cos-cos for the cosine fundamental, sin-sin for the sine one.
        omega: Angular frequency.

    Returns:
        Drive with zeta = 2/3, alpha = 1 and amplitude 3/2.
    """
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    if family is DriveFamily.COS_COS:
        theta = 0.0 if sign == 1 else math.pi
    else:
        theta = math.pi / 2 if sign == 1 else -math.pi / 2
    return BiharmonicSpec(
        family=family, zeta=2.0 / 3.0, alpha=1.0, theta=theta, amplitude=1.5, omega=omega
    )
