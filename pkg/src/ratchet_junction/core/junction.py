"""Overdamped RCSJ junction under biharmonic drive.

In units of I_c and tau = omega_c t the phase obeys

    d(phi)/d(tau) = i_dc + i_ac(tau) - sin(phi),

and the dc voltage is proportional to the mean phase velocity. This module
averages that velocity, locates critical currents by bisection, and builds
the efficiency and voltage maps over drive parameters.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from ratchet_junction.core import waveform
from ratchet_junction.core.constants import (
    BISECTION_TOLERANCE,
    FAST_AVERAGE_PERIODS,
    FAST_TRANSIENT_PERIODS,
    INITIAL_BRACKET,
    MAX_BRACKET,
    MAX_STEP,
    SLOW_AVERAGE_PERIODS,
    SLOW_DRIVE_OMEGA,
    SLOW_TRANSIENT_PERIODS,
    STEPS_PER_PERIOD,
    V_THRESHOLD,
    Direction,
    DriveFamily,
    MapMode,
)
from ratchet_junction.core.exceptions import (
    ConfigurationError,
    ConvergenceError,
    DomainError,
    EmptyChannelError,
    IntegrationError,
    RatchetError,
)
from ratchet_junction.core.integrator import mean_phase_velocity
from ratchet_junction.core.sweeps import (
    log_zeta_ratio,
    parallel_map,
    require_increasing,
)
from ratchet_junction.models.drive import BiharmonicSpec
from ratchet_junction.models.junction import JunctionConfig, SimControl

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JunctionResult:
    """Averaged outcome of one integration."""

    mean_voltage: float
    winding_number_rate: float


@dataclass(frozen=True)
class ChannelBounds:
    """Zero-voltage interval of dc bias, in units of I_c."""

    lower: float
    upper: float

    @property
    def width(self) -> float:
        """upper - lower."""
        return self.upper - self.lower


@dataclass(frozen=True)
class MapResult:
    """Scalar field over a rectangular grid, rows along ``x`` and columns along ``y``."""

    x_name: str
    y_name: str
    x: NDArray[np.float64]
    y: NDArray[np.float64]
    values: NDArray[np.float64]
    overlays: dict[str, NDArray[np.float64]] = field(default_factory=dict)
    failures: int = 0


@dataclass(frozen=True)
class IVCurve:
    """Mean voltage against dc bias."""

    i_dc: NDArray[np.float64]
    mean_voltage: NDArray[np.float64]
    winding_number_rate: NDArray[np.float64]


def max_step(omega: float) -> float:
    """Largest step resolving both the drive period and the relaxation time by 100 steps."""
    return min(MAX_STEP, 2.0 * math.pi / (STEPS_PER_PERIOD * omega))


def default_control(omega: float) -> SimControl:
    """Integration settings for a drive frequency.

    Slow drives (omega < 0.1) get 200 transient and 400 averaging periods,
    faster ones 50 and 100.
    """
    if not omega > 0.0:
        raise DomainError(f"omega must be > 0, got {omega}")
    slow = omega < SLOW_DRIVE_OMEGA
    return SimControl(
        dt=max_step(omega),
        transient_periods=SLOW_TRANSIENT_PERIODS if slow else FAST_TRANSIENT_PERIODS,
        average_periods=SLOW_AVERAGE_PERIODS if slow else FAST_AVERAGE_PERIODS,
    )


def _aligned_step(control: SimControl, period: float) -> tuple[float, int]:
    """Shrink dt so an integer number of steps fills one drive period."""
    steps = math.ceil(period / control.dt - 1e-9)
    return period / steps, steps


def _check_control(control: SimControl, omega: float) -> None:
    bound = max_step(omega)
    if control.dt > bound * (1.0 + 1e-12):
        raise ConfigurationError(
            f"dt={control.dt} exceeds min(0.01, 0.01*2pi/omega)={bound:.6g} for omega={omega}"
        )


def integrate_phase(config: JunctionConfig, control: SimControl | None = None) -> JunctionResult:
    """Integrate the phase with fixed-step RK4 and average its velocity.

    The average is taken over an integer number of drive periods after the
    transient. An undriven junction has no drive period to lock to, so its
    average runs between the first and last 2 pi phase slips in the window.

    Args:
        config: Bias and drive.
        control: Integration settings; defaults to :func:`default_control`.

    Returns:
        JunctionResult with the mean voltage in units of omega_c.

    Raises:
        ConfigurationError: If dt is too coarse for the drive frequency.
        IntegrationError: If the phase becomes non-finite.
    """
    drive = config.drive
    control = control or default_control(drive.omega)
    _check_control(control, drive.omega)

    dt, steps_per_period = _aligned_step(control, drive.period)
    undriven = drive.amplitude == 0.0
    velocity, failed_tau = mean_phase_velocity(
        control.initial_phase,
        config.i_dc,
        drive.first_harmonic,
        drive.second_harmonic,
        drive.omega,
        drive.theta,
        drive.family is DriveFamily.SIN_SIN,
        dt,
        control.transient_periods * steps_per_period,
        control.average_periods * steps_per_period,
        undriven,
    )
    if not math.isnan(failed_tau):
        raise IntegrationError(failed_tau)
    return JunctionResult(
        mean_voltage=velocity,
        winding_number_rate=velocity / drive.omega,
    )


def _is_running(
    drive: BiharmonicSpec, i_dc: float, control: SimControl, v_threshold: float
) -> bool:
    """True if any scanned initial phase ends in a running (finite-voltage) state."""
    for phase in control.scan_phases:
        trial = control.model_copy(update={"initial_phase": phase})
        result = integrate_phase(JunctionConfig(i_dc=i_dc, drive=drive), trial)
        if abs(result.mean_voltage) >= v_threshold:
            return True
    return False


def critical_current(
    drive: BiharmonicSpec,
    direction: Direction,
    control: SimControl | None = None,
    v_threshold: float = V_THRESHOLD,
    tolerance: float = BISECTION_TOLERANCE,
) -> float | None:
    """Signed edge of the zero-voltage channel in one bias direction.

    Starting from zero bias the bracket is doubled outward until the
    junction runs, then bisected down to ``tolerance``. A bias counts as
    running if any of ``control.scan_phases`` ends in a running state.

    Args:
        drive: ac drive (amplitude in units of I_c, omega in units of omega_c).
        direction: Which edge to find.
        control: Integration settings; defaults to :func:`default_control`.
        v_threshold: Mean-voltage magnitude separating zero and finite voltage.
        tolerance: Bisection width.

    Returns:
        Largest-magnitude zero-voltage bias found, signed, or None if the
        junction already runs at zero bias.

    Raises:
        ConvergenceError: If no running state appears before the bracket cap.
    """
    if not v_threshold > 0.0:
        raise DomainError(f"v_threshold must be > 0, got {v_threshold}")
    control = control or default_control(drive.omega)
    sign = 1.0 if direction is Direction.POSITIVE else -1.0

    if _is_running(drive, 0.0, control, v_threshold):
        logger.debug(f"Empty channel at zero bias (zeta={drive.zeta:.6g}, amplitude={drive.amplitude:.6g})")
        return None

    low, high = 0.0, INITIAL_BRACKET
    while not _is_running(drive, sign * high, control, v_threshold):
        low, high = high, 2.0 * high
        if high > MAX_BRACKET:
            raise ConvergenceError(f"no running state up to |i_dc|={MAX_BRACKET}")
    logger.debug(f"Bracketed {direction.value} critical current in [{low:.6g}, {high:.6g}]")

    while high - low > tolerance:
        middle = 0.5 * (low + high)
        if _is_running(drive, sign * middle, control, v_threshold):
            high = middle
        else:
            low = middle
    return sign * low


def diode_efficiency(
    drive: BiharmonicSpec,
    control: SimControl | None = None,
    v_threshold: float = V_THRESHOLD,
    tolerance: float = BISECTION_TOLERANCE,
) -> float:
    """Dynamical diode efficiency |i_c+ + i_c-| / |i_c+ - i_c-|.

    Raises:
        EmptyChannelError: If the junction has no zero-voltage state at zero bias.
    """
    upper = critical_current(drive, Direction.POSITIVE, control, v_threshold, tolerance)
    lower = critical_current(drive, Direction.NEGATIVE, control, v_threshold, tolerance)
    if upper is None or lower is None or upper - lower <= 0.0:
        raise EmptyChannelError(
            f"no zero-voltage channel (zeta={drive.zeta:.6g}, amplitude={drive.amplitude:.6g})"
        )
    return abs(upper + lower) / abs(upper - lower)


def adiabatic_channel(
    family: DriveFamily,
    alpha: float,
    theta: float,
    zeta: float,
    amplitude_ratio: float,
) -> ChannelBounds | None:
    """Zero-voltage channel in the adiabatic limit.

    The junction stays superconducting while -1 <= i_dc + A f(t) <= 1 for
    all t, so lower = -1 - A m and upper = 1 - A M, with (M, m) the
    unit-amplitude extrema and A = I0/I_c.

    Returns:
        ChannelBounds, or None when lower > upper.
    """
    if amplitude_ratio < 0.0:
        raise DomainError(f"I0/I_c must be >= 0, got {amplitude_ratio}")
    unit = waveform.canonical_extrema(family, alpha, theta, zeta)
    lower = -1.0 - amplitude_ratio * unit.minimum
    upper = 1.0 - amplitude_ratio * unit.maximum
    if lower > upper:
        return None
    return ChannelBounds(lower=lower, upper=upper)


def adiabatic_diode_efficiency(
    family: DriveFamily,
    alpha: float,
    theta: float,
    zeta: float,
    amplitude_ratio: float,
) -> float | None:
    """Adiabatic efficiency |A(M + m)| / |2 - A(M - m)| from the channel edges.

    Values above 1 mean the channel no longer contains zero bias.

    Returns:
        Efficiency, or None for an empty or single-point channel.
    """
    bounds = adiabatic_channel(family, alpha, theta, zeta, amplitude_ratio)
    if bounds is None or bounds.width <= 0.0:
        return None
    return abs(bounds.upper + bounds.lower) / bounds.width


def ideal_rectification_current(drive: BiharmonicSpec) -> float:
    """Supercurrent in ideal rectification, |I_s*|/I_c = 1 - min(I_ac+, |I_ac-|).

    I_ac+ and I_ac- are the drive maximum and minimum in units of I_c.
    """
    found = waveform.extrema(drive)
    return 1.0 - min(found.maximum, abs(found.minimum))


def _masked(values: list[float]) -> tuple[NDArray[np.float64], int]:
    array = np.asarray(values, dtype=float)
    return array, int(np.count_nonzero(np.isnan(array)))


def _guarded(func: Callable[[], float], label: str) -> float:
    """Evaluate one grid cell, masking module failures as NaN."""
    try:
        return func()
    except RatchetError as e:
        logger.debug(f"Masked cell {label}: {e}")
        return math.nan


def efficiency_map(
    alpha_grid: NDArray[np.float64],
    zeta_grid: NDArray[np.float64],
    family: DriveFamily,
    theta: float,
    *,
    mode: MapMode = MapMode.CLOSED_FORM,
    amplitude: float = 1.0,
    omega: float = 3.0,
    control: SimControl | None = None,
    v_threshold: float = V_THRESHOLD,
    tolerance: float = BISECTION_TOLERANCE,
    n_jobs: int = 1,
) -> MapResult:
    """Diode efficiency over (alpha, zeta).

    Closed-form cells hold eta_ac = 2D (numerical extrema off the optimal
    phases). ODE cells hold the dynamical efficiency at drive amplitude
    ``amplitude`` and frequency ``omega``. The ``zeta_opt`` overlay is the
    predicted optimum 2 alpha/(1 + 2 alpha) for every row.

    Returns:
        MapResult with rows along alpha and columns along zeta; failed
        cells are NaN and counted in ``failures``.
    """
    require_increasing(alpha_grid, "alpha grid")
    require_increasing(zeta_grid, "zeta grid")
    cells = [(float(a), float(z)) for a in alpha_grid for z in zeta_grid]

    def closed_form_cell(cell: tuple[float, float]) -> float:
        alpha, zeta = cell
        spec = BiharmonicSpec(family=family, zeta=zeta, alpha=alpha, theta=theta)
        return _guarded(lambda: 2.0 * waveform.extrema(spec).load_term, f"alpha={alpha}, zeta={zeta}")

    def ode_cell(cell: tuple[float, float]) -> float:
        alpha, zeta = cell
        spec = BiharmonicSpec(
            family=family, zeta=zeta, alpha=alpha, theta=theta, amplitude=amplitude, omega=omega
        )
        return _guarded(
            lambda: diode_efficiency(spec, control, v_threshold, tolerance),
            f"alpha={alpha}, zeta={zeta}",
        )

    cell_func = closed_form_cell if mode is MapMode.CLOSED_FORM else ode_cell
    logger.info(f"Efficiency map ({mode.value}): {alpha_grid.size} x {zeta_grid.size} cells")
    values, failures = _masked(parallel_map(cell_func, cells, n_jobs))
    if failures:
        logger.warning(f"Efficiency map: {failures} masked cells")

    zeta_opt = np.array([waveform.optimal_zeta(float(a)) for a in alpha_grid])
    return MapResult(
        x_name="alpha",
        y_name="zeta",
        x=alpha_grid,
        y=zeta_grid,
        values=values.reshape(alpha_grid.size, zeta_grid.size),
        overlays={"zeta_opt": zeta_opt},
        failures=failures,
    )


def channel_overlay(
    drive: BiharmonicSpec, zeta_grid: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Adiabatic channel edges along zeta; NaN where empty or theta is off the optimal set."""
    lower = np.full(zeta_grid.size, math.nan)
    upper = np.full(zeta_grid.size, math.nan)
    if waveform.canonical_phase(drive.family, drive.theta) is None:
        return lower, upper
    for j, zeta in enumerate(zeta_grid):
        bounds = adiabatic_channel(drive.family, drive.alpha, drive.theta, float(zeta), drive.amplitude)
        if bounds is not None:
            lower[j], upper[j] = bounds.lower, bounds.upper
    return lower, upper


def voltage_map(
    i_dc_grid: NDArray[np.float64],
    zeta_grid: NDArray[np.float64],
    drive: BiharmonicSpec,
    control: SimControl | None = None,
    n_jobs: int = 1,
) -> MapResult:
    """Mean voltage over (i_dc, zeta) for a drive template.

    Every field of ``drive`` except zeta is kept. Overlays hold the
    adiabatic channel edges and log((1 - zeta)/zeta) per column.

    Returns:
        MapResult with rows along i_dc and columns along zeta.
    """
    require_increasing(i_dc_grid, "i_dc grid")
    require_increasing(zeta_grid, "zeta grid")
    control = control or default_control(drive.omega)
    _check_control(control, drive.omega)
    cells = [(float(i), float(z)) for i in i_dc_grid for z in zeta_grid]

    def cell_func(cell: tuple[float, float]) -> float:
        i_dc, zeta = cell
        config = JunctionConfig(i_dc=i_dc, drive=drive.replace(zeta=zeta))
        return _guarded(
            lambda: integrate_phase(config, control).mean_voltage,
            f"i_dc={i_dc}, zeta={zeta}",
        )

    logger.info(f"Voltage map: {i_dc_grid.size} x {zeta_grid.size} cells at omega={drive.omega}")
    values, failures = _masked(parallel_map(cell_func, cells, n_jobs))
    if failures:
        logger.warning(f"Voltage map: {failures} masked cells")

    lower, upper = channel_overlay(drive, zeta_grid)
    return MapResult(
        x_name="i_dc",
        y_name="zeta",
        x=i_dc_grid,
        y=zeta_grid,
        values=values.reshape(i_dc_grid.size, zeta_grid.size),
        overlays={
            "channel_lower": lower,
            "channel_upper": upper,
            "log_zeta_ratio": log_zeta_ratio(zeta_grid),
        },
        failures=failures,
    )


@dataclass(frozen=True)
class ChannelScan:
    """Channel edges along zeta, adiabatic and optionally from the ODE."""

    zeta: NDArray[np.float64]
    lower: NDArray[np.float64]
    upper: NDArray[np.float64]
    efficiency: NDArray[np.float64]
    ode_lower: NDArray[np.float64] | None = None
    ode_upper: NDArray[np.float64] | None = None
    ode_efficiency: NDArray[np.float64] | None = None
    failures: int = 0


def channel_scan(
    drive: BiharmonicSpec,
    zeta_grid: NDArray[np.float64],
    *,
    mode: MapMode = MapMode.CLOSED_FORM,
    control: SimControl | None = None,
    v_threshold: float = V_THRESHOLD,
    tolerance: float = BISECTION_TOLERANCE,
    n_jobs: int = 1,
) -> ChannelScan:
    """Zero-voltage channel and diode efficiency along zeta.

    Adiabatic edges are always reported (NaN when empty). In ODE mode the
    critical currents are also bisected at every zeta; NaN marks an empty
    channel or a failed cell.
    """
    require_increasing(zeta_grid, "zeta grid")
    lower, upper = channel_overlay(drive, zeta_grid)
    efficiency = np.full(zeta_grid.size, math.nan)
    if waveform.canonical_phase(drive.family, drive.theta) is not None:
        for j, zeta in enumerate(zeta_grid):
            eta = adiabatic_diode_efficiency(
                drive.family, drive.alpha, drive.theta, float(zeta), drive.amplitude
            )
            efficiency[j] = math.nan if eta is None else eta
    if mode is MapMode.CLOSED_FORM:
        return ChannelScan(zeta=zeta_grid, lower=lower, upper=upper, efficiency=efficiency)

    control = control or default_control(drive.omega)

    def edges(zeta: float) -> tuple[float, float]:
        spec = drive.replace(zeta=zeta)
        try:
            high = critical_current(spec, Direction.POSITIVE, control, v_threshold, tolerance)
            low = critical_current(spec, Direction.NEGATIVE, control, v_threshold, tolerance)
        except RatchetError as e:
            logger.debug(f"Masked zeta={zeta}: {e}")
            return math.nan, math.nan
        if high is None or low is None:
            return math.nan, math.nan
        return low, high

    logger.info(f"Channel scan (ode): {zeta_grid.size} points at omega={drive.omega}")
    results = parallel_map(edges, [float(z) for z in zeta_grid], n_jobs)
    ode_lower = np.array([r[0] for r in results])
    ode_upper = np.array([r[1] for r in results])
    with np.errstate(invalid="ignore", divide="ignore"):
        ode_efficiency = np.abs(ode_upper + ode_lower) / np.abs(ode_upper - ode_lower)
    failures = int(np.count_nonzero(np.isnan(ode_lower)))
    if failures:
        logger.warning(f"Channel scan: {failures} points without a zero-voltage channel")
    return ChannelScan(
        zeta=zeta_grid,
        lower=lower,
        upper=upper,
        efficiency=efficiency,
        ode_lower=ode_lower,
        ode_upper=ode_upper,
        ode_efficiency=ode_efficiency,
        failures=failures,
    )


def iv_curve(
    drive: BiharmonicSpec,
    i_dc_grid: NDArray[np.float64],
    control: SimControl | None = None,
    n_jobs: int = 1,
) -> IVCurve:
    """Mean voltage at every dc bias of a strictly increasing grid."""
    require_increasing(i_dc_grid, "i_dc grid")
    control = control or default_control(drive.omega)

    def point(i_dc: float) -> JunctionResult:
        return integrate_phase(JunctionConfig(i_dc=i_dc, drive=drive), control)

    results = parallel_map(point, [float(i) for i in i_dc_grid], n_jobs)
    return IVCurve(
        i_dc=i_dc_grid,
        mean_voltage=np.array([r.mean_voltage for r in results]),
        winding_number_rate=np.array([r.winding_number_rate for r in results]),
    )
