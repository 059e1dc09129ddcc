"""Compiled fixed-step RK4 kernel for the overdamped junction.

Integrates d(phi)/d(tau) = i_dc + a1 h(W tau) + a2 h(2 W tau + theta) - sin(phi)
with h = cos or sin. The kernel releases the GIL so threaded grid scans run
concurrently.
"""

import math

from numba import njit

TWO_PI = 2.0 * math.pi


@njit(cache=True, nogil=True)
def _rhs(
    phi: float,
    tau: float,
    i_dc: float,
    a1: float,
    a2: float,
    omega: float,
    theta: float,
    use_sin: bool,
) -> float:
    x = omega * tau
    if use_sin:
        drive = a1 * math.sin(x) + a2 * math.sin(2.0 * x + theta)
    else:
        drive = a1 * math.cos(x) + a2 * math.cos(2.0 * x + theta)
    return i_dc + drive - math.sin(phi)


@njit(cache=True, nogil=True)
def _rk4_step(
    phi: float,
    tau: float,
    dt: float,
    i_dc: float,
    a1: float,
    a2: float,
    omega: float,
    theta: float,
    use_sin: bool,
) -> float:
    half = 0.5 * dt
    k1 = _rhs(phi, tau, i_dc, a1, a2, omega, theta, use_sin)
    k2 = _rhs(phi + half * k1, tau + half, i_dc, a1, a2, omega, theta, use_sin)
    k3 = _rhs(phi + half * k2, tau + half, i_dc, a1, a2, omega, theta, use_sin)
    k4 = _rhs(phi + dt * k3, tau + dt, i_dc, a1, a2, omega, theta, use_sin)
    return phi + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


@njit(cache=True, nogil=True)
def mean_phase_velocity(
    phi0: float,
    i_dc: float,
    a1: float,
    a2: float,
    omega: float,
    theta: float,
    use_sin: bool,
    dt: float,
    transient_steps: int,
    average_steps: int,
    align_slips: bool,
) -> tuple[float, float]:
    """Average d(phi)/d(tau) after a transient.

    Args:
        phi0: Initial phase.
        i_dc: dc bias.
        a1: Fundamental amplitude.
        a2: Second-harmonic amplitude.
        omega: Drive frequency W.
        theta: Relative phase.
        use_sin: True for the sin-sin family.
        dt: Step, dividing the drive period exactly.
        transient_steps: Steps discarded.
        average_steps: Steps averaged.
        align_slips: Average between the first and last 2 pi crossing
            inside the window instead of over the full window.

    Returns:
        (mean velocity, tau of the first non-finite state or NaN).
    """
    phi = phi0
    tau = 0.0
    for n in range(transient_steps):
        phi = _rk4_step(phi, tau, dt, i_dc, a1, a2, omega, theta, use_sin)
        tau = (n + 1) * dt
        if not math.isfinite(phi):
            return math.nan, tau

    phi_start = phi
    tau_start = tau
    first_tau = math.nan
    first_level = 0.0
    last_tau = math.nan
    last_level = 0.0
    for n in range(average_steps):
        phi_prev = phi
        tau_prev = tau
        phi = _rk4_step(phi, tau, dt, i_dc, a1, a2, omega, theta, use_sin)
        tau = (transient_steps + n + 1) * dt
        if not math.isfinite(phi):
            return math.nan, tau
        if align_slips:
            k_prev = math.floor(phi_prev / TWO_PI)
            k_next = math.floor(phi / TWO_PI)
            if k_next != k_prev:
                level = TWO_PI * max(k_prev, k_next)
                crossing = tau_prev + dt * (level - phi_prev) / (phi - phi_prev)
                if math.isnan(first_tau):
                    first_tau = crossing
                    first_level = level
                last_tau = crossing
                last_level = level

    if align_slips and not math.isnan(first_tau) and last_tau > first_tau:
        return (last_level - first_level) / (last_tau - first_tau), math.nan
    return (phi - phi_start) / (tau - tau_start), math.nan
