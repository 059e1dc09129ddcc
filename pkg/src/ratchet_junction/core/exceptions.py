"""Custom exceptions for ratchet junction computations."""


class RatchetError(Exception):
    """Base exception for ratchet junction errors."""
    pass

class DomainError(RatchetError, ValueError):
    """Argument outside the domain of an operation."""
    pass

class DegenerateWaveformError(RatchetError):
    """Waveform with equal maximum and minimum; normalization undefined."""
    pass

class BranchSelectionError(RatchetError):
    """No piecewise branch of a closed form matched the input."""
    pass

class IntegrationError(RatchetError):
    """Phase integration produced a non-finite state."""

    def __init__(self, tau: float, message: str | None = None) -> None:
        self.tau = tau
        super().__init__(message or f"Non-finite junction phase at tau={tau:.6g}")

class EmptyChannelError(RatchetError):
    """No zero-voltage state exists, so the diode efficiency is undefined."""
    pass

class ConvergenceError(RatchetError):
    """Truncation or bracketing growth hit its cap."""
    pass

class ConfigurationError(RatchetError, ValueError):
    """Invalid simulation control or run configuration."""
    pass
