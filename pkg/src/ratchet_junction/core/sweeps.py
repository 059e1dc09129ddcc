"""Grid helpers shared by the map and sweep generators."""

import logging
import math
from collections.abc import Callable, Iterable
from typing import Literal, TypeVar

import numpy as np
from joblib import Parallel, delayed
from numpy.typing import NDArray

from ratchet_junction.core.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parse_grid(text: str) -> NDArray[np.float64]:
    """Parse a ``start:stop:count`` grid with inclusive endpoints.

    Args:
        text: Grid specification, e.g. ``0.01:0.99:490``.

    Returns:
        Strictly increasing array of ``count`` points.

    Raises:
        ConfigurationError: If the text is malformed or the grid is not
            strictly increasing.
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigurationError(f"grid '{text}' must have the form start:stop:count")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as e:
        raise ConfigurationError(f"grid '{text}' has a non-numeric field") from e

    if not (math.isfinite(start) and math.isfinite(stop)):
        raise ConfigurationError(f"grid '{text}' has a non-finite endpoint")
    if count < 1:
        raise ConfigurationError(f"grid '{text}' needs at least one point")
    if count == 1:
        if start != stop:
            raise ConfigurationError(f"grid '{text}' has one point but distinct endpoints")
        return np.array([start])
    if stop <= start:
        raise ConfigurationError(f"grid '{text}' is not strictly increasing")
    return np.linspace(start, stop, count)


def require_increasing(values: NDArray[np.float64], name: str) -> None:
    """Raise ConfigurationError unless ``values`` is a non-empty, strictly increasing 1-D grid."""
    if values.ndim != 1 or values.size == 0:
        raise ConfigurationError(f"{name} must be a non-empty 1-D grid")
    if not np.all(np.isfinite(values)):
        raise ConfigurationError(f"{name} contains non-finite values")
    if values.size > 1 and not np.all(np.diff(values) > 0):
        raise ConfigurationError(f"{name} must be strictly increasing")


def refine_extremum(
    x: NDArray[np.float64],
    y: NDArray[np.float64],
    kind: Literal["min", "max"] = "min",
) -> float:
    """Locate an extremum of sampled data with a three-point parabolic fit.

    NaN samples are ignored when picking the grid extremum. The grid point
    is returned unchanged when it sits on the boundary, next to a NaN, or
    when the three points are collinear.

    Args:
        x: Sample positions.
        y: Sample values.
        kind: ``"min"`` or ``"max"``.

    Returns:
        Refined abscissa of the extremum, or NaN if every sample is NaN.
    """
    if y.size == 0 or np.all(np.isnan(y)):
        return math.nan
    i = int(np.nanargmin(y) if kind == "min" else np.nanargmax(y))
    if i == 0 or i == y.size - 1:
        return float(x[i])
    x0, x1, x2 = (float(v) for v in x[i - 1 : i + 2])
    y0, y1, y2 = (float(v) for v in y[i - 1 : i + 2])
    if math.isnan(y0) or math.isnan(y2):
        return x1

    denominator = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0)
    if denominator == 0.0:
        return x1
    numerator = (x1 - x0) ** 2 * (y1 - y2) - (x1 - x2) ** 2 * (y1 - y0)
    vertex = x1 - 0.5 * numerator / denominator
    # Vertex stays within the bracketing samples
    return min(max(vertex, x0), x2)


def parallel_map(func: Callable[[T], R], items: Iterable[T], n_jobs: int = 1) -> list[R]:
    """Apply ``func`` to every item, results in input order.

    Args:
        func: Pure function evaluated per item.
        items: Work items.
        n_jobs: Worker threads; 1 evaluates serially.

    Returns:
        List of results aligned with ``items``.
    """
    work = list(items)
    if n_jobs == 1 or len(work) <= 1:
        return [func(item) for item in work]
    logger.debug(f"Dispatching {len(work)} cells to {n_jobs} threads")
    results: list[R] = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(func)(item) for item in work
    )
    return results


def log_zeta_ratio(zeta: NDArray[np.float64]) -> NDArray[np.float64]:
    """Axis variable log((1 - zeta)/zeta); +inf at zeta = 0, -inf at zeta = 1."""
    with np.errstate(divide="ignore"):
        return np.log1p(-zeta) - np.log(zeta)


def zeta_from_log_ratio(ratio: NDArray[np.float64]) -> NDArray[np.float64]:
    """Invert :func:`log_zeta_ratio`: zeta = 1/(1 + e^ratio)."""
    return 1.0 / (1.0 + np.exp(ratio))
