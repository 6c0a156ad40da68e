"""L2 distance between spacing densities, and binned densities of samples."""

from collections.abc import Callable
from dataclasses import dataclass
from typing import Any, Union

import numpy as np
from scipy.integrate import trapezoid

from levelspacing.errors import InvalidArgumentError
from levelspacing.exact.fredholm import LsdCurve
from levelspacing.samples import SpacingSample

DEFAULT_WINDOW = (0.0, 6.0)
DEFAULT_STEP = 0.01
DEFAULT_BINS = 60


@dataclass(frozen=True, eq=False)
class StepDensity:
    """Histogram density: ``density[i]`` on [edges[i], edges[i+1]), the last bin closed."""

    edges: np.ndarray
    density: np.ndarray
    n_total: int
    source: dict[str, Any]

    def __call__(self, s: np.ndarray) -> np.ndarray:
        x = np.asarray(s, dtype=float)
        index = np.clip(np.searchsorted(self.edges, x, side="right") - 1, 0, self.density.size - 1)
        return np.where((x >= self.edges[0]) & (x <= self.edges[-1]), self.density[index], 0.0)

    @property
    def bins(self) -> int:
        return int(self.density.size)


Density = Union[LsdCurve, StepDensity, Callable[[np.ndarray], Any]]


def step_density(
    sample: SpacingSample | np.ndarray,
    bins: int = DEFAULT_BINS,
    window: tuple[float, float] = DEFAULT_WINDOW,
) -> StepDensity:
    """Equal-width histogram of ``sample`` normalized by the full sample size."""
    spacings = sample.spacings if isinstance(sample, SpacingSample) else np.asarray(sample, dtype=float)
    if bins < 1:
        raise InvalidArgumentError(f"bins must be positive, got {bins}")
    lo, hi = window
    if not hi > lo:
        raise InvalidArgumentError(f"window must satisfy lo < hi, got {window}")
    if spacings.size == 0:
        raise InvalidArgumentError("cannot bin an empty sample")
    counts, edges = np.histogram(spacings, bins=bins, range=(lo, hi))
    width = (hi - lo) / bins
    source = sample.metadata() if isinstance(sample, SpacingSample) else {"n_kept": int(spacings.size)}
    return StepDensity(edges, counts / (spacings.size * width), int(spacings.size), source)


def _domain(density: Density) -> tuple[float, float]:
    if isinstance(density, LsdCurve):
        return float(density.grid[0]), float(density.grid[-1])
    if isinstance(density, StepDensity):
        return float(density.edges[0]), float(density.edges[-1])
    return 0.0, float("inf")


def _evaluate(density: Density, grid: np.ndarray) -> np.ndarray:
    if isinstance(density, LsdCurve):
        if density.grid.size == grid.size and np.array_equal(density.grid, grid):
            return density.values
        return density(grid)
    return np.asarray(density(grid), dtype=float)


def common_grid(window: tuple[float, float], step: float) -> np.ndarray:
    lo, hi = window
    n = int(round((hi - lo) / step))
    if n < 1 or abs(lo + n * step - hi) > 1e-9 * max(1.0, abs(hi)):
        raise InvalidArgumentError(f"window {window} is not a whole number of steps of {step}")
    return lo + np.arange(n + 1, dtype=float) * step


def l2_distance(
    p: Density,
    q: Density,
    window: tuple[float, float] = DEFAULT_WINDOW,
    step: float = DEFAULT_STEP,
) -> float:
    """sqrt of the trapezoid integral of (P - Q)^2 over ``window``.

    Raises:
        InvalidArgumentError: If ``window`` leaves either domain, or the step
            exceeds 0.01 for a tabulated curve
    """
    if not step > 0:
        raise InvalidArgumentError(f"step must be positive, got {step}")
    if (isinstance(p, LsdCurve) or isinstance(q, LsdCurve)) and step > DEFAULT_STEP + 1e-12:
        raise InvalidArgumentError(f"tabulated curves need step <= {DEFAULT_STEP}, got {step}")
    lo, hi = window
    if not hi > lo:
        raise InvalidArgumentError(f"window must satisfy lo < hi, got {window}")
    for density in (p, q):
        d_lo, d_hi = _domain(density)
        if lo < d_lo - 1e-12 or hi > d_hi + 1e-12:
            raise InvalidArgumentError(f"window {window} is outside the domain [{d_lo}, {d_hi}]")
    grid = common_grid(window, step)
    diff = _evaluate(p, grid) - _evaluate(q, grid)
    return float(np.sqrt(trapezoid(diff * diff, grid)))
