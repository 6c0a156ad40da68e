"""Fitting the crossover surmise parameter lambda to a spacing density.

The objective is the L2 distance between the target and the crossover
surmise. A log-spaced scan of [1e-4, 10] brackets the minimum, golden-section
search refines it, and the result is certified against its neighbours at
distance ``tolerance``.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from levelspacing.errors import FitFailureError, InvalidArgumentError
from levelspacing.exact.fredholm import LsdCurve
from levelspacing.fitting.distance import (
    DEFAULT_BINS,
    DEFAULT_STEP,
    DEFAULT_WINDOW,
    Density,
    StepDensity,
    l2_distance,
    step_density,
)
from levelspacing.samples import SpacingSample
from levelspacing.surmise.closed_form import crossover_surmise

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

LAMBDA_BOUNDS = (1e-4, 10.0)
SCAN_POINTS = 40
DEFAULT_TOLERANCE = 1e-4
SECONDARY_RATIO = 1.1
RATIO_FLOOR = 1e-12
MEAN_TOLERANCE = 5e-3
_MAX_POLISH = 50


@dataclass
class FitResult:
    """Best-fit lambda and its L2 distance.

    Attributes:
        lambda_star: Fitted lambda
        delta2: L2 distance at lambda_star
        window: Integration window
        grid_step: Integration step
        target: Provenance of the fitted density
        neighbours: Distances at lambda_star -/+ tolerance
        secondary: (lambda, delta2) of a second local minimum within 10% in delta2
        trace: Best (lambda, delta2) after every golden-section step
    """

    lambda_star: float
    delta2: float
    window: tuple[float, float]
    grid_step: float
    target: dict[str, Any]
    tolerance: float = DEFAULT_TOLERANCE
    neighbours: tuple[float, float] = (math.inf, math.inf)
    secondary: tuple[float, float] | None = None
    trace: list[tuple[float, float]] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.delta2 <= min(self.neighbours)

    def to_dict(self) -> dict[str, Any]:
        return {
            "lambda_star": self.lambda_star,
            "delta2": self.delta2,
            "window": list(self.window),
            "grid_step": self.grid_step,
            "tolerance": self.tolerance,
            "neighbours": list(self.neighbours),
            "certified": self.certified,
            "secondary": None if self.secondary is None else list(self.secondary),
            "target": self.target,
        }


@dataclass(frozen=True, eq=False)
class RatioCurve:
    grid: np.ndarray
    ratio: np.ndarray
    omitted: int


def golden_section(
    f: Callable[[float], float], a: float, b: float, tol: float = DEFAULT_TOLERANCE
) -> tuple[float, float, list[tuple[float, float]]]:
    """Golden-section search for the minimum of a unimodal ``f`` on [a, b].

    Returns the best point seen, its value, and the running best after each step.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)
    best = min((yc, c), (yd, d))
    trace = [(best[1], best[0])]

    steps = max(0, int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))) if h > tol else 0
    for _ in range(steps):
        if yc < yd:
            b, d, yd = d, c, yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
            best = min(best, (yc, c))
        else:
            a, c, yc = c, d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)
            best = min(best, (yd, d))
        trace.append((best[1], best[0]))
    return best[1], best[0], trace


def _as_density(target: LsdCurve | SpacingSample | StepDensity, window: tuple[float, float]) -> Density:
    if isinstance(target, SpacingSample):
        return step_density(target, DEFAULT_BINS, window)
    if isinstance(target, LsdCurve) and abs(target.mean - 1.0) > MEAN_TOLERANCE:
        raise InvalidArgumentError(f"target must have unit mean spacing, got {target.mean:.6f}")
    return target


def _provenance(target: LsdCurve | SpacingSample | StepDensity) -> dict[str, Any]:
    if isinstance(target, LsdCurve):
        return {"type": "lsd", **target.source}
    if isinstance(target, SpacingSample):
        return {"type": "sample", "bins": DEFAULT_BINS, **target.metadata()}
    return {"type": "step_density", "bins": target.bins, **target.source}


def fit_lambda(
    target: LsdCurve | SpacingSample | StepDensity,
    window: tuple[float, float] = DEFAULT_WINDOW,
    tolerance: float = DEFAULT_TOLERANCE,
    step: float = DEFAULT_STEP,
) -> FitResult:
    """Crossover surmise parameter minimizing the L2 distance to ``target``.

    Monte Carlo samples are binned into 60 equal-width bins over ``window``.

    Raises:
        InvalidArgumentError: If the target is not unit-mean or the window is invalid
        FitFailureError: If the scan finds no interior minimum
    """
    if not tolerance > 0:
        raise InvalidArgumentError(f"tolerance must be positive, got {tolerance}")
    density = _as_density(target, window)

    def objective(lam: float) -> float:
        return l2_distance(density, lambda s: crossover_surmise(s, lam), window, step)

    scan = np.geomspace(*LAMBDA_BOUNDS, SCAN_POINTS)
    values = np.array([objective(float(lam)) for lam in scan])
    interior = [i for i in range(1, scan.size - 1) if values[i] < values[i - 1] and values[i] <= values[i + 1]]
    if not interior:
        raise FitFailureError(
            "no interior minimum of the L2 distance",
            {"lambda_lo": scan[0], "delta2_lo": values[0], "lambda_hi": scan[-1], "delta2_hi": values[-1]},
        )
    interior.sort(key=lambda i: values[i])
    primary = interior[0]

    lam, best, trace = golden_section(objective, float(scan[primary - 1]), float(scan[primary + 1]), tolerance)

    # walk to a point no worse than both neighbours at distance tolerance
    lower, upper = objective(max(lam - tolerance, 0.0)), objective(lam + tolerance)
    for _ in range(_MAX_POLISH):
        if best <= min(lower, upper):
            break
        if lower < upper:
            lam, upper, best = max(lam - tolerance, 0.0), best, lower
            lower = objective(max(lam - tolerance, 0.0))
        else:
            lam, lower, best = lam + tolerance, best, upper
            upper = objective(lam + tolerance)
        trace.append((lam, best))

    secondary = None
    if len(interior) > 1 and values[interior[1]] <= SECONDARY_RATIO * values[primary]:
        secondary = (float(scan[interior[1]]), float(values[interior[1]]))
        logger.warning("second local minimum near lambda=%.4g (delta2=%.4g)", *secondary)

    result = FitResult(
        lambda_star=float(lam),
        delta2=float(best),
        window=(float(window[0]), float(window[1])),
        grid_step=step,
        target=_provenance(target),
        tolerance=tolerance,
        neighbours=(float(lower), float(upper)),
        secondary=secondary,
        trace=trace,
    )
    logger.info("fitted lambda=%.6f with delta2=%.3e", result.lambda_star, result.delta2)
    return result


def ratio_curve(
    numerator: LsdCurve | Callable[[np.ndarray], Any],
    denominator: LsdCurve,
    s_min_cut: float = 0.05,
) -> RatioCurve:
    """Pointwise numerator / denominator on the denominator's grid from ``s_min_cut`` on.

    A callable numerator is evaluated on that grid; an LsdCurve numerator must
    share its grid points. Points where the denominator is at most 1e-12 are
    omitted and counted.

    Raises:
        InvalidArgumentError: If s_min_cut <= 0 or the grids do not overlap
    """
    if not s_min_cut > 0:
        raise InvalidArgumentError(f"s_min_cut must be positive, got {s_min_cut}")
    grid = denominator.grid
    den = denominator.values
    if isinstance(numerator, LsdCurve):
        common, num_index, den_index = np.intersect1d(numerator.grid, grid, return_indices=True)
        if common.size == 0:
            raise InvalidArgumentError("numerator and denominator grids are disjoint")
        grid, num, den = common, numerator.values[num_index], den[den_index]
    else:
        num = np.asarray(numerator(grid), dtype=float)
    keep = grid >= s_min_cut
    grid, num, den = grid[keep], num[keep], den[keep]
    if grid.size == 0:
        raise InvalidArgumentError(f"no grid points at or above s_min_cut={s_min_cut}")
    valid = den > RATIO_FLOOR
    omitted = int(np.count_nonzero(~valid))
    if omitted:
        logger.debug("ratio: omitted %d points with denominator <= %g", omitted, RATIO_FLOOR)
    return RatioCurve(grid[valid], num[valid] / den[valid], omitted)


def surmise_bias(lambda_star: float, lambda_big: float) -> float:
    """|lambda* / Lambda - 1|.

    Raises:
        InvalidArgumentError: If Lambda is not a positive finite number
    """
    if not (math.isfinite(lambda_big) and lambda_big > 0):
        raise InvalidArgumentError(f"Lambda must be positive, got {lambda_big}")
    return abs(lambda_star / lambda_big - 1.0)
