"""Nystrom evaluation of Fredholm determinants and the level spacing distributions built from them.

The determinant of I - K restricted to [0, s] is approximated by

    det[delta_ij - K(x_i, x_j) w_j]

with an m-point Gauss-Legendre rule on [0, s] (see KernelSpec.operator for
the product-integrated small-rho case). For the 2x2 block kernel the
matrix is 2m x 2m and the gap probability is the square root of the block
determinant.
"""

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.integrate import trapezoid
from scipy.interpolate import BSpline, make_interp_spline
from scipy.linalg import lu_factor

from levelspacing.errors import InvalidArgumentError, LevelSpacingError, NumericalFailureError
from levelspacing.exact.kernels import KernelSpec, rho_to_lambda_big
from levelspacing.exact.quadrature import gauss_legendre, rescale

if TYPE_CHECKING:
    from levelspacing.exact.cache import GapCache

logger = logging.getLogger(__name__)

ScalarKernel = Callable[[np.ndarray, np.ndarray], np.ndarray]

DEFAULT_M = 200
DEFAULT_SMAX = 6.0
DEFAULT_DS = 0.01
MAX_LSD_STEP = 0.02
DERIVATIVE_AGREEMENT = 1e-5
MONOTONE_SLACK = 1e-12
NEGATIVE_FLOOR = -1e-8
SMALL_OPERATOR_NORM = 0.25
_SERIES_MAX_TERMS = 200
_SERIES_TOL = 1e-19

# P(s) near 0 is differentiated on a head grid HEAD_REFINEMENT times finer (or finer
# still for kernels with a short feature scale) and joined to the body of the grid
HEAD_REFINEMENT = 4
HEAD_MIN_KNOTS = 8
HEAD_OVERLAP = 6
HEAD_FINE_MARGIN = 24
HEAD_FEATURE_WIDTHS = 12.0
FEATURE_STEP = 0.2

SQRT_DET = "sqrt_det"
DET = "det"

# O(h^4) second-derivative stencils: one-sided at the first two points, central inside
_EDGE_0 = np.array([15 / 4, -77 / 6, 107 / 6, -13.0, 61 / 12, -5 / 6])
_EDGE_1 = np.array([5 / 6, -5 / 4, -1 / 3, 7 / 6, -1 / 2, 1 / 12])
_CENTRAL = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


@dataclass(frozen=True, eq=False)
class GapCurve:
    """Tabulated gap probability E(s).

    Attributes:
        kernel: Kernel whose determinant was evaluated (None for custom kernels)
        m: Quadrature order
        grid: Strictly increasing s values starting at 0
        values: E(s) on the grid
        convention: How E relates to the determinant ("det" or "sqrt_det")
        label: Human-readable provenance (kernel label or pure class name)
        ghost: Analytic continuation of E at (-2h, -h), h the first grid step;
            lets the second derivative at s = 0 use central stencils
    """

    kernel: KernelSpec | None
    m: int
    grid: np.ndarray
    values: np.ndarray
    convention: str = DET
    label: str = ""
    cache_keys: tuple[str, ...] = ()
    ghost: np.ndarray | None = None

    def with_cache_keys(self, keys: tuple[str, ...]) -> "GapCurve":
        return replace(self, cache_keys=keys)

    def metadata(self) -> dict[str, Any]:
        return {
            "kernel": self.kernel.to_dict() if self.kernel is not None else None,
            "label": self.label,
            "m": self.m,
            "convention": self.convention,
            "grid": grid_summary(self.grid),
            "cache_keys": list(self.cache_keys),
        }


@dataclass(frozen=True, eq=False)
class LsdCurve:
    """Level spacing density P(s) tabulated on ``grid``.

    Values may dip to -1e-8 from differentiation noise; ``clipped()`` is the
    only place they are floored at zero.
    """

    source: dict[str, Any]
    grid: np.ndarray
    values: np.ndarray
    mass: float
    mean: float
    metadata: dict[str, Any] = field(default_factory=dict)

    def clipped(self) -> np.ndarray:
        return np.clip(self.values, 0.0, None)

    def __call__(self, s: np.ndarray) -> np.ndarray:
        return np.interp(s, self.grid, self.values)


@dataclass(frozen=True)
class ConvergenceRow:
    s: float
    m_low: int
    m_high: int
    rel_shift: float


def default_grid(smax: float = DEFAULT_SMAX, ds: float = DEFAULT_DS) -> np.ndarray:
    """Uniform grid 0, ds, 2 ds, ..., smax built from integer multiples of ds."""
    if not ds > 0 or not smax > 0:
        raise InvalidArgumentError(f"grid needs smax > 0 and ds > 0, got smax={smax}, ds={ds}")
    n = int(round(smax / ds))
    return np.arange(n + 1, dtype=float) * ds


def grid_summary(grid: np.ndarray) -> dict[str, Any]:
    return {"start": float(grid[0]), "stop": float(grid[-1]), "points": int(grid.size)}


def nystrom_det(kernel: KernelSpec | ScalarKernel, s: float, m: int) -> float:
    """Nystrom approximation of Det(I - K) on [0, s].

    Args:
        kernel: KernelSpec, or a callable K(x, y) evaluated on broadcast node arrays
        s: Interval length, s >= 0
        m: Number of Gauss-Legendre nodes

    Returns:
        The determinant; exactly 1.0 when s == 0

    Raises:
        InvalidArgumentError: If s < 0 or m < 1
        NumericalFailureError: If the determinant is not finite
    """
    if not np.isfinite(s) or s < 0:
        raise InvalidArgumentError(f"s must be a finite nonnegative number, got {s}")
    return _continued_det(kernel, s, m)


def _continued_det(kernel: KernelSpec | ScalarKernel, s: float, m: int) -> float:
    """Nystrom determinant, analytically continued to s < 0.

    For s < 0 the integral over [0, s] equals minus the integral over [s, 0],
    so the rule on [s, 0] is applied to +K.
    """
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise InvalidArgumentError(f"m must be a positive integer, got {m}")
    if s == 0:
        return 1.0

    lower, upper, orientation = (0.0, float(s), 1.0) if s > 0 else (float(s), 0.0, -1.0)
    rule = rescale(gauss_legendre(int(m)), lower, upper)
    if isinstance(kernel, KernelSpec):
        op = kernel.operator(rule)
    else:
        x = rule.nodes
        op = np.asarray(kernel(x[:, None], x[None, :]), dtype=float) * rule.weights[None, :]
        op = np.broadcast_to(op, (x.size, x.size))
    det = _det_one_minus(orientation * op)
    if not np.isfinite(det):
        raise NumericalFailureError("non-finite Nystrom determinant", {"s": s, "m": m})
    return det


def _det_one_minus(op: np.ndarray) -> float:
    """det(I - op).

    Below SMALL_OPERATOR_NORM the log determinant is summed as -sum_k tr(op^k) / k,
    whose absolute error scales with |op| instead of 1.
    """
    if not np.all(np.isfinite(op)):
        return float("nan")
    if _row_norm(op) <= SMALL_OPERATOR_NORM:
        return float(np.exp(_log_det_series(op)))
    sign, logdet = _log_det(np.eye(op.shape[0]) - op)
    return float(sign * np.exp(logdet)) if sign != 0 else 0.0


def _row_norm(a: np.ndarray) -> float:
    return float(np.max(np.sum(np.abs(a), axis=1)))


def _log_det_series(op: np.ndarray) -> float:
    total = 0.0
    power = op
    for k in range(1, _SERIES_MAX_TERMS + 1):
        total -= float(np.trace(power)) / k
        if _row_norm(power) * op.shape[0] / k <= _SERIES_TOL:
            return total
        power = power @ op
    raise NumericalFailureError("log-determinant series did not converge", {"norm": _row_norm(op)})


def _log_det(a: np.ndarray) -> tuple[float, float]:
    """Sign and log|det| from an LU factorization with partial pivoting."""
    lu, piv = lu_factor(a, check_finite=False)
    diag = np.diag(lu)
    if np.any(diag == 0):
        return 0.0, float("-inf")
    swaps = int(np.count_nonzero(piv != np.arange(piv.size)))
    sign = (-1.0) ** swaps * float(np.prod(np.sign(diag)))
    return sign, float(np.sum(np.log(np.abs(diag))))


def gap_probability(kernel: KernelSpec, s: float, m: int) -> float:
    """E(s) for ``kernel``: the determinant, or its square root for block kernels."""
    if not np.isfinite(s) or s < 0:
        raise InvalidArgumentError(f"s must be a finite nonnegative number, got {s}")
    return _gap_value(kernel, s, m)


def _gap_value(kernel: KernelSpec, s: float, m: int) -> float:
    det = _continued_det(kernel, s, m)
    if kernel.block_size == 1:
        return det
    if det < -MONOTONE_SLACK:
        raise NumericalFailureError("negative block determinant", {"s": s, "m": m, "det": det})
    return float(np.sqrt(max(det, 0.0)))


def _validate_grid(grid: Sequence[float] | np.ndarray) -> np.ndarray:
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size == 0:
        raise InvalidArgumentError("grid must be a non-empty one-dimensional sequence")
    if g[0] != 0.0:
        raise InvalidArgumentError(f"grid must start at 0, got {g[0]}")
    if g.size > 1 and not np.all(np.diff(g) > 0):
        raise InvalidArgumentError("grid must be strictly increasing")
    return g


def gap_curve(
    kernel: KernelSpec,
    grid: Sequence[float] | np.ndarray,
    m: int = DEFAULT_M,
    threads: int | None = None,
    cache: "GapCache | None" = None,
) -> GapCurve:
    """Tabulate E(s) on ``grid``.

    Each grid point is independent; with ``threads`` > 1 they are evaluated on a
    thread pool and collected in grid order.

    Raises:
        InvalidArgumentError: If the grid is not strictly increasing from 0
        NumericalFailureError: If any point fails, naming the offending s
    """
    g = _validate_grid(grid)
    if cache is not None:
        cached = cache.get(kernel, m, g)
        if cached is not None:
            return cached

    def evaluate(s: float) -> float:
        try:
            return gap_probability(kernel, s, m)
        except LevelSpacingError as e:
            raise NumericalFailureError(f"gap curve failed for {kernel.label}: {e}", {"s": s, "m": m}) from e

    values = np.array(_map(evaluate, g, threads), dtype=float)
    _check_gap_invariants(g, values, kernel.label)
    ghost = None
    if g.size > 1:
        h = float(g[1] - g[0])
        ghost = np.array([_gap_value(kernel, -2.0 * h, m), _gap_value(kernel, -h, m)])
    logger.info("gap curve %s on %d points (m=%d)", kernel.label, g.size, m)

    curve = GapCurve(
        kernel=kernel,
        m=m,
        grid=g,
        values=values,
        convention=SQRT_DET if kernel.block_size == 2 else DET,
        label=kernel.label,
        ghost=ghost,
    )
    if cache is not None:
        curve = curve.with_cache_keys((cache.put(curve),))
    return curve


def _map(fn: Callable[[float], float], grid: Iterable[float], threads: int | None) -> list[float]:
    points = [float(s) for s in grid]
    if threads is None or threads <= 1:
        return [fn(s) for s in points]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, points))


def _check_gap_invariants(grid: np.ndarray, values: np.ndarray, label: str) -> None:
    if values[0] != 1.0:
        raise NumericalFailureError(f"E(0) != 1 for {label}", {"E0": values[0]})
    if np.any(values < -MONOTONE_SLACK) or np.any(values > 1.0 + MONOTONE_SLACK):
        bad = int(np.argmax((values < -MONOTONE_SLACK) | (values > 1.0 + MONOTONE_SLACK)))
        raise NumericalFailureError(f"E(s) outside [0, 1] for {label}", {"s": grid[bad], "E": values[bad]})
    rises = np.diff(values)
    if np.any(rises > MONOTONE_SLACK):
        bad = int(np.argmax(rises)) + 1
        raise NumericalFailureError(f"E(s) increases for {label}", {"s": grid[bad], "rise": rises[bad - 1]})


def _uniform_step(grid: np.ndarray) -> float:
    if grid.size < 6:
        raise InvalidArgumentError("at least 6 grid points are needed to differentiate a gap curve")
    steps = np.diff(grid)
    h = float(grid[-1] - grid[0]) / (grid.size - 1)
    if np.max(np.abs(steps - h)) > 1e-9 * max(1.0, h):
        raise InvalidArgumentError("gap curve grid must be uniform")
    if h > MAX_LSD_STEP + 1e-12:
        raise InvalidArgumentError(f"grid spacing {h:g} is too coarse; P(s) needs spacing <= {MAX_LSD_STEP}")
    return h


def second_difference(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order finite-difference second derivative on a uniform grid."""
    f = np.asarray(values, dtype=float)
    n = f.size
    out = np.empty(n)
    out[2 : n - 2] = (
        _CENTRAL[0] * f[: n - 4]
        + _CENTRAL[1] * f[1 : n - 3]
        + _CENTRAL[2] * f[2 : n - 2]
        + _CENTRAL[3] * f[3 : n - 1]
        + _CENTRAL[4] * f[4:]
    )
    out[0] = _EDGE_0 @ f[:6]
    out[1] = _EDGE_1 @ f[:6]
    out[-1] = _EDGE_0 @ f[::-1][:6]
    out[-2] = _EDGE_1 @ f[::-1][:6]
    return out / h**2


def head_grid(grid: Sequence[float] | np.ndarray, feature_scale: float | None = None) -> np.ndarray | None:
    """Finer grid near s = 0 on which P(s) is differentiated before joining the body of ``grid``.

    The step is the grid step over HEAD_REFINEMENT. A feature of width
    ``feature_scale`` sampled at step h leaves a derivative error growing like
    h^4 / scale^5, so when the grid step exceeds FEATURE_STEP * scale^(5/4) the
    head is refined to that step and stretched over HEAD_FEATURE_WIDTHS widths.

    Returns:
        The head grid, or None when ``grid`` is too short to split
    """
    g = _validate_grid(grid)
    h = _uniform_step(g)
    refine, cut = HEAD_REFINEMENT, HEAD_MIN_KNOTS
    if feature_scale is not None:
        resolved = FEATURE_STEP * feature_scale**1.25
        if h > resolved:
            refine = max(refine, math.ceil(h / resolved))
            cut = max(cut, math.ceil(HEAD_FEATURE_WIDTHS * feature_scale / h) + HEAD_OVERLAP)
    if cut + HEAD_MIN_KNOTS >= g.size:
        return None
    return np.arange(refine * cut + HEAD_FINE_MARGIN + 1, dtype=float) * (h / refine)


def _checked_spline(
    grid: np.ndarray, values: np.ndarray, ghost: np.ndarray | None = None
) -> tuple[BSpline, np.ndarray]:
    h = _uniform_step(grid)
    if ghost is not None:
        knots = np.concatenate([[grid[0] - 2.0 * h, grid[0] - h], grid])
        samples = np.concatenate([ghost, values])
    else:
        knots, samples = grid, values
    spline = make_interp_spline(knots, samples, k=5).derivative(2)
    p_spline = spline(grid)
    p_fd = second_difference(samples, h)[samples.size - grid.size :]
    disagreement = float(np.max(np.abs(p_spline - p_fd)))
    logger.debug("spline vs finite-difference second derivative: %.3e", disagreement)
    if disagreement > DERIVATIVE_AGREEMENT:
        worst = int(np.argmax(np.abs(p_spline - p_fd)))
        raise NumericalFailureError(
            "spline and finite-difference second derivatives disagree",
            {"s": float(grid[worst]), "difference": disagreement},
        )
    return spline, p_spline


def _second_derivative(
    curve: GapCurve, head: GapCurve | None = None
) -> tuple[Callable[[np.ndarray], np.ndarray], np.ndarray]:
    """E'' as a callable and on ``curve.grid``; the head curve, if any, supplies it near s = 0."""
    if head is None:
        spline, p = _checked_spline(curve.grid, curve.values, curve.ghost)
        return spline, p

    h = _uniform_step(curve.grid)
    refine = int(round(h / _uniform_step(head.grid)))
    cut = (head.grid.size - 1 - HEAD_FINE_MARGIN) // refine
    if (
        refine < 1
        or cut < HEAD_OVERLAP
        or cut + HEAD_MIN_KNOTS >= curve.grid.size
        or abs(head.grid[refine * cut] - curve.grid[cut]) > 1e-9 * max(1.0, h)
    ):
        raise InvalidArgumentError("head grid is not a refinement of the start of the curve grid")

    head_spline, p_head = _checked_spline(head.grid, head.values, head.ghost)
    start = cut - HEAD_OVERLAP
    body_spline, p_body = _checked_spline(curve.grid[start:], curve.values[start:])
    p = np.concatenate([p_head[: refine * cut + 1 : refine], p_body[HEAD_OVERLAP + 1 :]])
    boundary = float(curve.grid[cut])
    logger.debug("head of %d points (step h/%d) up to s=%.4g", head.grid.size, refine, boundary)

    def evaluate(s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        inside = head_spline(np.minimum(s, boundary))
        outside = body_spline(np.maximum(s, boundary))
        return np.where(s <= boundary, inside, outside)

    return evaluate, p


def _make_lsd(source: dict[str, Any], grid: np.ndarray, values: np.ndarray, **metadata: Any) -> LsdCurve:
    if np.any(values < NEGATIVE_FLOOR):
        worst = int(np.argmin(values))
        raise NumericalFailureError("P(s) below the numerical floor", {"s": grid[worst], "P": values[worst]})
    return LsdCurve(
        source=source,
        grid=grid,
        values=values,
        mass=float(trapezoid(values, grid)),
        mean=float(trapezoid(grid * values, grid)),
        metadata=metadata,
    )


def _joined_metadata(curve: GapCurve, head: GapCurve | None) -> dict[str, Any]:
    source = curve.metadata()
    if head is not None:
        source["head"] = grid_summary(head.grid)
        source["cache_keys"] = list(curve.cache_keys + head.cache_keys)
    return source


def gap_to_lsd(curve: GapCurve, head: GapCurve | None = None) -> LsdCurve:
    """P(s) = E''(s) from a quintic interpolating spline, cross-checked by finite differences.

    Args:
        curve: Gap probability on a uniform grid
        head: Optional gap probability of the same kernel on ``head_grid(curve.grid, ...)``;
            P(s) near 0 is then taken from it

    Raises:
        InvalidArgumentError: If the grid is not uniform or coarser than 0.02, or the head does not fit it
        NumericalFailureError: If the two derivative estimates disagree by more than 1e-5
    """
    _, p = _second_derivative(curve, head)
    return _make_lsd(_joined_metadata(curve, head), curve.grid, p)


def kernel_lsd(
    kernel: KernelSpec,
    grid: Sequence[float] | np.ndarray | None = None,
    m: int = DEFAULT_M,
    threads: int | None = None,
    cache: "GapCache | None" = None,
) -> LsdCurve:
    """P(s) of ``kernel``'s gap probability, with the start of the grid refined by ``head_grid``."""
    g = default_grid() if grid is None else _validate_grid(grid)
    fine = head_grid(g, kernel.feature_scale)
    curve = gap_curve(kernel, g, m, threads, cache)
    head = None if fine is None else gap_curve(kernel, fine, m, threads, cache)
    return gap_to_lsd(curve, head)


def lsd_normalization(lsd: LsdCurve) -> dict[str, Any]:
    """Normalization figures of an emitted curve and whether they are within tolerance."""
    checks = {
        "mass": lsd.mass,
        "mean": lsd.mean,
        "p0": float(lsd.values[0]),
        "min": float(np.min(lsd.values)),
        "smax": float(lsd.grid[-1]),
    }
    checks["ok"] = bool(
        checks["smax"] >= 5.0
        and 0.999 <= lsd.mass <= 1.0001
        and 0.995 <= lsd.mean <= 1.005
        and checks["p0"] <= 1e-4
        and checks["min"] >= NEGATIVE_FLOOR
    )
    return checks


def convergence_report(
    kernel: KernelSpec,
    s_list: Sequence[float],
    m_list: Sequence[int],
) -> list[ConvergenceRow]:
    """Relative shifts |E_high - E_low| / |E_high| between consecutive quadrature orders."""
    orders = [int(m) for m in m_list]
    if len(orders) < 2 or any(b <= a for a, b in zip(orders, orders[1:])):
        raise InvalidArgumentError(f"m_list must be increasing with at least two entries, got {list(m_list)}")
    rows = []
    for s in s_list:
        values = [gap_probability(kernel, float(s), m) for m in orders]
        for (m_low, low), (m_high, high) in zip(zip(orders, values), zip(orders[1:], values[1:])):
            shift = abs(high - low)
            rows.append(ConvergenceRow(float(s), m_low, m_high, shift / abs(high) if high != 0 else shift))
    return rows


def pure_class_gap(
    beta: int,
    grid: Sequence[float] | np.ndarray,
    m: int = DEFAULT_M,
    threads: int | None = None,
    cache: "GapCache | None" = None,
) -> GapCurve:
    """Exact large-N gap probability of the GOE (1), GUE (2) or GSE (4).

    GUE: the sine-kernel determinant. GOE and GSE are assembled from the
    even/odd half-line determinants E+-(t) = Det(I - K+-) on [0, t/2]:
    E_1(s) = E+(s), E_4(s) = (E+(2s) + E-(2s)) / 2.
    """
    g = _validate_grid(grid)
    if beta == 2:
        sine = gap_curve(KernelSpec.sine(), g, m, threads, cache)
        return replace(sine, label="gue")
    if beta == 1:
        even = gap_curve(KernelSpec.even(), g / 2.0, m, threads, cache)
        return replace(even, grid=g, convention="even_half_interval", label="goe")
    if beta == 4:
        even = gap_curve(KernelSpec.even(), g, m, threads, cache)
        odd = gap_curve(KernelSpec.odd(), g, m, threads, cache)
        ghost = None if even.ghost is None or odd.ghost is None else 0.5 * (even.ghost + odd.ghost)
        return GapCurve(
            kernel=None,
            m=m,
            grid=g,
            values=0.5 * (even.values + odd.values),
            convention="even_odd_average",
            label="gse",
            cache_keys=even.cache_keys + odd.cache_keys,
            ghost=ghost,
        )
    raise InvalidArgumentError(f"beta must be 1, 2 or 4, got {beta}")


def pure_class_lsd(
    beta: int,
    grid: Sequence[float] | np.ndarray | None = None,
    m: int = DEFAULT_M,
    threads: int | None = None,
    cache: "GapCache | None" = None,
) -> LsdCurve:
    """Exact LSD of a pure symmetry class, rescaled to unit mean spacing."""
    if beta not in (1, 2, 4):
        raise InvalidArgumentError(f"beta must be 1, 2 or 4, got {beta}")
    g = default_grid() if grid is None else _validate_grid(grid)
    fine = head_grid(g)
    gap = pure_class_gap(beta, g, m, threads, cache)
    head = None if fine is None else pure_class_gap(beta, fine, m, threads, cache)
    evaluate, p = _second_derivative(gap, head)
    mean = float(trapezoid(g * p, g))
    if not mean > 0:
        raise NumericalFailureError("non-positive mean spacing", {"beta": beta, "mean": mean})
    # P~(s) = c P(c s) has unit mean when c is the computed mean
    rescaled = mean * evaluate(mean * g)
    logger.info("pure class beta=%d: mean spacing %.12f before unit rescale", beta, mean)
    return _make_lsd(_joined_metadata(gap, head), g, rescaled, beta=beta, spacing_scale=mean)


def crossover_lsd(
    rho: float,
    grid: Sequence[float] | np.ndarray | None = None,
    m: int = DEFAULT_M,
    threads: int | None = None,
    cache: "GapCache | None" = None,
) -> LsdCurve:
    """Exact GOE-GUE crossover LSD at kernel parameter ``rho``.

    The dynamical sine kernel keeps unit level density for every rho, so no
    rescaling is applied; the mean is reported as computed.
    """
    lsd = kernel_lsd(KernelSpec.dynamical(rho), grid, m, threads, cache)
    logger.info(
        "crossover rho=%.6g (Lambda=%.6g): mass %.8f, mean %.8f", rho, rho_to_lambda_big(rho), lsd.mass, lsd.mean
    )
    return lsd


def tabulate_lsd(
    density: Callable[[np.ndarray], np.ndarray], grid: Sequence[float] | np.ndarray, **metadata: Any
) -> LsdCurve:
    """LsdCurve of an explicit density sampled on ``grid`` (surmises, toy inputs)."""
    g = _validate_grid(grid)
    return lsd_from_values(g, np.asarray(density(g), dtype=float), **metadata)


def lsd_from_values(
    grid: Sequence[float] | np.ndarray, values: Sequence[float] | np.ndarray, **metadata: Any
) -> LsdCurve:
    """LsdCurve from tabulated P(s), e.g. read back from a CSV file."""
    g = _validate_grid(grid)
    p = np.asarray(values, dtype=float)
    if p.shape != g.shape:
        raise InvalidArgumentError(f"{p.size} values for {g.size} grid points")
    return _make_lsd({"label": metadata.get("label", "tabulated"), "grid": grid_summary(g)}, g, p, **metadata)
