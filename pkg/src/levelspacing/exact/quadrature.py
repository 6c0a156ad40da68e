"""Gauss-Legendre quadrature rules.

Nodes are the roots of the degree-m Legendre polynomial, found by a
safeguarded Newton iteration on the three-term recurrence. Each root is
bracketed by the Bruns inequalities, so a Newton step that leaves its bracket
is replaced by a bisection step.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import erf

from levelspacing.errors import InvalidArgumentError, NumericalFailureError

logger = logging.getLogger(__name__)

MAX_ORDER = 10_000
_MAX_ITERATIONS = 100


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Immutable Gauss-Legendre rule on ``interval``.

    Attributes:
        order: Number of nodes m
        nodes: Strictly increasing nodes inside the interval
        weights: Positive weights, summing to the interval length
        interval: (a, b) with a < b
    """

    order: int
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    def __post_init__(self) -> None:
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def length(self) -> float:
        return self.interval[1] - self.interval[0]

    def integrate(self, values: np.ndarray) -> float:
        """Apply the rule to function values sampled at ``nodes``."""
        return float(np.dot(self.weights, values))


def legendre(m: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate P_m and P_m' at ``x`` by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if m == 0:
        return p_prev, np.zeros_like(x)
    p = x.copy()
    for k in range(2, m + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = m * (p_prev - x * p) / ((1.0 - x) * (1.0 + x))
    return p, dp


@lru_cache(maxsize=64)
def _reference_rule(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (ascending) and weights on [-1, 1]."""
    half = (m + 1) // 2
    k = np.arange(1, half + 1, dtype=float)
    theta_hi = k * np.pi / (m + 0.5)
    theta_lo = (k - 0.5) * np.pi / (m + 0.5)
    lo = np.cos(theta_hi)
    hi = np.cos(theta_lo)

    # Chebyshev-type angles with Tricomi's first-order correction
    x = (1.0 - 1.0 / (8.0 * m**2) + 1.0 / (8.0 * m**3)) * np.cos((k - 0.25) * np.pi / (m + 0.5))
    sign_lo = np.sign(legendre(m, lo)[0])

    for iteration in range(_MAX_ITERATIONS):
        p, dp = legendre(m, x)
        below = np.sign(p) == sign_lo
        lo = np.where(below, x, lo)
        hi = np.where(below, hi, x)

        candidate = x - p / dp
        outside = ~((candidate > lo) & (candidate < hi)) | ~np.isfinite(candidate)
        x_new = np.where(outside, 0.5 * (lo + hi), candidate)
        step = np.max(np.abs(x_new - x))
        x = x_new
        if step <= 1e-15:
            break
    else:
        raise NumericalFailureError("Legendre root iteration did not converge", {"m": m})
    logger.debug("Gauss-Legendre m=%d converged after %d iterations", m, iteration + 1)

    if m % 2 == 1:
        x[-1] = 0.0
    _, dp = legendre(m, x)
    w = 2.0 / ((1.0 - x) * (1.0 + x) * dp**2)

    # x holds the non-negative roots in descending order
    if m % 2 == 1:
        nodes = np.concatenate([-x, x[-2::-1]])
        weights = np.concatenate([w, w[-2::-1]])
    else:
        nodes = np.concatenate([-x, x[::-1]])
        weights = np.concatenate([w, w[::-1]])
    return nodes, weights


def gauss_legendre(m: int) -> QuadratureRule:
    """Gauss-Legendre rule of order ``m`` on [0, 1].

    Args:
        m: Number of nodes, 1 <= m <= MAX_ORDER

    Returns:
        QuadratureRule on (0.0, 1.0)

    Raises:
        InvalidArgumentError: If m is outside [1, MAX_ORDER]
    """
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or not 1 <= m <= MAX_ORDER:
        raise InvalidArgumentError(f"quadrature order must be an integer in [1, {MAX_ORDER}], got {m!r}")
    m = int(m)
    ref_nodes, ref_weights = _reference_rule(m)
    return QuadratureRule(
        order=m,
        nodes=0.5 * (ref_nodes + 1.0),
        weights=0.5 * ref_weights,
        interval=(0.0, 1.0),
    )


def rescale(rule: QuadratureRule, a: float, b: float) -> QuadratureRule:
    """Map ``rule`` affinely onto [a, b].

    Raises:
        InvalidArgumentError: If a >= b
    """
    if not a < b:
        raise InvalidArgumentError(f"interval must satisfy a < b, got ({a}, {b})")
    a0, b0 = rule.interval
    scale = (b - a) / (b0 - a0)
    return QuadratureRule(
        order=rule.order,
        nodes=a + (rule.nodes - a0) * scale,
        weights=rule.weights * scale,
        interval=(float(a), float(b)),
    )


def lagrange_basis(rule: QuadratureRule, points: np.ndarray) -> np.ndarray:
    """Values l_j(y) of the Lagrange basis on ``rule.nodes``; shape (len(points), m).

    Barycentric form with the Gauss-Legendre weights (-1)^j sqrt((x_j - a)(b - x_j) w_j).
    """
    y = np.asarray(points, dtype=float).reshape(-1)
    x = rule.nodes
    a, b = rule.interval
    lam = (-1.0) ** np.arange(rule.order) * np.sqrt((x - a) * (b - x) * rule.weights)
    diff = y[:, None] - x[None, :]
    on_node = diff == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = lam[None, :] / diff
        basis = terms / terms.sum(axis=1, keepdims=True)
    hit = on_node.any(axis=1)
    basis[hit] = on_node[hit].astype(float)
    return basis


def step_convolution_weights(rule: QuadratureRule, width: float, chunk: int = 16) -> np.ndarray:
    """Product-integration weights of a smoothed step against the node interpolant.

    Entry (i, j) is the integral over the rule interval of
    0.5 * erf((x_i - y) / width) * l_j(y) dy; ``width == 0`` gives 0.5 * sign.
    Each row is split at x_i and at x_i +- 6 width. Outside that window the
    step is constant and a rule of m // 2 + 1 points is exact; inside it a
    rule of m // 2 + 24 points absorbs the erf.

    Raises:
        InvalidArgumentError: If width < 0
    """
    if not width >= 0.0:
        raise InvalidArgumentError(f"step width must be nonnegative, got {width}")
    m = rule.order
    a, b = rule.interval
    far = gauss_legendre(m // 2 + 1)
    near = gauss_legendre(m // 2 + 24)
    reach = 6.0 * width
    out = np.empty((m, m))
    for start in range(0, m, chunk):
        centers = rule.nodes[start : start + chunk]
        left = np.maximum(a, centers - reach)
        right = np.minimum(b, centers + reach)
        rows = _piece(far, a, left, _half, centers, rule)
        rows -= _piece(far, right, b, _half, centers, rule)
        if width > 0.0:

            def smooth(y: np.ndarray, c: np.ndarray) -> np.ndarray:
                return 0.5 * erf((c - y) / width)

            rows += _piece(near, left, centers, smooth, centers, rule)
            rows += _piece(near, centers, right, smooth, centers, rule)
        out[start : start + chunk] = rows
    return out


def _piece(
    reference: QuadratureRule,
    lower: float | np.ndarray,
    upper: float | np.ndarray,
    step: Callable[[np.ndarray, np.ndarray], np.ndarray],
    centers: np.ndarray,
    rule: QuadratureRule,
) -> np.ndarray:
    """Row-wise integrals of step(y, x_i) l_j(y) over [lower_i, upper_i]."""
    lo = np.broadcast_to(np.asarray(lower, dtype=float), centers.shape)
    length = np.broadcast_to(np.asarray(upper, dtype=float), centers.shape) - lo
    y = lo[:, None] + length[:, None] * reference.nodes[None, :]
    weights = length[:, None] * reference.weights[None, :] * step(y, centers[:, None])
    basis = lagrange_basis(rule, y).reshape(centers.size, reference.order, rule.order)
    return np.einsum("rq,rqj->rj", weights, basis)


def _half(y: np.ndarray, c: np.ndarray) -> np.ndarray:
    return np.full(np.broadcast_shapes(y.shape, c.shape), 0.5)
