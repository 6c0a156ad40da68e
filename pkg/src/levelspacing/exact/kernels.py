"""Integral-operator kernels for bulk gap probabilities.

Scalar kernels: the sine kernel (GUE) and its even/odd projections onto the
half line (building blocks of the GOE and GSE gap probabilities).

Block kernel: the 2x2 dynamical sine kernel of the GOE-GUE transition,

    [[S(r), D(r)], [I(r), S(r)]],  r = x - y,

    S(r) = sin(pi r) / (pi r)
    D(r) = (1/pi) int_0^pi   k exp(+2 rho^2 k^2) sin(k r) dk
    I(r) = (1/pi) int_pi^oo  (1/k) exp(-2 rho^2 k^2) sin(k r) dk

The off-diagonal blocks are returned balanced, D * exp(-2 rho^2 pi^2) and
I * exp(+2 rho^2 pi^2). Block determinants only see the product D I, so the
similarity leaves them unchanged while keeping every integrand bounded.

Below PRODUCT_RHO the near-jump 0.5 erf(r / (2 sqrt(2) rho)) of I is too steep for
node sampling; the Nystrom operator integrates it against the Lagrange
interpolant of the nodes instead, which restores spectral convergence in m.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import erf, sici

from levelspacing.errors import InvalidArgumentError, NumericalFailureError
from levelspacing.exact.quadrature import QuadratureRule, gauss_legendre, rescale, step_convolution_weights

logger = logging.getLogger(__name__)

SQRT_2PI = math.sqrt(2.0 * math.pi)
MEAN_SPACING_GOE_2X2 = math.sqrt(math.pi)

RHO_MAX = 20.0
SMALL_RHO = 1e-3
TAIL_RHO = 0.3
PRODUCT_RHO = 0.05

_EXPONENT_CUTOFF = 40.0
_START_ORDER = 32
_MAX_ORDER = 4096
_REL_TOL = 1e-12
_CHUNK = 2048


class KernelKind(str, Enum):
    SINE = "sine"
    SINE_EVEN = "even"
    SINE_ODD = "odd"
    DYNAMICAL_SINE = "dyn"


@dataclass(frozen=True)
class CrossoverParam:
    """Crossover strength. rho is stored; Lambda = sqrt(2 pi) rho is derived."""

    rho: float

    def __post_init__(self) -> None:
        if not self.rho >= 0.0:
            raise InvalidArgumentError(f"rho must be nonnegative, got {self.rho}")

    @property
    def lambda_big(self) -> float:
        return SQRT_2PI * self.rho

    @classmethod
    def from_lambda_big(cls, lambda_big: float) -> "CrossoverParam":
        return cls(rho=lambda_big_to_rho(lambda_big))


@dataclass(frozen=True)
class KernelSpec:
    """Identifies the kernel of a Fredholm determinant."""

    kind: KernelKind
    rho: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", KernelKind(self.kind))
        if self.kind is KernelKind.DYNAMICAL_SINE:
            if self.rho is None:
                raise InvalidArgumentError("the dynamical sine kernel requires rho")
            _check_rho(self.rho)
            object.__setattr__(self, "rho", float(self.rho))
        elif self.rho is not None:
            raise InvalidArgumentError(f"rho is only meaningful for the dynamical kernel, not {self.kind.value}")

    @classmethod
    def sine(cls) -> "KernelSpec":
        return cls(KernelKind.SINE)

    @classmethod
    def even(cls) -> "KernelSpec":
        return cls(KernelKind.SINE_EVEN)

    @classmethod
    def odd(cls) -> "KernelSpec":
        return cls(KernelKind.SINE_ODD)

    @classmethod
    def dynamical(cls, rho: float) -> "KernelSpec":
        return cls(KernelKind.DYNAMICAL_SINE, rho)

    @classmethod
    def crossover(cls, param: CrossoverParam) -> "KernelSpec":
        return cls.dynamical(param.rho)

    @property
    def param(self) -> CrossoverParam | None:
        return None if self.rho is None else CrossoverParam(self.rho)

    @property
    def block_size(self) -> int:
        return 2 if self.kind is KernelKind.DYNAMICAL_SINE else 1

    @property
    def feature_scale(self) -> float | None:
        """Width of the erf step in I, the shortest length in the kernel; None without one."""
        if self.rho is None:
            return None
        width = _step_width(self.rho)
        return width or None

    @property
    def label(self) -> str:
        if self.rho is None:
            return self.kind.value
        return f"{self.kind.value}(rho={self.rho:.12g})"

    def matrix(self, nodes: np.ndarray) -> np.ndarray:
        """Kernel values K(x_i, x_j) on ``nodes``; shape (m, m) or (2m, 2m)."""
        x = np.asarray(nodes, dtype=float)
        if self.kind is KernelKind.SINE:
            return np.sinc(x[:, None] - x[None, :])
        if self.kind is KernelKind.SINE_EVEN:
            return np.sinc(x[:, None] - x[None, :]) + np.sinc(x[:, None] + x[None, :])
        if self.kind is KernelKind.SINE_ODD:
            return np.sinc(x[:, None] - x[None, :]) - np.sinc(x[:, None] + x[None, :])
        assert self.rho is not None
        return _dynamical_matrix(x, self.rho)

    def operator(self, rule: QuadratureRule) -> np.ndarray:
        """Nystrom matrix A with (A u)_i ~ int K(x_i, y) u(y) dy over the rule interval.

        Pointwise kernels give K(x_i, x_j) w_j; the small-rho dynamical kernel
        adds product-integration weights for the step in its I block.
        """
        if self.kind is KernelKind.DYNAMICAL_SINE:
            assert self.rho is not None
            return _dynamical_operator(rule, self.rho)
        return self.matrix(rule.nodes) * rule.weights[None, :]

    def to_dict(self) -> dict[str, object]:
        return {"kind": self.kind.value, "rho": self.rho}


def _check_rho(rho: float) -> None:
    if not np.isfinite(rho) or rho <= 0.0:
        raise InvalidArgumentError(
            f"the dynamical kernel needs rho > 0 (got {rho}); request the GOE limit through the even/odd kernels"
        )
    if rho > RHO_MAX:
        raise InvalidArgumentError(f"rho={rho} exceeds the supported cap rho <= {RHO_MAX}")


def sine_kernel(x: float, y: float) -> float:
    """sin(pi (x - y)) / (pi (x - y)), equal to 1 on the diagonal."""
    return float(np.sinc(x - y))


def sine_kernel_projected(x: float, y: float, parity: str) -> float:
    """Even (``+``) or odd (``-``) half-line projection of the sine kernel."""
    if x < 0 or y < 0:
        raise InvalidArgumentError(f"projected kernels are defined for x, y >= 0, got ({x}, {y})")
    if parity == "even":
        return float(np.sinc(x - y) + np.sinc(x + y))
    if parity == "odd":
        return float(np.sinc(x - y) - np.sinc(x + y))
    raise InvalidArgumentError(f"parity must be 'even' or 'odd', got {parity!r}")


def dynamical_kernel(x: float, y: float, rho: float) -> np.ndarray:
    """2x2 block [[S, D], [I, S]] of the GOE-GUE dynamical sine kernel at r = x - y."""
    _check_rho(rho)
    r = np.array([x - y], dtype=float)
    s, d, i = dynamical_blocks(r, rho)
    return np.array([[s[0], d[0]], [i[0], s[0]]])


def dynamical_blocks(r: np.ndarray, rho: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """S, D and I evaluated at separations ``r`` (balanced normalization)."""
    _check_rho(rho)
    r = np.asarray(r, dtype=float)
    a = np.abs(r)
    sign = np.sign(r)
    r_max = float(a.max()) if a.size else 0.0
    return np.sinc(r), sign * _d_balanced(a, rho, r_max), sign * _i_balanced(a, rho, r_max)


def _dynamical_matrix(x: np.ndarray, rho: float) -> np.ndarray:
    s, d, i = _dynamical_parts(x, rho, without_step=False)
    return np.block([[s, d], [i, s]])


def _dynamical_operator(rule: QuadratureRule, rho: float) -> np.ndarray:
    x = rule.nodes
    product = rho < PRODUCT_RHO
    s, d, i = _dynamical_parts(x, rho, without_step=product)
    op = np.block([[s, d], [i, s]]) * np.tile(rule.weights, 2)[None, :]
    if product:
        # the near-jump of I is integrated against the node interpolant, not sampled
        op[x.size :, : x.size] += _boost(rho) * step_convolution_weights(rule, _step_width(rho))
    return op


def _dynamical_parts(x: np.ndarray, rho: float, without_step: bool) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    m = x.size
    iu, ju = np.triu_indices(m, k=1)
    sep = x[ju] - x[iu]
    r_max = float(sep.max()) if sep.size else 0.0
    d_upper = _d_balanced(sep, rho, r_max)
    if without_step:
        i_upper = -_boost(rho) * _i_smooth(sep, rho, r_max)
    else:
        i_upper = _i_balanced(sep, rho, r_max)

    d = np.zeros((m, m))
    i = np.zeros((m, m))
    # x is ascending, so x_i - x_j < 0 above the diagonal
    d[iu, ju] = -d_upper
    d[ju, iu] = d_upper
    i[iu, ju] = -i_upper
    i[ju, iu] = i_upper
    return np.sinc(x[:, None] - x[None, :]), d, i


def _d_balanced(a: np.ndarray, rho: float, r_max: float) -> np.ndarray:
    # k = pi - t; exp(2 rho^2 (k^2 - pi^2)) = exp(-2 rho^2 t (2 pi - t)) <= exp(-2 rho^2 pi t)
    upper = min(math.pi, _EXPONENT_CUTOFF / (2.0 * math.pi * rho**2))

    def integrand(t: np.ndarray, r: np.ndarray) -> np.ndarray:
        k = math.pi - t
        return k * np.exp(-2.0 * rho**2 * t * (2.0 * math.pi - t)) * np.sin(k * r)

    return _adaptive_integral(integrand, upper, a, r_max) / math.pi


def _boost(rho: float) -> float:
    # only used below TAIL_RHO, where it stays under exp(2 pi^2 TAIL_RHO^2)
    return math.exp(2.0 * rho**2 * math.pi**2)


def _step_width(rho: float) -> float:
    return 0.0 if rho < SMALL_RHO else 2.0 * math.sqrt(2.0) * rho


def _i_balanced(a: np.ndarray, rho: float, r_max: float) -> np.ndarray:
    if rho < TAIL_RHO:
        width = _step_width(rho)
        step = 0.5 * (a > 0) if width == 0.0 else 0.5 * erf(a / width)
        return _boost(rho) * (step - _i_smooth(a, rho, r_max))

    # k = pi + t; exp(-2 rho^2 (k^2 - pi^2)) = exp(-2 rho^2 t (2 pi + t))
    upper = -math.pi + math.sqrt(math.pi**2 + _EXPONENT_CUTOFF / (2.0 * rho**2))

    def tail(t: np.ndarray, r: np.ndarray) -> np.ndarray:
        k = math.pi + t
        return np.exp(-2.0 * rho**2 * t * (2.0 * math.pi + t)) * np.sin(k * r) / k

    return _adaptive_integral(tail, upper, a, r_max) / math.pi


def _i_smooth(a: np.ndarray, rho: float, r_max: float) -> np.ndarray:
    """(1/pi) int_0^pi exp(-2 rho^2 k^2) sin(k a) / k dk, or Si(pi a) / pi below SMALL_RHO."""
    if rho < SMALL_RHO:
        si, _ = sici(math.pi * a)
        return si / math.pi

    def head(k: np.ndarray, r: np.ndarray) -> np.ndarray:
        return np.exp(-2.0 * rho**2 * k**2) * r * np.sinc(k * r / math.pi)

    return _adaptive_integral(head, math.pi, a, r_max) / math.pi


def _adaptive_integral(
    integrand: Callable[[np.ndarray, np.ndarray], np.ndarray],
    upper: float,
    r: np.ndarray,
    r_max: float,
) -> np.ndarray:
    """Integrate ``integrand(t, r)`` over t in [0, upper] for every r.

    The order is chosen on fixed trial points in [0, r_max] by doubling until two
    successive orders agree, then applied to all of ``r`` in chunks, so the
    result does not depend on how the separations are batched.
    """
    order = _choose_order(integrand, upper, max(r_max, 1e-3))
    rule = rescale(gauss_legendre(order), 0.0, upper)
    out = np.empty(r.shape, dtype=float)
    flat_r = r.reshape(-1)
    flat_out = out.reshape(-1)
    for start in range(0, flat_r.size, _CHUNK):
        chunk = flat_r[start : start + _CHUNK]
        flat_out[start : start + _CHUNK] = integrand(rule.nodes[None, :], chunk[:, None]) @ rule.weights
    return out


def _choose_order(
    integrand: Callable[[np.ndarray, np.ndarray], np.ndarray],
    upper: float,
    r_max: float,
) -> int:
    trial = np.linspace(0.0, r_max, 65)[:, None]

    def apply(order: int) -> np.ndarray:
        rule = rescale(gauss_legendre(order), 0.0, upper)
        return integrand(rule.nodes[None, :], trial) @ rule.weights

    order = _START_ORDER
    previous = apply(order)
    while order < _MAX_ORDER:
        order *= 2
        current = apply(order)
        scale = max(1.0, float(np.max(np.abs(current))))
        if float(np.max(np.abs(current - previous))) <= _REL_TOL * scale:
            logger.debug("kernel integral on [0, %.6g] resolved at order %d", upper, order // 2)
            return order // 2
        previous = current
    raise NumericalFailureError("kernel integral did not converge", {"upper": upper, "r_max": r_max})


def lambda_big_to_rho(lambda_big: float) -> float:
    """Map Lambda to the kernel parameter rho = Lambda / sqrt(2 pi)."""
    if not lambda_big >= 0.0:
        raise InvalidArgumentError(f"Lambda must be nonnegative, got {lambda_big}")
    return lambda_big / SQRT_2PI


def rho_to_lambda_big(rho: float) -> float:
    if not rho >= 0.0:
        raise InvalidArgumentError(f"rho must be nonnegative, got {rho}")
    return SQRT_2PI * rho


def effective_lambda_big(alpha: float, mean_spacing_2x2: float, delta: float) -> float:
    """Spacing-rescaled crossover strength Lambda = (s_bar / Delta) * alpha.

    Args:
        alpha: Bare perturbation strength of the N x N model
        mean_spacing_2x2: Mean spacing of the unperturbed 2x2 matrix (sqrt(pi) for GOE)
        delta: Local mean level spacing of the N x N spectrum

    Raises:
        InvalidArgumentError: If delta <= 0, mean_spacing_2x2 <= 0 or alpha < 0
    """
    if not (np.isfinite(delta) and delta > 0):
        raise InvalidArgumentError(f"delta must be positive, got {delta}")
    if not (np.isfinite(mean_spacing_2x2) and mean_spacing_2x2 > 0):
        raise InvalidArgumentError(f"mean spacing must be positive, got {mean_spacing_2x2}")
    if not (np.isfinite(alpha) and alpha >= 0):
        raise InvalidArgumentError(f"alpha must be nonnegative, got {alpha}")
    return (mean_spacing_2x2 / delta) * alpha
