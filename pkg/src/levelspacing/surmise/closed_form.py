"""Wigner-surmised spacing densities of 2x2 Gaussian matrices.

Pure classes use P(s) = 2 a^((b+1)/2) / Gamma((b+1)/2) s^b exp(-a s^2) with a
fixed by unit mean. The GOE-GUE crossover surmise is the spacing density of
H = H1 + lambda H2 with H1 real symmetric and H2 complex Hermitian: the raw
spacing is the norm of a centered Gaussian vector with variances
(2(1 + lambda^2), 2(1 + lambda^2), 2 lambda^2), which gives

    P(s) = mu (mu s / (2 c)) exp(-mu^2 s^2 / (4 c^2)) erf(mu s / (2 lambda c)),

c = sqrt(1 + lambda^2) and mu = (2 / sqrt(pi)) [lambda + c^2 arctan(1 / lambda)]
the raw mean spacing.
"""

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.special import erf, gamma, gammainc

from levelspacing.errors import InvalidArgumentError

PURE_EXPONENTS = {1: math.pi / 4.0, 2: 4.0 / math.pi, 4: 64.0 / (9.0 * math.pi)}


def _finish(values: np.ndarray, scalar: bool) -> Any:
    return float(values) if scalar else values


def _as_spacing(s: Any) -> tuple[np.ndarray, bool]:
    arr = np.asarray(s, dtype=float)
    if np.any(arr < 0) or np.any(~np.isfinite(arr)):
        raise InvalidArgumentError("spacings must be finite and nonnegative")
    return arr, arr.ndim == 0


def _check_beta(beta: int) -> float:
    if beta not in PURE_EXPONENTS:
        raise InvalidArgumentError(f"beta must be 1, 2 or 4, got {beta}")
    return PURE_EXPONENTS[beta]


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if math.isnan(lam) or lam < 0:
        raise InvalidArgumentError(f"lambda must be nonnegative, got {lam}")
    return lam


def wigner_surmise_pure(beta: int, s: Any) -> Any:
    """Unit-mean surmise of the GOE (1), GUE (2) or GSE (4)."""
    a = _check_beta(beta)
    x, scalar = _as_spacing(s)
    k = (beta + 1) / 2.0
    values = 2.0 * a**k / gamma(k) * x**beta * np.exp(-a * x**2)
    return _finish(values, scalar)


def wigner_surmise_pure_cdf(beta: int, s: Any) -> Any:
    a = _check_beta(beta)
    x, scalar = _as_spacing(s)
    return _finish(gammainc((beta + 1) / 2.0, a * x**2), scalar)


def crossover_mean_spacing(lam: float) -> float:
    """Raw mean spacing mu(lambda) of the 2x2 crossover matrix; sqrt(pi) at lambda = 0."""
    lam = _check_lambda(lam)
    if lam == 0:
        return math.sqrt(math.pi)
    if math.isinf(lam):
        raise InvalidArgumentError("the raw mean spacing diverges as lambda -> infinity")
    return 2.0 / math.sqrt(math.pi) * (lam + (1.0 + lam**2) * math.atan(1.0 / lam))


def crossover_surmise(s: Any, lam: float) -> Any:
    """Unit-mean GOE-GUE crossover surmise; lambda = 0 and infinity give the pure forms."""
    lam = _check_lambda(lam)
    if lam == 0:
        return wigner_surmise_pure(1, s)
    if math.isinf(lam):
        return wigner_surmise_pure(2, s)
    x, scalar = _as_spacing(s)
    mu = crossover_mean_spacing(lam)
    c = math.sqrt(1.0 + lam**2)
    r = mu * x
    values = mu * (r / (2.0 * c)) * np.exp(-(r**2) / (4.0 * c**2)) * erf(r / (2.0 * lam * c))
    return _finish(values, scalar)


def crossover_surmise_cdf(s: Any, lam: float) -> Any:
    lam = _check_lambda(lam)
    if lam == 0:
        return wigner_surmise_pure_cdf(1, s)
    if math.isinf(lam):
        return wigner_surmise_pure_cdf(2, s)
    x, scalar = _as_spacing(s)
    mu = crossover_mean_spacing(lam)
    c = math.sqrt(1.0 + lam**2)
    r = mu * x
    values = erf(r / (2.0 * lam)) - c * np.exp(-(r**2) / (4.0 * c**2)) * erf(r / (2.0 * lam * c))
    return _finish(values, scalar)


@dataclass(frozen=True)
class SurmiseSpec:
    """A pure surmise (``beta``) or a crossover surmise (``lam``), never both."""

    beta: int | None = None
    lam: float | None = None

    def __post_init__(self) -> None:
        if (self.beta is None) == (self.lam is None):
            raise InvalidArgumentError("give exactly one of beta or lambda")
        if self.beta is not None:
            _check_beta(self.beta)
        else:
            object.__setattr__(self, "lam", _check_lambda(self.lam))  # type: ignore[arg-type]

    @classmethod
    def pure(cls, beta: int) -> "SurmiseSpec":
        return cls(beta=beta)

    @classmethod
    def crossover(cls, lam: float) -> "SurmiseSpec":
        return cls(lam=lam)

    @property
    def label(self) -> str:
        return f"pure(beta={self.beta})" if self.beta is not None else f"crossover(lambda={self.lam:.12g})"

    def pdf(self, s: Any) -> Any:
        if self.beta is not None:
            return wigner_surmise_pure(self.beta, s)
        assert self.lam is not None
        return crossover_surmise(s, self.lam)

    def cdf(self, s: Any) -> Any:
        if self.beta is not None:
            return wigner_surmise_pure_cdf(self.beta, s)
        assert self.lam is not None
        return crossover_surmise_cdf(s, self.lam)

    def to_dict(self) -> dict[str, Any]:
        return {"beta": self.beta, "lambda": self.lam}
