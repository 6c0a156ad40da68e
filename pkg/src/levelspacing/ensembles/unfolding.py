"""Unfolding of simulated spectra and the Monte Carlo drivers built on it."""

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np
from numpy.polynomial import polynomial
from scipy.stats import rankdata

from levelspacing.errors import InvalidArgumentError, NumericalFailureError
from levelspacing.exact.kernels import MEAN_SPACING_GOE_2X2, effective_lambda_big
from levelspacing.ensembles.sampling import EnsembleConfig, sample_levels
from levelspacing.samples import SpacingSample

logger = logging.getLogger(__name__)

MIN_SPECTRA = 10
MIN_BULK_LEVELS = 3
CENTER_FRACTION = 0.1
STAIRCASE_DEGREES = (0, 1, 3, 5, 7)


def _window(n_levels: int, fraction: float) -> slice:
    cut = int(round(n_levels * (1.0 - fraction) / 2.0))
    return slice(cut, n_levels - cut)


def central_spacing(spectra: Sequence[np.ndarray], fraction: float = CENTER_FRACTION) -> float:
    """Mean raw spacing among the central ``fraction`` of levels, averaged over spectra."""
    means = []
    for levels in spectra:
        ordered = np.sort(levels)
        k = max(2, int(round(ordered.size * fraction)))
        start = (ordered.size - k) // 2
        means.append(float(np.mean(np.diff(ordered[start : start + k]))))
    return float(np.mean(means))


def fit_staircase(
    pooled: np.ndarray, counts: np.ndarray, n_spectra: int, degrees: Sequence[int] = STAIRCASE_DEGREES
) -> tuple[np.ndarray, float]:
    """Least-squares polynomial in the odd ``degrees`` (plus offset) through the averaged staircase.

    Returns coefficients in u = energy / scale and the scale.
    """
    scale = float(np.max(np.abs(pooled))) or 1.0
    coefficients = polynomial.polyfit(pooled / scale, counts / n_spectra, list(degrees))
    return coefficients, scale


def _bulk(config: EnsembleConfig, spectra: Sequence[np.ndarray]) -> list[np.ndarray]:
    if len(spectra) < MIN_SPECTRA:
        raise InvalidArgumentError(f"unfolding needs at least {MIN_SPECTRA} spectra, got {len(spectra)}")
    bulk = []
    for levels in spectra:
        ordered = np.sort(np.asarray(levels, dtype=float))
        kept = ordered[_window(ordered.size, config.bulk_fraction)]
        if kept.size < MIN_BULK_LEVELS:
            raise InvalidArgumentError(
                f"only {kept.size} levels left after the bulk cut (bulk_fraction={config.bulk_fraction})"
            )
        bulk.append(kept)
    return bulk


def unfold_levels(config: EnsembleConfig, spectra: Sequence[np.ndarray]) -> tuple[list[np.ndarray], int]:
    """Bulk levels of every spectrum mapped through the fitted staircase N(E).

    The staircase starts at degree 7. If it is not increasing across the
    bulk levels of every spectrum, it is refitted with the top odd degree
    dropped (5, 3, then linear).

    Returns:
        Unfolded bulk levels per spectrum and the staircase degree used

    Raises:
        InvalidArgumentError: With fewer than 10 spectra or too few bulk levels
        NumericalFailureError: If even the linear staircase is not increasing
    """
    bulk = _bulk(config, spectra)
    pooled = np.concatenate(bulk)
    counts = rankdata(pooled, method="average")
    negative = 0
    for top in range(len(STAIRCASE_DEGREES), 1, -1):
        degrees = STAIRCASE_DEGREES[:top]
        coefficients, scale = fit_staircase(pooled, counts, len(bulk), degrees)
        unfolded = [polynomial.polyval(levels / scale, coefficients) for levels in bulk]
        negative = sum(int(np.sum(np.diff(levels) <= 0)) for levels in unfolded)
        if negative == 0:
            return unfolded, degrees[-1]
        logger.warning("degree-%d staircase decreases at %d bulk levels; lowering the degree", degrees[-1], negative)
    raise NumericalFailureError("unfolded levels are not increasing", {"negative": negative})


def unfold_and_collect(config: EnsembleConfig, spectra: Sequence[np.ndarray]) -> SpacingSample:
    """Unfold the central bulk of every spectrum and pool unit-mean spacings.

    The integrated density is the mid-rank staircase of all bulk levels, divided
    by the number of spectra, fitted by ``fit_staircase`` (see ``unfold_levels``).
    Spacings are taken within each spectrum and finally rescaled to mean exactly 1.

    Raises:
        InvalidArgumentError: With fewer than 10 spectra or too few bulk levels
        NumericalFailureError: If no staircase fit is increasing on the bulk
    """
    unfolded, degree = unfold_levels(config, spectra)
    raw = np.concatenate([np.diff(levels) for levels in unfolded])
    raw_mean = float(np.mean(raw))

    delta = central_spacing(spectra)
    lambda_big = effective_lambda_big(config.alpha, MEAN_SPACING_GOE_2X2, delta) if config.is_crossover else None
    sample = SpacingSample(
        spacings=raw / raw_mean,
        scale=raw_mean,
        raw_mean=raw_mean,
        lambda_big_measured=lambda_big,
        config={**config.to_dict(), "delta": delta, "staircase_degree": degree},
    )
    logger.info(
        "unfolded %d spectra: %d spacings, Delta=%.6g, Lambda=%s",
        len(spectra),
        sample.n_kept,
        delta,
        "n/a" if lambda_big is None else f"{lambda_big:.6g}",
    )
    return sample


def collect_spectra(config: EnsembleConfig, threads: int | None = None) -> list[np.ndarray]:
    """Spectra of every sample, in sample order."""
    indices = range(config.n_samples)
    if threads is None or threads <= 1:
        return [sample_levels(config, i) for i in indices]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda i: sample_levels(config, i), indices))


def simulate(config: EnsembleConfig, threads: int | None = None) -> SpacingSample:
    """Sample, diagonalize and unfold ``config.n_samples`` matrices."""
    return unfold_and_collect(config, collect_spectra(config, threads))


def estimated_center_spacing(n: int, alpha: float) -> float:
    """Semicircle estimate pi / sqrt(2 N (1 + alpha^2)) of the central spacing."""
    return math.pi / math.sqrt(2.0 * n * (1.0 + alpha**2))


def solve_alpha_for_lambda(
    target: float,
    config: EnsembleConfig,
    pilot_samples: int = 50,
    rel_tol: float = 1e-3,
    max_iter: int = 12,
    threads: int | None = None,
) -> float:
    """Find alpha whose measured Lambda equals ``target`` by secant iteration.

    Every iterate reuses the same seeds on a pilot run of ``pilot_samples``
    matrices, so the measured Lambda is a smooth function of alpha.

    Raises:
        InvalidArgumentError: If target <= 0 or the pair is not GOE-GUE
        NumericalFailureError: If the iteration does not reach ``rel_tol``
    """
    if not target > 0:
        raise InvalidArgumentError(f"target Lambda must be positive, got {target}")
    if not config.is_crossover:
        raise InvalidArgumentError("a Lambda target needs the GOE-GUE pair (beta=1, beta_prime=2)")
    pilot = replace(config, n_samples=max(MIN_SPECTRA, min(pilot_samples, config.n_samples)))

    def measured(alpha: float) -> float:
        spectra = collect_spectra(replace(pilot, alpha=alpha), threads)
        value = effective_lambda_big(alpha, MEAN_SPACING_GOE_2X2, central_spacing(spectra))
        logger.debug("alpha=%.8g -> Lambda=%.8g", alpha, value)
        return value

    a0 = target * estimated_center_spacing(config.n, 0.0) / MEAN_SPACING_GOE_2X2
    a1 = 1.05 * a0
    f0, f1 = measured(a0) - target, measured(a1) - target
    for _ in range(max_iter):
        if abs(f1) <= rel_tol * target:
            logger.info("alpha=%.8g gives Lambda=%.8g (target %.6g)", a1, f1 + target, target)
            return a1
        if f1 == f0:
            break
        a0, a1 = a1, max(a1 - f1 * (a1 - a0) / (f1 - f0), 1e-12)
        f0, f1 = f1, measured(a1) - target
    if abs(f1) <= rel_tol * target:
        return a1
    raise NumericalFailureError("alpha solve did not converge", {"target": target, "alpha": a1, "residual": f1})
