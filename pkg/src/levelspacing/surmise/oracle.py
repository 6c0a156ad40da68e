"""Direct 2x2 Monte Carlo of the crossover matrix H = H1 + lambda H2."""

import logging
from collections.abc import Callable
from typing import Any

import numpy as np
from scipy.optimize import brentq
from scipy.stats import kstest

from levelspacing.errors import InvalidArgumentError
from levelspacing.rng import substream
from levelspacing.samples import SpacingSample
from levelspacing.surmise.closed_form import _check_lambda, crossover_mean_spacing

logger = logging.getLogger(__name__)

CHUNK = 65_536


def raw_spacings_2x2(lam: float, n_samples: int, seed: int) -> np.ndarray:
    """Eigenvalue spacings of n_samples 2x2 crossover matrices, unnormalized.

    Diagonal entries have variance 1 + lambda^2, the real part of the
    off-diagonal (1 + lambda^2) / 2 and its imaginary part lambda^2 / 2. Chunk
    k of CHUNK draws comes from the substream (seed, k).
    """
    lam = _check_lambda(lam)
    if isinstance(n_samples, bool) or int(n_samples) != n_samples or n_samples < 1:
        raise InvalidArgumentError(f"n_samples must be a positive integer, got {n_samples}")
    diag_sd = np.sqrt(1.0 + lam**2)
    re_sd = np.sqrt((1.0 + lam**2) / 2.0)
    im_sd = lam / np.sqrt(2.0)

    out = np.empty(int(n_samples))
    for index, start in enumerate(range(0, int(n_samples), CHUNK)):
        size = min(CHUNK, int(n_samples) - start)
        # one row of four draws per sample, so a shorter run is a prefix of a longer one
        z = substream(seed, index).standard_normal((size, 4))
        a, d = diag_sd * z[:, 0], diag_sd * z[:, 1]
        re, im = re_sd * z[:, 2], im_sd * z[:, 3]
        out[start : start + size] = np.sqrt((a - d) ** 2 + 4.0 * re**2 + 4.0 * im**2)
    return out


def surmise_mc_oracle(lam: float, n_samples: int, seed: int) -> SpacingSample:
    """2x2 spacing sample divided by the exact mean spacing mu(lambda)."""
    raw = raw_spacings_2x2(lam, n_samples, seed)
    # exact degeneracies have probability zero
    raw = raw[raw > 0]
    mu = crossover_mean_spacing(lam)
    sample = SpacingSample(
        spacings=raw / mu,
        scale=mu,
        raw_mean=float(np.mean(raw)),
        config={"model": "2x2", "lambda": float(lam), "n_samples": int(n_samples), "seed": int(seed)},
    )
    logger.info("2x2 oracle lambda=%.6g: %d spacings, raw mean %.6f (mu=%.6f)", lam, sample.n_kept, sample.raw_mean, mu)
    return sample


def ks_distance(sample: np.ndarray | SpacingSample, cdf: Callable[[np.ndarray], Any]) -> float:
    """Kolmogorov-Smirnov distance between the empirical CDF of ``sample`` and ``cdf``."""
    values = sample.spacings if isinstance(sample, SpacingSample) else np.asarray(sample, dtype=float)
    if values.size == 0:
        raise InvalidArgumentError("KS distance needs a non-empty sample")
    return float(kstest(values, cdf).statistic)


def chi_square_per_dof(sample: np.ndarray | SpacingSample, cdf: Callable[[np.ndarray], Any], bins: int = 50) -> float:
    """Chi-square per degree of freedom on ``bins`` equal-probability bins of ``cdf``."""
    values = sample.spacings if isinstance(sample, SpacingSample) else np.asarray(sample, dtype=float)
    if bins < 2:
        raise InvalidArgumentError(f"need at least 2 bins, got {bins}")
    edges = [0.0]
    upper = max(float(values.max()), 1.0) * 2.0
    while float(cdf(np.float64(upper))) < 1.0 - 0.5 / bins:
        upper *= 2.0
    for q in np.arange(1, bins) / bins:
        edges.append(brentq(lambda x: float(cdf(np.float64(x))) - q, edges[-1], upper, xtol=1e-12))
    edges.append(np.inf)
    observed, _ = np.histogram(values, bins=np.asarray(edges))
    expected = values.size / bins
    return float(np.sum((observed - expected) ** 2 / expected) / (bins - 1))
