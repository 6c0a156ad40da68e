"""Finite-N Gaussian ensembles H = H1 + alpha H2.

H1 is real symmetric (GOE: diagonal variance 1, off-diagonal variance 1/2)
and H2 complex Hermitian (GUE: diagonal variance 1, real and imaginary parts
of the off-diagonal variance 1/2 each). With alpha = 0 the pure GOE, GUE or
GSE is sampled; the GSE as a 2N x 2N self-dual matrix whose levels come in
Kramers pairs.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np
from numpy.linalg import LinAlgError
from scipy.linalg import eigh, eigvalsh

from levelspacing.errors import InvalidArgumentError, NumericalFailureError
from levelspacing.rng import substream

logger = logging.getLogger(__name__)

MIN_N = 4
MAX_N = 2000
HERMITIAN_TOL = 1e-12
BACKWARD_TOL = 1e-10


@dataclass(frozen=True)
class EnsembleConfig:
    """One Monte Carlo run.

    Attributes:
        alpha: Perturbation strength of the GUE part
        n: Matrix rank N
        n_samples: Number of matrices
        seed: Root seed; sample i draws from the substream (seed, i)
        beta: Symmetry class of H1 (or of the pure ensemble when alpha = 0)
        beta_prime: Symmetry class of H2
        bulk_fraction: Central fraction of each spectrum kept for spacings
    """

    alpha: float
    n: int = 400
    n_samples: int = 1000
    seed: int = 42
    beta: int = 1
    beta_prime: int = 2
    bulk_fraction: float = 0.5

    def __post_init__(self) -> None:
        if self.beta not in (1, 2, 4) or self.beta_prime not in (1, 2, 4):
            raise InvalidArgumentError(f"beta and beta_prime must be 1, 2 or 4, got ({self.beta}, {self.beta_prime})")
        if not (np.isfinite(self.alpha) and self.alpha >= 0):
            raise InvalidArgumentError(f"alpha must be nonnegative, got {self.alpha}")
        if self.alpha > 0 and (self.beta, self.beta_prime) != (1, 2):
            raise InvalidArgumentError(
                f"only the GOE-GUE crossover (1, 2) is implemented, got ({self.beta}, {self.beta_prime})"
            )
        if not MIN_N <= self.n <= MAX_N:
            raise InvalidArgumentError(f"N must be in [{MIN_N}, {MAX_N}], got {self.n}")
        if self.n_samples < 1:
            raise InvalidArgumentError(f"n_samples must be positive, got {self.n_samples}")
        if self.seed < 0:
            raise InvalidArgumentError(f"seed must be nonnegative, got {self.seed}")
        if not 0 < self.bulk_fraction <= 1:
            raise InvalidArgumentError(f"bulk_fraction must be in (0, 1], got {self.bulk_fraction}")

    @property
    def is_crossover(self) -> bool:
        """True when the levels carry a Lambda label (GOE-GUE pair)."""
        return (self.beta, self.beta_prime) == (1, 2)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def _goe(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.standard_normal((n, n))
    return (a + a.T) * 0.5


def _complex_normal(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def _gue(rng: np.random.Generator, n: int) -> np.ndarray:
    a = _complex_normal(rng, n)
    return (a + a.conj().T) * 0.5


def _gse(rng: np.random.Generator, n: int) -> np.ndarray:
    a = _gue(rng, n)
    c = _complex_normal(rng, n)
    b = (c - c.T) * 0.5
    return np.block([[a, b], [-b.conj(), a.conj()]])


def sample_matrix(config: EnsembleConfig, sample_index: int) -> np.ndarray:
    """Matrix number ``sample_index`` of the run; the same for every caller and order."""
    rng = substream(config.seed, sample_index)
    if config.alpha == 0:
        if config.beta == 1:
            return _goe(rng, config.n)
        if config.beta == 2:
            return _gue(rng, config.n)
        return _gse(rng, config.n)
    h1 = _goe(rng, config.n)
    h2 = _gue(rng, config.n)
    return h1 + config.alpha * h2


def spectrum(h: np.ndarray, sample_index: int | None = None, check: bool = False) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix.

    Args:
        h: Square matrix, Hermitian to 1e-12 relative to its norm
        sample_index: Reported in errors
        check: Also compute eigenvectors and assert a backward error below 1e-10

    Raises:
        InvalidArgumentError: If ``h`` is not square or not Hermitian
        NumericalFailureError: If the eigensolver does not converge
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {h.shape}")
    norm = float(np.linalg.norm(h))
    if float(np.linalg.norm(h - h.conj().T)) > HERMITIAN_TOL * max(1.0, norm):
        raise InvalidArgumentError("matrix is not Hermitian")
    h = (h + h.conj().T) * 0.5
    try:
        if not check:
            return eigvalsh(h)
        values, vectors = eigh(h)
    except LinAlgError as e:
        raise NumericalFailureError(f"eigensolver failed: {e}", {"sample_index": sample_index}) from e
    residual = float(np.linalg.norm(h @ vectors - vectors * values) / max(norm, 1e-300))
    if residual > BACKWARD_TOL:
        raise NumericalFailureError(
            "eigensolver backward error too large", {"sample_index": sample_index, "residual": residual}
        )
    return values


def sample_levels(config: EnsembleConfig, sample_index: int) -> np.ndarray:
    """Spectrum of one sample, with GSE Kramers pairs reduced to one level each."""
    levels = spectrum(sample_matrix(config, sample_index), sample_index)
    if config.alpha == 0 and config.beta == 4:
        return levels[::2]
    return levels
