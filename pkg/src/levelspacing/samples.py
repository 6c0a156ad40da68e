"""Unit-mean spacing samples shared by the Monte Carlo oracles and the fits."""

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from levelspacing.errors import InvalidArgumentError


@dataclass(frozen=True, eq=False)
class SpacingSample:
    """Positive spacings rescaled to mean 1.

    Attributes:
        spacings: Unfolded spacings
        scale: Divisor applied to the raw spacings (theoretical or measured mean)
        raw_mean: Sample mean of the spacings before rescaling
        lambda_big_measured: Lambda label of a finite-N run; None for 2x2 samples
        config: Provenance of the run
    """

    spacings: np.ndarray
    scale: float
    raw_mean: float
    lambda_big_measured: float | None = None
    config: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.spacings.ndim != 1 or self.spacings.size == 0:
            raise InvalidArgumentError("a spacing sample needs at least one spacing")
        if not np.all(self.spacings > 0):
            raise InvalidArgumentError("spacings must be strictly positive")
        self.spacings.setflags(write=False)

    @property
    def n_kept(self) -> int:
        return int(self.spacings.size)

    @property
    def mean(self) -> float:
        return float(np.mean(self.spacings))

    def metadata(self) -> dict[str, Any]:
        return {
            "n_kept": self.n_kept,
            "scale": self.scale,
            "raw_mean": self.raw_mean,
            "lambda_big_measured": self.lambda_big_measured,
            "config": self.config,
        }
