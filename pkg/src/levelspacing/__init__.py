"""levelspacing - exact large-N level spacing distributions of the GOE-GUE crossover.

Nystrom-discretized Fredholm determinants of the (dynamical) sine kernel,
Wigner-surmised spacing densities, finite-N Monte Carlo and L2 fits of the
surmise parameter.
"""

__version__ = "0.1.0"

from levelspacing.errors import (
    AcceptanceFailureError,
    CacheCorruptionError,
    FitFailureError,
    InvalidArgumentError,
    LevelSpacingError,
    NumericalFailureError,
)
from levelspacing.exact import GapCache, KernelSpec, crossover_lsd, gap_curve, gap_to_lsd, pure_class_lsd
from levelspacing.fitting import fit_lambda, l2_distance, ratio_curve, surmise_bias
from levelspacing.samples import SpacingSample
from levelspacing.surmise import crossover_surmise, surmise_mc_oracle, wigner_surmise_pure

__all__ = [
    "AcceptanceFailureError",
    "CacheCorruptionError",
    "FitFailureError",
    "GapCache",
    "InvalidArgumentError",
    "KernelSpec",
    "LevelSpacingError",
    "NumericalFailureError",
    "SpacingSample",
    "__version__",
    "crossover_lsd",
    "crossover_surmise",
    "fit_lambda",
    "gap_curve",
    "gap_to_lsd",
    "l2_distance",
    "pure_class_lsd",
    "ratio_curve",
    "surmise_bias",
    "surmise_mc_oracle",
    "wigner_surmise_pure",
]
