"""L2 fits of the crossover surmise and ratio curves."""

from levelspacing.fitting.distance import StepDensity, common_grid, l2_distance, step_density
from levelspacing.fitting.lambda_fit import (
    FitResult,
    RatioCurve,
    fit_lambda,
    golden_section,
    ratio_curve,
    surmise_bias,
)

__all__ = [
    "FitResult",
    "RatioCurve",
    "StepDensity",
    "common_grid",
    "fit_lambda",
    "golden_section",
    "l2_distance",
    "ratio_curve",
    "step_density",
    "surmise_bias",
]
