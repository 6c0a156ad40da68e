"""Exact large-N gap probabilities and level spacing distributions."""

from levelspacing.exact.cache import CacheEntry, GapCache, VerifyReport, cache_key
from levelspacing.exact.fredholm import (
    DEFAULT_DS,
    DEFAULT_M,
    DEFAULT_SMAX,
    ConvergenceRow,
    GapCurve,
    LsdCurve,
    convergence_report,
    crossover_lsd,
    default_grid,
    gap_curve,
    gap_probability,
    gap_to_lsd,
    head_grid,
    kernel_lsd,
    lsd_from_values,
    lsd_normalization,
    nystrom_det,
    pure_class_gap,
    pure_class_lsd,
    second_difference,
    tabulate_lsd,
)
from levelspacing.exact.kernels import (
    MEAN_SPACING_GOE_2X2,
    RHO_MAX,
    CrossoverParam,
    KernelKind,
    KernelSpec,
    dynamical_blocks,
    dynamical_kernel,
    effective_lambda_big,
    lambda_big_to_rho,
    rho_to_lambda_big,
    sine_kernel,
    sine_kernel_projected,
)
from levelspacing.exact.quadrature import (
    MAX_ORDER,
    QuadratureRule,
    gauss_legendre,
    lagrange_basis,
    legendre,
    rescale,
    step_convolution_weights,
)

__all__ = [
    "DEFAULT_DS",
    "DEFAULT_M",
    "DEFAULT_SMAX",
    "MAX_ORDER",
    "MEAN_SPACING_GOE_2X2",
    "RHO_MAX",
    "CacheEntry",
    "ConvergenceRow",
    "CrossoverParam",
    "GapCache",
    "GapCurve",
    "KernelKind",
    "KernelSpec",
    "LsdCurve",
    "QuadratureRule",
    "VerifyReport",
    "cache_key",
    "convergence_report",
    "crossover_lsd",
    "default_grid",
    "dynamical_blocks",
    "dynamical_kernel",
    "effective_lambda_big",
    "gap_curve",
    "gap_probability",
    "gap_to_lsd",
    "gauss_legendre",
    "head_grid",
    "kernel_lsd",
    "lagrange_basis",
    "lambda_big_to_rho",
    "legendre",
    "lsd_from_values",
    "lsd_normalization",
    "nystrom_det",
    "pure_class_gap",
    "pure_class_lsd",
    "rescale",
    "rho_to_lambda_big",
    "second_difference",
    "sine_kernel",
    "sine_kernel_projected",
    "step_convolution_weights",
    "tabulate_lsd",
]
