"""Wigner surmises and the 2x2 Monte Carlo oracle."""

from levelspacing.surmise.closed_form import (
    PURE_EXPONENTS,
    SurmiseSpec,
    crossover_mean_spacing,
    crossover_surmise,
    crossover_surmise_cdf,
    wigner_surmise_pure,
    wigner_surmise_pure_cdf,
)
from levelspacing.surmise.oracle import chi_square_per_dof, ks_distance, raw_spacings_2x2, surmise_mc_oracle

__all__ = [
    "PURE_EXPONENTS",
    "SurmiseSpec",
    "chi_square_per_dof",
    "crossover_mean_spacing",
    "crossover_surmise",
    "crossover_surmise_cdf",
    "ks_distance",
    "raw_spacings_2x2",
    "surmise_mc_oracle",
    "wigner_surmise_pure",
    "wigner_surmise_pure_cdf",
]
