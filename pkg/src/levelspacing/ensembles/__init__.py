"""Finite-N Monte Carlo of the GOE-GUE crossover and of the pure ensembles."""

from levelspacing.ensembles.sampling import EnsembleConfig, sample_levels, sample_matrix, spectrum
from levelspacing.ensembles.unfolding import (
    central_spacing,
    collect_spectra,
    estimated_center_spacing,
    simulate,
    solve_alpha_for_lambda,
    unfold_and_collect,
    unfold_levels,
)

__all__ = [
    "EnsembleConfig",
    "central_spacing",
    "collect_spectra",
    "estimated_center_spacing",
    "sample_levels",
    "sample_matrix",
    "simulate",
    "solve_alpha_for_lambda",
    "spectrum",
    "unfold_and_collect",
    "unfold_levels",
]
