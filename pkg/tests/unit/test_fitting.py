"""Tests for L2 distances, lambda fits and ratio curves."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from levelspacing.errors import FitFailureError, InvalidArgumentError
from levelspacing.exact import crossover_lsd, default_grid, lambda_big_to_rho, lsd_from_values, tabulate_lsd
from levelspacing.fitting import (
    common_grid,
    fit_lambda,
    golden_section,
    l2_distance,
    ratio_curve,
    step_density,
    surmise_bias,
)
from levelspacing.surmise import crossover_surmise, surmise_mc_oracle, wigner_surmise_pure


def surmise_curve(lam, smax=6.0):
    return tabulate_lsd(lambda s: crossover_surmise(s, lam), default_grid(smax), label=f"surmise {lam}")


def test_common_grid():
    grid = common_grid((0.0, 6.0), 0.01)

    assert grid.size == 601
    assert grid[-1] == pytest.approx(6.0)
    with pytest.raises(InvalidArgumentError):
        common_grid((0.0, 1.0), 0.3)


def test_l2_distance_of_constants():
    """||1 - 0|| over [0, 1] is 1."""
    assert l2_distance(lambda s: np.ones_like(s), lambda s: np.zeros_like(s), (0.0, 1.0)) == pytest.approx(1.0)


def test_l2_distance_is_zero_for_identical_curves():
    curve = surmise_curve(0.3)

    assert l2_distance(curve, curve) == 0.0
    assert l2_distance(curve, lambda s: crossover_surmise(s, 0.3)) < 1e-12


def test_l2_distance_validates_window_and_step():
    curve = surmise_curve(0.3, smax=5.0)

    with pytest.raises(InvalidArgumentError):
        l2_distance(curve, lambda s: s, (0.0, 6.0))
    with pytest.raises(InvalidArgumentError):
        l2_distance(curve, lambda s: s, (0.0, 4.0), step=0.02)
    with pytest.raises(InvalidArgumentError):
        l2_distance(curve, lambda s: s, (2.0, 1.0))


def test_step_density():
    """Counts / (n width); bins outside the window lose their mass."""
    density = step_density(np.array([0.05, 0.15, 0.15, 7.0]), bins=60, window=(0.0, 6.0))

    assert density.bins == 60
    assert density.density[0] == pytest.approx(1 / (4 * 0.1))
    assert density.density[1] == pytest.approx(2 / (4 * 0.1))
    assert density.density.sum() * 0.1 == pytest.approx(0.75)
    assert density(np.array([0.12]))[0] == density.density[1]
    assert density(np.array([6.5]))[0] == 0.0


def test_golden_section_finds_minimum():
    x, fx, trace = golden_section(lambda x: (x - 0.3) ** 2 + 1.0, 0.0, 1.0, tol=1e-8)

    assert x == pytest.approx(0.3, abs=1e-7)
    assert fx == pytest.approx(1.0)
    assert [value for _, value in trace] == sorted((value for _, value in trace), reverse=True)


@pytest.mark.parametrize("lam", [0.0463, 0.276, 0.9613])
def test_fit_recovers_surmise_parameter(lam):
    """A tabulated surmise fits back to its own lambda."""
    result = fit_lambda(surmise_curve(lam))

    assert result.lambda_star == pytest.approx(lam, abs=2e-4)
    assert result.delta2 < 1e-3
    assert result.certified
    assert result.secondary is None
    assert result.to_dict()["target"]["type"] == "lsd"


def test_fit_window():
    """A narrower window still recovers the parameter."""
    result = fit_lambda(surmise_curve(0.5), window=(0.0, 3.0))

    assert result.lambda_star == pytest.approx(0.5, abs=2e-4)
    assert result.window == (0.0, 3.0)


def test_fit_monte_carlo_sample():
    """Histogrammed 2x2 samples fit close to the generating lambda."""
    sample = surmise_mc_oracle(0.3, 500_000, seed=4)
    result = fit_lambda(sample)

    assert result.lambda_star == pytest.approx(0.3, abs=0.03)
    assert result.target["type"] == "sample"
    assert result.target["bins"] == 60


def test_fit_without_interior_minimum():
    """The GUE surmise is only reached as lambda -> infinity."""
    target = tabulate_lsd(lambda s: wigner_surmise_pure(2, s), default_grid())

    with pytest.raises(FitFailureError):
        fit_lambda(target)


def test_fit_rejects_non_unit_mean():
    grid = default_grid()
    target = lsd_from_values(grid, 0.5 * crossover_surmise(grid / 2.0, 0.3))

    with pytest.raises(InvalidArgumentError):
        fit_lambda(target)
    with pytest.raises(InvalidArgumentError):
        fit_lambda(surmise_curve(0.3), tolerance=0.0)


def test_ratio_curve():
    """Surmise / exact on the denominator grid from the cut on."""
    denominator = surmise_curve(0.3, smax=4.0)
    ratios = ratio_curve(lambda s: crossover_surmise(s, 0.3), denominator, s_min_cut=0.05)

    assert ratios.grid[0] == pytest.approx(0.05)
    np.testing.assert_allclose(ratios.ratio, 1.0)
    assert ratios.omitted == 0


def test_ratio_curve_omits_vanishing_denominator():
    grid = default_grid(1.0)
    values = np.where(grid < 0.5, 0.0, 1.0)
    ratios = ratio_curve(lambda s: np.ones_like(s), lsd_from_values(grid, values), s_min_cut=0.1)

    assert ratios.omitted == 40
    assert ratios.grid[0] == pytest.approx(0.5)


def test_ratio_of_two_curves():
    num = surmise_curve(0.3)
    den = surmise_curve(0.3)

    np.testing.assert_allclose(ratio_curve(num, den).ratio, 1.0)
    with pytest.raises(InvalidArgumentError):
        ratio_curve(num, den, s_min_cut=0.0)


def test_surmise_bias():
    assert surmise_bias(0.276, 0.2) == pytest.approx(0.38)
    assert surmise_bias(0.2, 0.2) == 0.0
    with pytest.raises(InvalidArgumentError):
        surmise_bias(0.2, 0.0)
    with pytest.raises(InvalidArgumentError, match="positive"):
        surmise_bias(0.2, -0.2)
    assert math.isfinite(surmise_bias(0.0463, 0.05))


def test_l2_distance_matches_adaptive_quadrature():
    """||0 - P_1 surmise|| on [0, 6] agrees with quad to 1e-6."""
    squared, _ = quad(lambda s: wigner_surmise_pure(1, s) ** 2, 0.0, 6.0, epsabs=1e-13)
    distance = l2_distance(lambda s: np.zeros_like(s), lambda s: wigner_surmise_pure(1, s), (0.0, 6.0))

    assert distance == pytest.approx(math.sqrt(squared), abs=1e-6)


@pytest.mark.slow
def test_fit_is_stable_under_step_halving():
    """lambda* of an exact curve moves by at most 2e-3 when ds is halved."""
    rho = lambda_big_to_rho(1.0)
    coarse = fit_lambda(crossover_lsd(rho, default_grid(6.0, 0.01), 100))
    fine = fit_lambda(crossover_lsd(rho, default_grid(6.0, 0.005), 100))

    assert abs(fine.lambda_star - coarse.lambda_star) <= 2e-3
