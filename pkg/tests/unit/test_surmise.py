"""Tests for the Wigner surmises and the 2x2 Monte Carlo oracle."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from levelspacing.errors import InvalidArgumentError
from levelspacing.rng import substream
from levelspacing.surmise import (
    SurmiseSpec,
    chi_square_per_dof,
    crossover_mean_spacing,
    crossover_surmise,
    crossover_surmise_cdf,
    ks_distance,
    raw_spacings_2x2,
    surmise_mc_oracle,
    wigner_surmise_pure,
    wigner_surmise_pure_cdf,
)


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_pure_surmise_unit_mass_and_mean(beta):
    mass, _ = quad(lambda s: wigner_surmise_pure(beta, s), 0, np.inf, epsabs=1e-13)
    mean, _ = quad(lambda s: s * wigner_surmise_pure(beta, s), 0, np.inf, epsabs=1e-13)

    assert mass == pytest.approx(1.0, abs=1e-9)
    assert mean == pytest.approx(1.0, abs=1e-9)


def test_pure_surmise_closed_forms():
    """The familiar GOE and GUE expressions."""
    s = np.linspace(0, 4, 41)

    np.testing.assert_allclose(wigner_surmise_pure(1, s), math.pi / 2 * s * np.exp(-math.pi * s**2 / 4))
    np.testing.assert_allclose(
        wigner_surmise_pure(2, s), 32 / math.pi**2 * s**2 * np.exp(-4 * s**2 / math.pi), atol=1e-15
    )


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_pure_cdf_matches_density(beta):
    for upper in (0.5, 1.0, 2.5):
        integral, _ = quad(lambda s: wigner_surmise_pure(beta, s), 0, upper, epsabs=1e-13)
        assert wigner_surmise_pure_cdf(beta, upper) == pytest.approx(integral, abs=1e-10)


def test_scalar_and_array_inputs():
    assert isinstance(wigner_surmise_pure(1, 0.5), float)
    assert isinstance(crossover_surmise(0.5, 0.3), float)
    assert crossover_surmise(np.array([0.5, 1.0]), 0.3).shape == (2,)


def test_invalid_inputs():
    with pytest.raises(InvalidArgumentError):
        wigner_surmise_pure(3, 1.0)
    with pytest.raises(InvalidArgumentError):
        wigner_surmise_pure(1, -0.1)
    with pytest.raises(InvalidArgumentError):
        crossover_surmise(1.0, -0.5)


def test_crossover_mean_spacing():
    """sqrt(pi) at lambda = 0, growing with lambda."""
    assert crossover_mean_spacing(0.0) == pytest.approx(math.sqrt(math.pi))
    assert crossover_mean_spacing(1e-9) == pytest.approx(math.sqrt(math.pi), rel=1e-8)
    assert crossover_mean_spacing(0.1) < crossover_mean_spacing(1.0)

    with pytest.raises(InvalidArgumentError):
        crossover_mean_spacing(math.inf)


@pytest.mark.parametrize("lam", [0.01, 0.1, 0.276, 1.0, 5.0])
def test_crossover_unit_mass_and_mean(lam):
    mass, _ = quad(lambda s: crossover_surmise(s, lam), 0, np.inf, epsabs=1e-13, limit=200)
    mean, _ = quad(lambda s: s * crossover_surmise(s, lam), 0, np.inf, epsabs=1e-13, limit=200)

    assert mass == pytest.approx(1.0, abs=1e-7)
    assert mean == pytest.approx(1.0, abs=1e-7)


@pytest.mark.parametrize("lam", [0.05, 0.5, 2.0])
def test_crossover_cdf_matches_density(lam):
    for upper in (0.3, 1.0, 3.0):
        integral, _ = quad(lambda s: crossover_surmise(s, lam), 0, upper, epsabs=1e-13, limit=200)
        assert crossover_surmise_cdf(upper, lam) == pytest.approx(integral, abs=1e-9)


def test_crossover_limits():
    """lambda -> 0 gives the GOE surmise, lambda -> infinity the GUE surmise."""
    s = np.linspace(0.05, 4, 80)

    np.testing.assert_array_equal(crossover_surmise(s, 0.0), wigner_surmise_pure(1, s))
    np.testing.assert_allclose(crossover_surmise(s, 1e-6), wigner_surmise_pure(1, s), atol=1e-4)
    np.testing.assert_array_equal(crossover_surmise(s, math.inf), wigner_surmise_pure(2, s))
    np.testing.assert_allclose(crossover_surmise(s, 1e4), wigner_surmise_pure(2, s), atol=1e-6)


def test_crossover_small_s_is_quadratic():
    """Level repulsion switches to s^2 for any lambda > 0."""
    lam = 0.2
    ratios = [crossover_surmise(s, lam) / s**2 for s in (1e-4, 1e-5)]

    assert ratios[0] == pytest.approx(ratios[1], rel=1e-6)


def test_surmise_spec():
    assert SurmiseSpec.pure(2).pdf(1.0) == wigner_surmise_pure(2, 1.0)
    assert SurmiseSpec.crossover(0.3).cdf(1.0) == crossover_surmise_cdf(1.0, 0.3)
    assert SurmiseSpec.crossover(0.3).to_dict() == {"beta": None, "lambda": 0.3}

    with pytest.raises(InvalidArgumentError):
        SurmiseSpec(beta=1, lam=0.2)
    with pytest.raises(InvalidArgumentError):
        SurmiseSpec()


def test_substreams_are_reproducible():
    """The same key always gives the same numbers; different keys differ."""
    first = substream(42, 0).standard_normal(5)

    np.testing.assert_array_equal(first, substream(42, 0).standard_normal(5))
    assert not np.array_equal(first, substream(42, 1).standard_normal(5))
    with pytest.raises(InvalidArgumentError):
        substream(-1)


def test_raw_spacings_deterministic_across_chunks():
    """A longer run starts with the same spacings."""
    short = raw_spacings_2x2(0.2, 1000, seed=7)
    long = raw_spacings_2x2(0.2, 70_000, seed=7)

    np.testing.assert_array_equal(short, long[:1000])


def test_raw_mean_at_lambda_zero():
    """The unnormalized GOE 2x2 mean spacing is sqrt(pi)."""
    raw = raw_spacings_2x2(0.0, 200_000, seed=3)

    assert raw.mean() == pytest.approx(math.sqrt(math.pi), rel=1e-2)


@pytest.mark.parametrize("lam", [0.0, 0.1, 0.5, 2.0])
def test_oracle_matches_surmise(lam):
    """Monte Carlo 2x2 spacings follow the closed-form surmise."""
    sample = surmise_mc_oracle(lam, 200_000, seed=11)

    assert sample.mean == pytest.approx(1.0, abs=1e-2)
    assert sample.raw_mean == pytest.approx(crossover_mean_spacing(lam), rel=1e-2)
    assert ks_distance(sample, lambda s: crossover_surmise_cdf(s, lam)) < 5e-3
    assert chi_square_per_dof(sample, lambda s: crossover_surmise_cdf(s, lam)) < 2.0


def test_oracle_rejects_bad_counts():
    with pytest.raises(InvalidArgumentError):
        raw_spacings_2x2(0.1, 0, seed=1)
    with pytest.raises(InvalidArgumentError):
        ks_distance(np.array([]), lambda s: s)


@pytest.mark.slow
@pytest.mark.parametrize("lam", [0.0, 0.05, 0.2759, 1.0])
def test_oracle_ks_with_a_million_samples(lam):
    """10^6 direct 2x2 samples sit within 2e-3 of the closed-form CDF."""
    sample = surmise_mc_oracle(lam, 1_000_000, seed=21)

    assert ks_distance(sample, lambda s: crossover_surmise_cdf(s, lam)) <= 2e-3


@pytest.mark.slow
def test_raw_goe_mean_within_three_standard_errors():
    raw = raw_spacings_2x2(0.0, 1_000_000, seed=5)
    standard_error = raw.std(ddof=1) / math.sqrt(raw.size)

    assert abs(raw.mean() - math.sqrt(math.pi)) <= 3.0 * standard_error
