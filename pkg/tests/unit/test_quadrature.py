"""Tests for Gauss-Legendre rules and product-integration weights."""

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import erf

from levelspacing.errors import InvalidArgumentError
from levelspacing.exact import gauss_legendre, lagrange_basis, legendre, rescale, step_convolution_weights


def test_one_point_rule():
    """The midpoint rule on [0, 1]."""
    rule = gauss_legendre(1)

    assert rule.nodes.tolist() == [0.5]
    assert rule.weights[0] == pytest.approx(1.0, abs=1e-15)


def test_two_point_rule():
    """Nodes 1/2 -+ 1/(2 sqrt 3), weights 1/2."""
    rule = gauss_legendre(2)
    offset = 0.5 / np.sqrt(3.0)

    np.testing.assert_allclose(rule.nodes, [0.5 - offset, 0.5 + offset], atol=1e-15)
    np.testing.assert_allclose(rule.weights, [0.5, 0.5], atol=1e-15)


@pytest.mark.parametrize("m", [3, 10, 57, 200, 1000])
def test_nodes_and_weights(m):
    """Nodes strictly increasing inside (0, 1), symmetric, weights positive and summing to 1."""
    rule = gauss_legendre(m)

    assert rule.order == m
    assert np.all(np.diff(rule.nodes) > 0)
    assert rule.nodes[0] > 0 and rule.nodes[-1] < 1
    assert np.all(rule.weights > 0)
    assert rule.weights.sum() == pytest.approx(1.0, abs=1e-13)
    np.testing.assert_allclose(rule.nodes + rule.nodes[::-1], 1.0, atol=1e-14)
    np.testing.assert_allclose(rule.weights, rule.weights[::-1], rtol=1e-12)


@pytest.mark.parametrize("m", [4, 12, 40])
def test_polynomial_exactness(m):
    """Exact for every monomial of degree <= 2m - 1."""
    rule = gauss_legendre(m)
    for degree in range(2 * m):
        assert rule.integrate(rule.nodes**degree) == pytest.approx(1.0 / (degree + 1), rel=1e-12, abs=1e-15)


def test_nodes_are_legendre_roots():
    """Mapped back to [-1, 1] the nodes are roots of P_m."""
    m = 31
    rule = gauss_legendre(m)
    p, _ = legendre(m, 2.0 * rule.nodes - 1.0)

    assert np.max(np.abs(p)) < 1e-13


def test_rule_is_immutable():
    """Nodes and weights are read-only."""
    rule = gauss_legendre(8)

    with pytest.raises(ValueError):
        rule.nodes[0] = 0.0


def test_rescale():
    """Rescaled weights sum to the interval length and integrate x^2 exactly."""
    rule = rescale(gauss_legendre(6), -1.0, 3.0)

    assert rule.interval == (-1.0, 3.0)
    assert rule.weights.sum() == pytest.approx(4.0)
    assert rule.integrate(rule.nodes**2) == pytest.approx(28.0 / 3.0)


def test_rescale_rejects_empty_interval():
    """a must be below b."""
    with pytest.raises(InvalidArgumentError):
        rescale(gauss_legendre(4), 1.0, 1.0)


@pytest.mark.parametrize("m", [0, -3, 2.5, True, 10_001])
def test_invalid_order(m):
    """Orders outside [1, MAX_ORDER] or non-integers are rejected."""
    with pytest.raises(InvalidArgumentError):
        gauss_legendre(m)


def test_rescale_round_trip():
    """Mapping onto [a, b] and back to [0, 1] reproduces the rule."""
    rule = gauss_legendre(40)
    back = rescale(rescale(rule, -2.5, 7.0), 0.0, 1.0)

    np.testing.assert_allclose(back.nodes, rule.nodes, rtol=0, atol=1e-14)
    np.testing.assert_allclose(back.weights, rule.weights, rtol=0, atol=1e-14)


def test_lagrange_basis():
    """Identity at the nodes, a partition of unity, exact for polynomials below the order."""
    rule = rescale(gauss_legendre(12), 0.0, 2.0)
    points = np.linspace(0.0, 2.0, 37)

    def poly(y):
        return 1.0 + y - 3.0 * y**3 + y**7

    np.testing.assert_array_equal(lagrange_basis(rule, rule.nodes), np.eye(12))
    basis = lagrange_basis(rule, points)
    assert basis.shape == (37, 12)
    np.testing.assert_allclose(basis.sum(axis=1), 1.0, atol=1e-13)
    np.testing.assert_allclose(basis @ poly(rule.nodes), poly(points), atol=1e-11)


def test_step_weights_for_a_sharp_step():
    """Width 0: half the integral left of x_i minus half the integral right of it."""
    rule = gauss_legendre(16)
    weights = step_convolution_weights(rule, 0.0)

    def antiderivative(x):
        return 2.0 * x - x**2 / 2.0 + x**5 / 5.0

    values = 2.0 - rule.nodes + rule.nodes**4
    expected = antiderivative(rule.nodes) - 0.5 * antiderivative(1.0)
    np.testing.assert_allclose(weights @ values, expected, atol=1e-13)


@pytest.mark.parametrize("width", [0.004, 0.04, 0.3])
def test_step_weights_for_a_smooth_step(width):
    """The weights integrate 0.5 erf((x_i - y) / width) p(y) for a polynomial p."""
    rule = gauss_legendre(20)
    weights = step_convolution_weights(rule, width)
    values = 1.0 + rule.nodes**2

    for i in (0, 7, 19):
        x = rule.nodes[i]
        expected, _ = quad(
            lambda y: 0.5 * erf((x - y) / width) * (1.0 + y**2), 0.0, 1.0, points=[x], epsabs=1e-14, limit=200
        )
        assert weights[i] @ values == pytest.approx(expected, abs=1e-10)


def test_step_weights_chunking():
    """Row chunks do not change the weights."""
    rule = rescale(gauss_legendre(23), 0.0, 3.0)

    np.testing.assert_allclose(
        step_convolution_weights(rule, 0.05, chunk=4), step_convolution_weights(rule, 0.05), rtol=0, atol=1e-13
    )


def test_step_weights_reject_negative_width():
    with pytest.raises(InvalidArgumentError):
        step_convolution_weights(gauss_legendre(4), -0.1)
