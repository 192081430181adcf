"""Special-function layer: recurrences against series oracles, quadrature exactness."""

import math
from fractions import Fraction

import numpy as np
import pytest

from zonekit.special import (QuadratureRule, gauss_hermite, gauss_laguerre, gauss_legendre,
                             laguerre, laguerre_at_zero, multiplicity_factor)


def series_oracle(a, alpha, t):
    """Explicit power series sum_j binom(a+alpha, a-j) (-t)^j / j! in exact arithmetic."""
    tf = Fraction(t).limit_denominator(10**12)
    af = Fraction(alpha).limit_denominator(100)
    total = Fraction(0)
    for j in range(a + 1):
        binom = Fraction(1)
        for i in range(a - j):
            binom *= (af + j + 1 + i) / (i + 1)
        total += binom * (-tf) ** j / math.factorial(j)
    return float(total)


def test_order_zero_is_one():
    assert laguerre(0, 0.0, 5.0) == 1.0
    assert laguerre(0, 3.0, -2.0) == 1.0


def test_order_one_is_affine():
    for t in (-1.0, 0.0, 0.5, 3.0):
        assert laguerre(1, 0.0, t) == pytest.approx(1.0 - t, rel=1e-15)


def test_order_two_value():
    # series oracle gives (t^2 - 4t + 2)/2 = -1 at t = 2
    assert laguerre(2, 0.0, 2.0) == pytest.approx(-1.0, rel=1e-14)
    assert series_oracle(2, 0.0, 2.0) == pytest.approx(-1.0, rel=1e-14)


@pytest.mark.parametrize("a", [0, 1, 3, 7, 15, 30])
@pytest.mark.parametrize("alpha", [0.0, 1.0, 0.5])
def test_recurrence_matches_series(a, alpha):
    for t in (-50.0, -7.25, -0.3, 0.0, 1.0, 12.5, 50.0):
        ref = series_oracle(a, alpha, t)
        got = laguerre(a, alpha, t)
        assert got == pytest.approx(ref, rel=1e-10, abs=1e-10 * max(1.0, abs(ref)))


def test_value_at_zero_is_binomial():
    for a in range(10):
        for alpha in (0, 1, 4):
            assert laguerre(a, float(alpha), 0.0) == pytest.approx(
                math.comb(a + alpha, a), rel=1e-13)
            assert laguerre_at_zero(a, float(alpha)) == pytest.approx(
                math.comb(a + alpha, a), rel=1e-13)


def test_vectorized_evaluation():
    t = np.linspace(-3, 3, 11)
    vals = laguerre(2, 0.0, t)
    assert vals.shape == t.shape
    assert np.allclose(vals, (t**2 - 4 * t + 2) / 2)


def test_alpha_domain_guard():
    with pytest.raises(ValueError):
        laguerre(2, -1.0, 0.5)
    with pytest.raises(ValueError):
        laguerre(-1, 0.0, 0.5)


def test_multiplicity_factor_table():
    for a in range(6):
        assert multiplicity_factor(a, 2) == 1
    assert multiplicity_factor(0, 8) == 1
    assert multiplicity_factor(1, 4) == 2
    assert multiplicity_factor(2, 4) == 3
    assert multiplicity_factor(3, 6) == math.comb(5, 3)
    with pytest.raises(ValueError):
        multiplicity_factor(-1, 2)
    with pytest.raises(ValueError):
        multiplicity_factor(0, 3)


def test_hermite_rule_moments_exact():
    rule = gauss_hermite(20)
    assert isinstance(rule, QuadratureRule)
    assert len(rule.nodes) == rule.order == 20
    assert np.all(rule.weights > 0)
    for m in range(0, 19):
        ref = math.gamma(m + 0.5)          # int x^{2m} e^{-x^2} dx
        got = float(np.sum(rule.weights * rule.nodes ** (2 * m)))
        assert got == pytest.approx(ref, rel=1e-12)


def test_legendre_rule_polynomials_exact():
    rule = gauss_legendre(12, 0.0, 2.0)
    for deg in range(0, 23):
        ref = 2.0 ** (deg + 1) / (deg + 1)
        got = float(np.sum(rule.weights * rule.nodes ** deg))
        assert got == pytest.approx(ref, rel=1e-12)


def test_generalized_laguerre_rule_half_integer_moments():
    rule = gauss_laguerre(24, -0.5)
    for n in range(0, 20):
        ref = math.gamma(n + 0.5)          # int u^{n-1/2} e^{-u} du
        got = float(np.sum(rule.weights * rule.nodes ** n))
        assert got == pytest.approx(ref, rel=1e-12)
