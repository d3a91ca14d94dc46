"""Tests for the classical level-1 forms and the Eisenstein family members."""

from fractions import Fraction

import pytest
import sympy

from katzrates.arithmetic import QSeries, RingSpec, padic_val, series_val
from katzrates.classical import (
    WeightSpec,
    bernoulli,
    delta,
    e4,
    e6,
    e_p_minus_1,
    eisenstein_star,
    sigma,
    sigma_star,
)

R = RingSpec(5, 4)


def test_sigma_examples():
    assert sigma(1, 6) == 12
    assert sigma(3, 1) == 1
    assert sigma(3, 2) == 9


def test_sigma_star_examples():
    assert sigma_star(5, 3, 5, R).value == 1
    assert sigma_star(5, 1, 6, R).value == 12
    assert sigma_star(5, 3, 10, R).value == 9


def test_sigma_star_agrees_with_sigma_off_p():
    for n in range(1, 30):
        if n % 5:
            assert sigma_star(5, 3, n, R).value == sigma(3, n) % R.modulus


def test_bernoulli_small_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(3) == 0


def test_bernoulli_against_sympy():
    for k in range(0, 40, 2):
        assert bernoulli(k) == Fraction(sympy.Rational(sympy.bernoulli(k)))


def test_von_staudt_clausen_at_p_minus_1():
    # p divides the denominator of B_{p-1} exactly once.
    for p in (5, 7, 11, 13):
        den = bernoulli(p - 1).denominator
        assert den % p == 0 and (den // p) % p != 0


def test_e4_e6_delta_leading_coefficients():
    f4, f6, d = e4(R, 3), e6(R, 3), delta(R, 3)
    assert f4.coeffs[0] == 1 and f6.coeffs[0] == 1
    assert f4.coeffs[1] == 240 % R.modulus
    assert d.coeffs[0] == 0 and d.coeffs[1] == 1
    assert d.coeffs[2] == -24 % R.modulus


def test_delta_from_independent_convolution():
    # Oracle: expand (E_4^3 - E_6^2)/1728 by direct integer convolution.
    N = 8

    def conv(a, b):
        out = [0] * N
        for i in range(N):
            for k in range(N - i):
                out[i + k] += a[i] * b[k]
        return out

    a4 = [1] + [240 * sigma(3, n) for n in range(1, N)]
    a6 = [1] + [-504 * sigma(5, n) for n in range(1, N)]
    cube = conv(conv(a4, a4), a4)
    diff = [x - y for x, y in zip(cube, conv(a6, a6))]
    expected = [x // 1728 for x in diff]
    assert all(x % 1728 == 0 for x in diff)
    got = delta(R, N)
    assert got.coeffs == tuple(x % R.modulus for x in expected)


def test_delta_identity_mod_ring():
    N = 10
    lhs = delta(R, N).scaled(1728)
    rhs = e4(R, N) ** 3 - e6(R, N) ** 2
    assert lhs == rhs


def test_e_p_minus_1_congruent_one_mod_p():
    for p in (5, 7, 11, 13, 17):
        ring = RingSpec(p, 4)
        f = e_p_minus_1(ring, 20)
        assert f.coeffs[0] == 1
        assert series_val(f - QSeries.one(ring, 20)).at_least(1)


def test_e_p_minus_1_is_e4_for_p_5():
    # For p=5 the weight-4 Eisenstein series is E_4: -2*4/B_4 = 240.
    ring = RingSpec(5, 6)
    f = e_p_minus_1(ring, 10)
    assert f == e4(ring, 10)


def test_eisenstein_star_basic():
    f = eisenstein_star(4, R, 8)
    assert f.coeffs[0] == 1
    # c = -8/((1 - 5^3) B_4); all higher coefficients divisible by 5.
    assert all(c % 5 == 0 for c in f.coeffs[1:])
    c = Fraction(-8) / ((1 - Fraction(5) ** 3) * bernoulli(4))
    c_mod = c.numerator * pow(c.denominator, -1, R.modulus) % R.modulus
    assert f.coeffs[1] == c_mod  # sigma*_3(1) = 1


def test_eisenstein_star_valuation_grows_with_weight():
    # nu(E*_k - 1) >= min(e, nu_p(k) + 1).
    for s, expect in [(1, 1), (5, 2), (25, 3)]:
        k = 4 * s
        f = eisenstein_star(k, R, 10)
        assert series_val(f - QSeries.one(R, 10)).at_least(min(R.e, expect))


def test_eisenstein_star_rejects_bad_weight():
    with pytest.raises(ValueError):
        eisenstein_star(5, R, 4)
    with pytest.raises(ValueError):
        eisenstein_star(0, R, 4)


def test_weight_spec():
    w = WeightSpec(RingSpec(5, 4), 2)
    assert w.k == 8
    assert w.w == (pow(6, 8, 5**4) - 1) % 5**4
    assert w.w_val().v == 1
    with pytest.raises(ValueError):
        WeightSpec(RingSpec(5, 4), 5)
    with pytest.raises(ValueError):
        WeightSpec(RingSpec(5, 4), 0)


def test_weight_coordinate_valuation_one():
    # nu(w) = nu(k) + 1 = 1 for s prime to p, e >= 2.
    for p in (5, 7, 11):
        ring = RingSpec(p, 3)
        for s in (1, 2, 3):
            assert WeightSpec(ring, s).w_val() == padic_val(
                pow(p + 1, s * (p - 1), ring.modulus) - 1, p, 3
            )
            assert WeightSpec(ring, s).w_val().v == 1
