from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gwasym.arith import (
    DirichletVector,
    QPolynomial,
    TruncatedSeries,
    bernoulli,
    dirichlet_div,
    dirichlet_mul,
    divisors,
    f_cs,
    falling_binomial,
    mp_str,
    parse_polynomial,
    rational_str,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_bernoulli_values():
    assert [bernoulli(n) for n in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)]
    assert bernoulli(20) == Fraction(-174611, 330)


def test_bernoulli_against_mpmath():
    for n in range(2, 40, 2):
        b = bernoulli(n)
        assert abs(mpmath.mpf(b.numerator) / b.denominator - mpmath.bernoulli(n)) < mpmath.mpf(10) ** -40 * abs(mpmath.bernoulli(n))


def test_f_cs_low_genus():
    # (-1)^(g-1) B_2g / (2g (2g-2)!)
    assert f_cs(2) == Fraction(1, 240)
    assert f_cs(3) == Fraction(1, 6048)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


@given(st.lists(fractions, min_size=1, max_size=5), st.lists(fractions, min_size=1, max_size=5), fractions)
def test_polynomial_ring(a, b, x):
    p, q = QPolynomial(tuple(a)), QPolynomial(tuple(b))
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - p).is_zero()


def test_polynomial_derivative_and_repr():
    p = QPolynomial((1, 2, 3))
    assert p.derivative() == QPolynomial((2, 6))
    assert "q^2" in repr(p)


@given(st.lists(fractions, min_size=1, max_size=6))
def test_series_exp_log_inverse(tail):
    s = TruncatedSeries(tuple([Fraction(0)] + tail))
    assert s.exp().log() == s


@given(st.lists(fractions, min_size=2, max_size=6).filter(lambda c: c[0] != 0))
def test_series_inverse(c):
    s = TruncatedSeries(tuple(c))
    prod = s * s.inverse()
    assert prod[0] == 1 and all(prod[k] == 0 for k in range(1, prod.order + 1))


def test_series_rational_power():
    s = TruncatedSeries((Fraction(1), Fraction(1), Fraction(0), Fraction(0)))
    half = s ** Fraction(1, 2)
    assert half * half == s


@given(st.lists(st.integers(-9, 9), min_size=6, max_size=6), st.lists(st.integers(-9, 9), min_size=6, max_size=6))
def test_dirichlet_division_inverts_multiplication(a, b):
    b[0] = 1 if b[0] == 0 else b[0]
    va = DirichletVector(tuple(Fraction(x) for x in a))
    vb = DirichletVector(tuple(Fraction(x) for x in b))
    assert dirichlet_div(dirichlet_mul(va, vb), vb) == va


def test_dirichlet_zeta_shift_is_power_sum():
    size = 8
    z = DirichletVector.zeta_shift(2, size)
    one = DirichletVector.from_function(lambda d: Fraction(1), size)
    conv = dirichlet_mul(z, one)
    # (sum_k k^2 k^-s)(zeta) at n: sum_{k | n} k^2
    assert conv[6] == 1 + 4 + 9 + 36


def test_falling_binomial_negative_top():
    assert falling_binomial(-3, 2) == 6
    assert falling_binomial(Fraction(1, 2), 2) == Fraction(-1, 8)


def test_parse_polynomial():
    p = parse_polynomial("-(f-2)^3/81")
    assert p(Fraction(5)) == Fraction(-27, 81)
    assert parse_polynomial("(f^2+5*f-5)/18")(4) == Fraction(31, 18)
    with pytest.raises(ValueError):
        parse_polynomial("__import__('os')")


def test_formatting_is_fixed():
    assert rational_str(Fraction(-3, 6)) == "-1/2"
    assert rational_str(Fraction(4)) == "4"
    with mpmath.workdps(50):
        assert mp_str(mpmath.pi, 8) == "3.1415927"
