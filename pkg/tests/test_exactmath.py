"""Tests for exact rational/polynomial arithmetic and HPReal balls."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycf.errors import DivisionError, ParseError, PrecisionError
from polycf.exactmath import (
    HPReal,
    LinFactorForm,
    PolyQ,
    hp_div,
    hp_from_rational,
    hp_sqrt_int,
    hp_to_decimal,
    parse_poly,
)

x = PolyQ.x()


class TestPolyBasics:
    def test_eval_paper_pair(self):
        # a(n) = 2n^2 - 2n + 1 has a(1) = 1
        p = 2 * x**2 - 2 * x + 1
        assert p(1) == 1

    def test_eval_zero_poly(self):
        assert PolyQ()(5) == 0

    def test_eval_quartic(self):
        assert (-(x**4))(3) == -81

    def test_shift_expansion(self):
        # -(x+1)^4 expanded
        assert (-(x**4)).shift(1) == -(x**4) - 4 * x**3 - 6 * x**2 - 4 * x - 1

    def test_shift_roundtrip(self):
        p = parse_poly("7*x^2 - 16*x + 3")
        assert p.shift(3).shift(-3) == p

    def test_gcd_paper_example(self):
        # gcd(x^2(x+1)^2(x+2)(x+3)(x+4), (x-1)^2 x^2 (x+1)(x+2)(x+3))
        a = x**2 * (x + 1) ** 2 * (x + 2) * (x + 3) * (x + 4)
        b = (x - 1) ** 2 * x**2 * (x + 1) * (x + 2) * (x + 3)
        assert a.gcd(b) == x**2 * (x + 1) * (x + 2) * (x + 3)

    def test_gcd_with_zero(self):
        p = 3 * x**2 + 6
        assert p.gcd(PolyQ()) == p.monic()

    def test_exact_divide_error(self):
        with pytest.raises(DivisionError):
            (x**2 + 1).exact_div(x + 1)

    def test_divmod(self):
        q, r = (x**3 - 1).divmod(x - 1)
        assert q == x**2 + x + 1 and r.is_zero()

    def test_content_primitive(self):
        p = PolyQ([Fraction(4, 3), Fraction(8, 3)])
        assert p.content() == Fraction(4, 3)
        assert p.primitive() == PolyQ([1, 2])

    def test_rational_roots(self):
        p = 2 * (x - 1) * (x - 1) * (2 * x - 5) * (x + 3)
        roots, cof = p.rational_roots()
        assert roots == [-3, 1, 1, Fraction(5, 2)]
        assert cof.degree == 0

    def test_rational_roots_nonsplit(self):
        roots, cof = (x**2 + 1).rational_roots()
        assert roots == [] and cof.degree == 2


class TestLinFactorForm:
    def test_expand_matches(self):
        lff = LinFactorForm(-6, [(0, 3), (Fraction(-5, 2), 1)])
        # -6 n^3 (n - 5/2) differs from -6n^3(2n-5) by the folded factor 2
        assert 2 * lff.expand() == parse_poly("-6*x^3*(2*x-5)")

    def test_sorted_merged(self):
        lff = LinFactorForm(1, [(2, 1), (0, 1), (2, 1)])
        assert lff.factors == ((Fraction(0), 1), (Fraction(2), 2))


class TestParser:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("2*x^2 - 2*x + 1", 2 * x**2 - 2 * x + 1),
            ("-x^4", -(x**4)),
            ("-x*(x+1)^5", -x * (x + 1) ** 5),
            ("(2*x-1)*(17*x^2-17*x+5)", (2 * x - 1) * (17 * x**2 - 17 * x + 5)),
            ("1/2*x + 3/4", PolyQ([Fraction(3, 4), Fraction(1, 2)])),
            ("x^2(x+1)", x**2 * (x + 1)),
        ],
    )
    def test_parse(self, text, expected):
        assert parse_poly(text) == expected

    def test_roundtrip_text(self):
        p = parse_poly("-6*x^3*(2*x - 5)")
        assert parse_poly(p.to_text()) == p

    def test_env_substitution(self):
        p = parse_poly("-x*(x+u)*(x+u+v)*(x+u+w)", env={"u": 1, "v": 1, "w": 0})
        assert p == -x * (x + 1) ** 2 * (x + 2)

    def test_parse_error(self):
        with pytest.raises(ParseError):
            parse_poly("2*x +")
        with pytest.raises(ParseError):
            parse_poly("2*y + 1")


class TestHPReal:
    def test_inverse_pair(self):
        a = hp_from_rational(Fraction(1, 3), 64)
        b = hp_from_rational(3, 64)
        prod = a * b
        assert prod.contains(1)
        assert prod.radius() <= Fraction(4, 2**64)

    def test_div_by_zero_interval(self):
        eps = HPReal(0, -10, 5, 64)
        one = hp_from_rational(1, 64)
        with pytest.raises(PrecisionError):
            hp_div(one, eps)

    def test_22_7_minus_pi_bracket(self):
        # 1/791 < 22/7 - pi < 1/790 pins the arctan-based pi used elsewhere;
        # here we only need the exact-rational difference to behave.
        a = hp_from_rational(Fraction(22, 7), 128)
        b = hp_from_rational(Fraction(245850922, 78256779), 128)  # pi convergent
        d = a - b
        assert d.is_positive()
        assert d.contains(Fraction(22, 7) - Fraction(245850922, 78256779))

    def test_decimal_quarter(self):
        assert hp_to_decimal(hp_from_rational(Fraction(1, 4), 64), 3) == "0.250"

    def test_decimal_insufficient(self):
        v = HPReal(1 << 20, -20, 600, 64)  # ~1 with fat radius
        with pytest.raises(PrecisionError) as exc:
            hp_to_decimal(v, 30)
        assert exc.value.max_digits < 30

    def test_sqrt_int(self):
        r = hp_sqrt_int(2, 128)
        sq = r * r
        assert sq.contains(2)

    def test_widened(self):
        v = hp_from_rational(1, 64)
        w = v.widened(hp_from_rational(Fraction(1, 1000), 64))
        assert w.contains(Fraction(1001, 1000) - Fraction(1, 500))
        assert w.radius() >= Fraction(1, 1000)


@settings(max_examples=300, deadline=None)
@given(
    st.fractions(min_value=-1000, max_value=1000),
    st.fractions(min_value=-1000, max_value=1000),
    st.fractions(min_value=-1000, max_value=1000),
)
def test_hp_containment_random(a, b, c):
    # exact value of a*b + (a-c)*b - c stays inside the ball computation
    pa = hp_from_rational(a, 96)
    pb = hp_from_rational(b, 96)
    pc = hp_from_rational(c, 96)
    ball = pa * pb + (pa - pc) * pb - pc
    exact = a * b + (a - c) * b - c
    assert ball.contains(exact)


@settings(max_examples=200, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_rational_reduction_random(p, q):
    from math import gcd

    r = Fraction(p, q)
    g = gcd(p, q) or 1
    assert r.numerator == p // g and r.denominator == q // g


def test_hp_division_containment_random():
    rng = random.Random(7)
    for _ in range(400):
        a = Fraction(rng.randint(-999, 999), rng.randint(1, 99))
        b = Fraction(rng.randint(1, 999), rng.randint(1, 99))
        ball = hp_div(hp_from_rational(a, 80), hp_from_rational(b, 80))
        assert ball.contains(a / b)


def test_poly_shift_matches_eval():
    rng = random.Random(3)
    for _ in range(50):
        p = PolyQ([rng.randint(-9, 9) for _ in range(rng.randint(1, 6))])
        j = rng.randint(-4, 4)
        t = Fraction(rng.randint(-10, 10), rng.randint(1, 5))
        assert p.shift(j)(t) == p(t + j)
