from fractions import Fraction
from math import comb, factorial

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from jordtwist.exactmath import (
    I,
    GaussianRational,
    Poly,
    VariableMismatch,
    binom_int,
    binom_poly,
    canon,
    parse_rational,
)

VARS = ("x", "y")


@st.composite
def polys(draw, variables=VARS, max_terms=4, max_deg=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_deg)) for _ in variables)
        terms[e] = mpq(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
    return Poly(variables, terms)


def test_gaussian_arithmetic():
    assert I * I == -1
    z = GaussianRational(1, 2)
    w = GaussianRational(3, -1)
    assert (z / w) * w == z
    assert canon(GaussianRational(mpq(3, 2), 0)) == mpq(3, 2)
    assert isinstance(canon(GaussianRational(mpq(3, 2), 0)), type(mpq(0)))
    assert (1 + I) ** 4 == -4


def test_parse_rational_accepts_exact_forms():
    assert parse_rational("3/4") == mpq(3, 4)
    assert parse_rational("-2") == -2
    assert parse_rational(5) == 5


@pytest.mark.parametrize("bad", ["0.5", "1e3", "1/0", "abc", "", "1/2/3"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_parse_rational_rejects_float():
    with pytest.raises(TypeError):
        parse_rational(0.5)


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly.zero(VARS)


@given(polys(), polys())
def test_product_rule(a, b):
    assert (a * b).diff("x") == a.diff("x") * b + a * b.diff("x")


@given(polys(), st.integers(-4, 4), st.integers(-4, 4))
def test_eval_is_a_homomorphism(a, x, y):
    b = a * a + a
    env = {"x": x, "y": y}
    assert b.eval(env) == a.eval(env) ** 2 + a.eval(env)


def _falling_binom(q: int, n: int) -> Fraction:
    num = Fraction(1)
    for j in range(n):
        num *= q - j
    return num / factorial(n)


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("q", range(-4, 8))
def test_binom_poly_matches_falling_factorial(q, n):
    x = Poly.var(("x",), "x")
    assert binom_poly(x, n).eval({"x": q}) == _falling_binom(q, n)
    assert binom_int(q, n) == _falling_binom(q, n)
    if q >= 0:
        assert binom_int(q, n) == comb(q, n)


def test_variable_mismatch():
    with pytest.raises(VariableMismatch):
        Poly.var(("x",), "x") + Poly.var(("y",), "y")


def test_subs_removes_variables():
    x, y = Poly.gens(VARS)
    p = (x + y) ** 2
    q = p.subs({"y": 1})
    assert q.vars == ("x",)
    assert q == Poly.var(("x",), "x") ** 2 + Poly.var(("x",), "x") * 2 + 1


def test_rendering_is_canonical():
    x, y = Poly.gens(VARS)
    p = x * y * mpq(3, 2) - y + 1
    assert str(p) == "3/2*x*y - y + 1"
    assert p.latex() == r"\frac{3}{2} x y - y + 1"
