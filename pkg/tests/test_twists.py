import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jordtwist.exactmath import parse_rational
from jordtwist.hopfcheck import check_cocycle, check_counital
from jordtwist.pbw import DEFAULT_CONTEXT, AlgElem
from jordtwist.render import render_series
from jordtwist.tensorcalc import TensorElem, flip, tensor_mul
from jordtwist.twists import (
    SYMBOLIC,
    TWISTS,
    by_name,
    classical_r,
    corrupted_twist,
    f0_inv,
    f1_inv,
    fgz_inv,
    fru_inv,
    identity_twist,
    r_matrix,
)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=5).map(
    lambda f: f"{f.numerator}/{f.denominator}"
)


def test_first_order_rendering():
    assert render_series(fgz_inv(SYMBOLIC, 1)) == "1⊗1 + t((u - 1) P⊗D + u D⊗P)"
    assert render_series(f0_inv(0)) == "1⊗1"


def test_half_gauge_second_order_frozen():
    # hand substitution u = 1/2 into the order-2 coefficient, binom(D,2) = (D^2 - D)/2
    expected = (
        "1⊗1 + t(-1/2 P⊗D + 1/2 D⊗P) + "
        "t^2(1/8 P^2⊗D^2 - 1/8 P^2⊗D - 1/4 P D⊗P D + 1/8 D^2⊗P^2 - 1/8 D⊗P^2)"
    )
    assert render_series(fgz_inv("1/2", 2)) == expected


def test_latex_rendering():
    out = render_series(fgz_inv(SYMBOLIC, 1), "latex")
    assert out == r"1 \otimes 1 + t\left(\left(u - 1\right) P \otimes D + u\, D \otimes P\right)"


def test_float_gauge_rejected():
    with pytest.raises(TypeError):
        fgz_inv(0.5, 2)


@settings(max_examples=8)
@given(rationals)
def test_families_agree_at_rational_gauge(u):
    assert fgz_inv(u, 4) == fru_inv(u, 4)


@settings(max_examples=8)
@given(rationals)
def test_rational_gauge_is_substitution(u):
    assert fgz_inv(SYMBOLIC, 4).subs({"u": parse_rational(u)}) == fgz_inv(u, 4)


def test_simple_twists_are_cocycles():
    assert check_cocycle(f0_inv(5)).passed
    assert check_cocycle(f1_inv(5, u=1)).passed
    assert check_cocycle(identity_twist(3)).passed


def test_corrupted_twist_is_counital_but_not_cocycle():
    f = corrupted_twist(3)
    assert check_counital(f).passed
    assert not check_cocycle(f).passed


def test_r_matrix_is_unitary():
    R = r_matrix(fgz_inv(SYMBOLIC, 4))
    assert tensor_mul(flip(R), R) == TensorElem.identity(R.ctx, R.params, 2, 4)


def test_classical_r_at_rational_gauge():
    for u in ("0", "1/3", "1"):
        r = classical_r(fgz_inv(u, 2))
        P = AlgElem.gen(DEFAULT_CONTEXT, r.params, "P")
        D = AlgElem.gen(DEFAULT_CONTEXT, r.params, "D")
        assert r == TensorElem.pure([D, P], 2) - TensorElem.pure([P, D], 2)


def test_classical_r_needs_order_one():
    with pytest.raises(ValueError):
        classical_r(fgz_inv(SYMBOLIC, 0))


def test_registry():
    assert set(TWISTS) == {"f0_inv", "f1_inv", "fgz_inv", "fru_inv", "R0", "R_gz"}
    assert by_name("R0", SYMBOLIC, 2).params == ("u", "t")
    with pytest.raises(KeyError):
        by_name("nope", SYMBOLIC, 2)


def test_zeroth_order_is_identity():
    for name in TWISTS:
        x = by_name(name, SYMBOLIC, 0)
        assert x == TensorElem.identity(x.ctx, x.params, 2, 0)
