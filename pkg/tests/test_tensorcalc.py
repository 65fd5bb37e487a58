import pytest

from jordtwist.exactmath import Poly
from jordtwist.pbw import DEFAULT_CONTEXT, AlgElem
from jordtwist.tensorcalc import (
    SeriesPrecondition,
    TensorElem,
    TruncationMismatch,
    apply_leg,
    embed,
    exp_series,
    flip,
    geometric_series,
    inverse_series,
    log_onebody,
    merge_legs,
    tensor_mul,
    tensor_product,
)
from jordtwist.twists import SYMBOLIC, fgz_inv

CTX = DEFAULT_CONTEXT
PARAMS = ("t",)


def gens(N, params=PARAMS):
    P = TensorElem.from_alg(AlgElem.gen(CTX, params, "P"), N)
    D = TensorElem.from_alg(AlgElem.gen(CTX, params, "D"), N)
    return P, D, TensorElem.identity(CTX, params, 1, N)


def test_exp_of_log_is_the_argument():
    N = 6
    P, _, one = gens(N)
    t = Poly.var(PARAMS, "t")
    assert exp_series(log_onebody(-1, N, CTX, PARAMS)) == one - P.scale(t)
    assert exp_series(log_onebody(1, N, CTX, PARAMS)) == one + P.scale(t)


def test_inverse_series_two_sided():
    f = fgz_inv(SYMBOLIC, 4)
    one = TensorElem.identity(f.ctx, f.params, 2, 4)
    inv = inverse_series(f)
    assert tensor_mul(inv, f) == one
    assert tensor_mul(f, inv) == one


def test_geometric_series():
    N = 5
    P, D, one = gens(N)
    x = tensor_mul(P, D).scale(Poly.var(PARAMS, "t"))
    assert tensor_mul(geometric_series(x), one - x) == one


def test_truncation_order_is_enforced():
    P4, _, _ = gens(4)
    P5, _, _ = gens(5)
    with pytest.raises(TruncationMismatch):
        P4 + P5
    with pytest.raises(TruncationMismatch):
        tensor_mul(P4, P5)
    with pytest.raises(TruncationMismatch):
        P4.with_order(5)


def test_terms_beyond_order_are_dropped():
    P, _, _ = gens(2)
    t = Poly.var(PARAMS, "t")
    assert not P.scale(t ** 3)


def test_series_preconditions():
    P, _, one = gens(3)
    with pytest.raises(SeriesPrecondition):
        exp_series(P)
    with pytest.raises(SeriesPrecondition):
        inverse_series(one.scale(2))
    with pytest.raises(SeriesPrecondition):
        geometric_series(one)


def test_flip_and_leg_operations():
    f = fgz_inv(SYMBOLIC, 3)
    assert flip(flip(f)) == f
    P, D, one = gens(3, f.params)
    pd = tensor_product(P, D)
    assert flip(pd) == tensor_product(D, P)
    assert merge_legs(pd) == tensor_mul(P, D)
    assert embed(pd, (0, 2), 3) == tensor_product(tensor_product(P, one), D)


def test_counit_legs_of_a_twist():
    f = fgz_inv(SYMBOLIC, 3)
    one = TensorElem.identity(f.ctx, f.params, 1, 3)
    assert apply_leg(f, 0, "counit") == one
    assert apply_leg(f, 1, "counit") == one


def test_primitive_coproduct_of_D():
    _, D, one = gens(2)
    delta = apply_leg(D, 0, "coproduct0")
    assert delta == tensor_product(D, one) + tensor_product(one, D)
