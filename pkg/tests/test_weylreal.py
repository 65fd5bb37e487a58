import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from jordtwist.exactmath import I, Poly
from jordtwist.pbw import PROBE_CONTEXT, AlgElem
from jordtwist.twists import SYMBOLIC, fgz_inv
from jordtwist.weylreal import (
    D_weyl,
    P_weyl,
    SpaceConfig,
    WeylElem,
    act,
    check_kappa_minkowski,
    check_p_xhat,
    check_realizations,
    realize,
    weyl_commutator,
    xhat,
    xhat_from_twist,
)

SPACE = SpaceConfig()
PARAMS = ("t",)
FVARS = SPACE.xnames


@st.composite
def weyl_elems(draw):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        key = tuple(draw(st.integers(0, 2)) for _ in range(2 * SPACE.n))
        terms[key] = draw(st.integers(-3, 3))
    return WeylElem(SPACE, PARAMS, terms)


@st.composite
def functions(draw):
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        terms[tuple(draw(st.integers(0, 4)) for _ in FVARS)] = mpq(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
    return Poly(FVARS, terms)


def sub_t(w: WeylElem) -> WeylElem:
    return w.subs({"t": 1})


@given(weyl_elems(), weyl_elems(), functions())
def test_product_is_operator_composition(a, b, f):
    assert act(sub_t(a * b), f, SPACE) == act(sub_t(a), act(sub_t(b), f, SPACE), SPACE)


def test_canonical_commutator():
    for mu in range(SPACE.n):
        for nu in range(SPACE.n):
            x = WeylElem.x(SPACE, PARAMS, mu)
            p = WeylElem.p(SPACE, PARAMS, nu)
            expected = WeylElem.scalar(SPACE, PARAMS, I if mu == nu else 0)
            assert weyl_commutator(x, p) == expected


def test_dilatation_realization():
    D, P = D_weyl(SPACE, PARAMS), P_weyl(SPACE, PARAMS)
    assert weyl_commutator(D, P) == -P


@st.composite
def alg_elems(draw):
    out = AlgElem.zero(PROBE_CONTEXT, PARAMS)
    for _ in range(draw(st.integers(1, 3))):
        term = AlgElem.one(PROBE_CONTEXT, PARAMS)
        for letter in draw(st.lists(st.sampled_from(("P", "p", "D")), max_size=3)):
            term = term * AlgElem.gen(PROBE_CONTEXT, PARAMS, letter)
        out = out + term * draw(st.integers(-2, 2))
    return out


@settings(max_examples=15)
@given(alg_elems(), alg_elems())
def test_realize_is_a_homomorphism(a, b):
    assert realize(a * b, SPACE) == realize(a, SPACE) * realize(b, SPACE)


@settings(max_examples=15)
@given(alg_elems(), functions())
def test_abstract_action_matches_realized_action(a, f):
    assert act(a, f, SPACE) == act(realize(a, SPACE), f, SPACE)


def test_basic_actions():
    x0, x1 = Poly.gens(FVARS)
    D = AlgElem.gen(PROBE_CONTEXT, PARAMS, "D")
    P = AlgElem.gen(PROBE_CONTEXT, PARAMS, "P")
    f = x0 ** 2 * x1 + x1
    assert act(D, f, SPACE) == x0 ** 2 * x1 * 3 + x1
    assert act(P, x0, SPACE) == Poly.const(FVARS, -I)
    assert act(P, x1, SPACE) == Poly.zero(FVARS)


def test_gauge_endpoints():
    params = ("t",)
    t = Poly.var(params, "t")
    x0 = WeylElem.x(SPACE, params, 0)
    one = WeylElem.scalar(SPACE, params, 1)
    assert xhat(0, SPACE, 1) == x0 * (one + P_weyl(SPACE, params) * t)
    assert xhat(0, SPACE, 0) == x0 + D_weyl(SPACE, params) * t * I


@pytest.mark.parametrize("u", [SYMBOLIC, "0", "1/2", "1", "-3/2"])
def test_structure_relations(u):
    assert check_kappa_minkowski(SPACE, u).passed
    assert check_p_xhat(SPACE, u).passed
    assert check_realizations(SPACE, u).passed


@settings(max_examples=6)
@given(st.lists(st.fractions(-2, 2, max_denominator=3), min_size=2, max_size=3))
def test_minkowski_for_any_direction(v):
    space = SpaceConfig.make([f"{c.numerator}/{c.denominator}" for c in v])
    assert check_kappa_minkowski(space, SYMBOLIC).passed


def test_negative_controls():
    assert not check_kappa_minkowski(SPACE, SYMBOLIC, corrupt=True).passed
    assert not check_p_xhat(SPACE, SYMBOLIC, corrupt=True).passed
    assert not check_realizations(SPACE, SYMBOLIC, corrupt=True).passed


def test_twist_realization_needs_order_two():
    with pytest.raises(ValueError):
        xhat_from_twist(fgz_inv(SYMBOLIC, 1), 0, SPACE)


def test_space_config():
    cfg = SpaceConfig.make(["2", "0"])
    assert cfg.v_squared == 4 and not cfg.v_compliant
    assert SPACE.v_compliant
    with pytest.raises(ValueError):
        SpaceConfig(2, ("1",))
