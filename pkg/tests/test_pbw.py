import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jordtwist.exactmath import Poly
from jordtwist.pbw import (
    DEFAULT_CONTEXT,
    PROBE_CONTEXT,
    AlgElem,
    ContextMismatch,
    antipode0,
    binom_D,
    counit,
)
from jordtwist.tensorcalc import TensorElem, apply_leg, tensor_mul

PARAMS = ("t",)


def normal_order_words(word_terms, ctx):
    """Brute-force oracle: rewrite ``D g -> g D - g`` one swap at a time."""
    done = {}
    todo = dict(word_terms)
    while todo:
        word, c = todo.popitem()
        for i in range(len(word) - 1):
            if word[i] == "D" and word[i + 1] != "D":
                swapped = word[:i] + (word[i + 1], "D") + word[i + 2:]
                dropped = word[:i] + (word[i + 1],) + word[i + 2:]
                todo[swapped] = todo.get(swapped, 0) + c
                todo[dropped] = todo.get(dropped, 0) - c
                break
        else:
            momenta = sorted((w for w in word if w != "D"), key=ctx.momenta.index)
            key = tuple(momenta) + ("D",) * word.count("D")
            done[key] = done.get(key, 0) + c
    out = AlgElem.zero(ctx, PARAMS)
    for word, c in done.items():
        term = AlgElem.scalar(ctx, PARAMS, c)
        for letter in word:
            term = term * AlgElem.gen(ctx, PARAMS, letter)
        out = out + term
    return out


def word_product(word, ctx):
    out = AlgElem.one(ctx, PARAMS)
    for letter in word:
        out = out * AlgElem.gen(ctx, PARAMS, letter)
    return out


@pytest.mark.parametrize("seed", range(20))
def test_normal_order_matches_single_swap_oracle(seed):
    rng = random.Random(seed)
    letters = ("P", "p", "D")
    word = tuple(rng.choice(letters) for _ in range(rng.randint(1, 7)))
    assert word_product(word, PROBE_CONTEXT) == normal_order_words({word: 1}, PROBE_CONTEXT)


def test_commutator_D_P():
    P = AlgElem.gen(DEFAULT_CONTEXT, PARAMS, "P")
    D = AlgElem.gen(DEFAULT_CONTEXT, PARAMS, "D")
    assert D * P - P * D == -P


def test_shift_identity():
    # D^2 P = P (D - 1)^2
    P = AlgElem.gen(DEFAULT_CONTEXT, PARAMS, "P")
    D = AlgElem.gen(DEFAULT_CONTEXT, PARAMS, "D")
    assert D * D * P == P * (D - 1) * (D - 1)


@st.composite
def elems(draw, ctx=PROBE_CONTEXT):
    out = AlgElem.zero(ctx, PARAMS)
    for _ in range(draw(st.integers(0, 3))):
        word = tuple(draw(st.lists(st.sampled_from(("P", "p", "D")), max_size=3)))
        out = out + word_product(word, ctx) * draw(st.integers(-3, 3))
    return out


@given(elems(), elems(), elems())
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(elems(), elems())
def test_primitive_coproduct_is_multiplicative(a, b):
    N = 0
    delta = lambda x: apply_leg(TensorElem.from_alg(x, N), 0, "coproduct0")
    assert delta(a * b) == tensor_mul(delta(a), delta(b))


@given(elems(), elems())
def test_antipode_is_antihomomorphism(a, b):
    assert antipode0(a * b) == antipode0(b) * antipode0(a)


def test_antipode_of_PD():
    # S0(PD) = S0(D) S0(P) = D P = PD - P
    P = AlgElem.gen(DEFAULT_CONTEXT, PARAMS, "P")
    D = AlgElem.gen(DEFAULT_CONTEXT, PARAMS, "D")
    assert antipode0(P * D) == P * D - P


def test_counit():
    P = AlgElem.gen(DEFAULT_CONTEXT, PARAMS, "P")
    D = AlgElem.gen(DEFAULT_CONTEXT, PARAMS, "D")
    assert counit(P * D + 3) == Poly.const(PARAMS, 3)


def test_binom_D_values():
    D = AlgElem.gen(DEFAULT_CONTEXT, PARAMS, "D")
    assert binom_D(0) == AlgElem.one(DEFAULT_CONTEXT, PARAMS)
    assert binom_D(2) * 2 == D * D - D
    assert binom_D(1, sign=-1, shift=2) == 2 - D


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        AlgElem.gen(DEFAULT_CONTEXT, PARAMS, "P") + AlgElem.gen(PROBE_CONTEXT, PARAMS, "P")
