"""Binomial identities behind the cocycle proof, checked as polynomial identities.

Integer parameters are swept; the free variables stay symbolic.  Before the
polynomial expansion each tuple is evaluated at integer points as a cheap
pre-filter, so an implementation bug fails fast.
"""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Sequence, Tuple

from .exactmath import Poly, binom_int, binom_poly
from .report import Report, timed

PREFILTER_RANGE = range(-3, 8)
PREFILTER_POINTS = 12


@lru_cache(maxsize=None)
def prefilter_points(names: Tuple[str, ...]) -> Tuple[Dict[str, int], ...]:
    """Seeded integer points in ``PREFILTER_RANGE`` (the full grid when it is small)."""
    grid = list(product(PREFILTER_RANGE, repeat=len(names)))
    if len(grid) > PREFILTER_POINTS:
        grid = random.Random(len(names)).sample(grid, PREFILTER_POINTS)
    return tuple(dict(zip(names, p)) for p in grid)

Side = Callable[..., object]


class _Vars:
    """Polynomial generators over a fixed variable tuple, with cached binomials."""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        self.gens = dict(zip(self.names, Poly.gens(self.names)))

    @lru_cache(maxsize=None)
    def binom(self, lin: Tuple[Tuple[str, int], ...], shift: int, n: int) -> Poly:
        q = Poly.const(self.names, shift)
        for name, c in lin:
            q = q + self.gens[name] * c
        return binom_poly(q, n)


def _binom_sym(ring: _Vars):
    def b(lin: Dict[str, int], shift: int, n: int):
        return ring.binom(tuple(sorted(lin.items())), shift, n)
    return b


_binom_int = lru_cache(maxsize=None)(binom_int)


def _binom_at(point: Dict[str, int]):
    def b(lin: Dict[str, int], shift: int, n: int):
        return _binom_int(shift + sum(c * point[name] for name, c in lin.items()), n)
    return b


def _verify(names: Sequence[str], lhs: Side, rhs: Side, params: Tuple[int, ...], ring: _Vars):
    """``None`` if ``lhs == rhs`` as polynomials, else a failure record."""
    for env in prefilter_points(tuple(names)):
        b = _binom_at(env)
        if lhs(b, *params) != rhs(b, *params):
            return {"params": list(params), "stage": "prefilter", "point": env}
    b = _binom_sym(ring)
    diff = lhs(b, *params) - rhs(b, *params)
    if diff:
        return {"params": list(params), "stage": "polynomial", "residual": str(diff)}
    return None


def _sweep(check: str, names, lhs, rhs, tuples, report_params) -> Report:
    ring = _Vars(names)
    tuples = list(tuples)

    def run():
        failures = []
        for params in tuples:
            bad = _verify(names, lhs, rhs, params, ring)
            if bad:
                failures.append(bad)
        return {"failures": failures}

    return timed(check, report_params, run, tuples_checked=len(tuples))


# -- the lemma ---------------------------------------------------------------------


def lemma_lhs(b, k, l, A, C):
    total = 0
    for k1 in range(k - A, k + 1):
        total = total + (b({}, k1, k - A) * b({"z": 1}, 0, k1)
                         * b({"x": 1, "y": 1}, -k - l + k1 + C, C) * b({"y": 1}, 0, k - k1))
    return b({"x": 1}, 0, l - C) * total


def lemma_rhs(b, k, l, A, C):
    total = 0
    for l1 in range(l - C, l + 1):
        total = total + (b({}, l1, l - C) * b({"x": 1}, 0, l1)
                         * b({"y": 1, "z": 1}, -k - l + l1 + A, A) * b({"y": 1}, 0, l - l1))
    return b({"z": 1}, 0, k - A) * total


def lemma_tuples(K: int):
    for k in range(K + 1):
        for l in range(K + 1):
            for A in range(k + 1):
                for C in range(l + 1):
                    yield (k, l, A, C)


def check_lemma(K: int) -> Report:
    return _sweep("lemma", ("x", "y", "z"), lemma_lhs, lemma_rhs, lemma_tuples(K), {"K": K})


def reduced_lhs(b, k, A):
    return sum((b({}, k1, k - A) * b({"y": 1}, 0, k - k1) * b({"z": 1}, 0, k1) for k1 in range(k - A, k + 1)), 0)


def reduced_rhs(b, k, A):
    return b({"z": 1}, 0, k - A) * b({"y": 1, "z": 1}, -k + A, A)


def check_reduced_c0(K: int) -> Report:
    tuples = [(k, A) for k in range(K + 1) for A in range(k + 1)]
    return _sweep("lemma-c0", ("y", "z"), reduced_lhs, reduced_rhs, tuples, {"K": K})


def simple_lhs(b, r, s):
    return b({}, r, s) * b({"w": 1}, 0, r)


def simple_rhs(b, r, s):
    return b({"w": 1}, 0, s) * b({"w": 1}, -s, r - s)


def check_simple_identity(R: int) -> Report:
    tuples = [(r, s) for r in range(R + 1) for s in range(r + 1)]
    return _sweep("simple-identity", ("w",), simple_lhs, simple_rhs, tuples, {"R": R})


# Vandermonde steps: binom(a + b, C) = sum_j binom(a, j) binom(b, C - j) with the
# split prescribed by the lemma's proof.


def vdm_x_lhs(b, l, i, A, C):
    return b({"x": 1, "y": 1}, -l + i - A + C, C)


def vdm_x_rhs(b, l, i, A, C):
    return sum((b({"x": 1}, -l + C, j) * b({"y": 1}, i - A, C - j) for j in range(C + 1)), 0)


def vdm_z_lhs(b, k, j, A, C):
    return b({"y": 1, "z": 1}, -k + j - C + A, A)


def vdm_z_rhs(b, k, j, A, C):
    return sum((b({"z": 1}, -k + A, i) * b({"y": 1}, j - C, A - i) for i in range(A + 1)), 0)


def check_vandermonde_steps(K: int) -> Report:
    def run():
        residual = {}
        for label, names, lhs, rhs in (("x-split", ("x", "y"), vdm_x_lhs, vdm_x_rhs), ("z-split", ("y", "z"), vdm_z_lhs, vdm_z_rhs)):
            ring = _Vars(names)
            failures = []
            for tup in product(range(K + 1), repeat=4):
                bad = _verify(names, lhs, rhs, tup, ring)
                if bad:
                    failures.append(bad)
            residual[label] = failures
        return residual

    return timed("vandermonde", {"K": K}, run, tuples_checked=2 * (K + 1) ** 4)


def y_factor_lhs(b, A, C, i, j):
    return b({"y": 1}, i - A, C - j) * b({"y": 1}, 0, A - i)


def y_factor_rhs(b, A, C, i, j):
    return b({"y": 1}, j - C, A - i) * b({"y": 1}, 0, C - j)


def check_termwise_y_factor(K: int) -> Report:
    tuples = [(A, C, i, j) for A in range(K + 1) for C in range(K + 1) for i in range(A + 1) for j in range(C + 1)]
    return _sweep("y-factor", ("y",), y_factor_lhs, y_factor_rhs, tuples, {"K": K})


def corrupted_lemma(K: int) -> Report:
    """Negative control: the lemma with ``binom(y, 1)`` added to one right-hand side."""
    def bad_rhs(b, k, l, A, C):
        return lemma_rhs(b, k, l, A, C) + (b({"y": 1}, 0, 1) if (k, l, A, C) == (1, 1, 1, 1) else 0)

    return _sweep("lemma", ("x", "y", "z"), lemma_lhs, bad_rhs, lemma_tuples(K), {"K": K, "corrupt": True})
