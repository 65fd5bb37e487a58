"""Truncated series in tensor powers of the enveloping algebra.

A :class:`TensorElem` carries its arity ``k`` (1, 2 or 3), its truncation
order ``N`` and a map from ``k``-tuples of PBW monomials to coefficients that
are polynomials in a parameter context containing ``t``.  Every stored
coefficient has ``t``-degree at most ``N``.  Mixing arities, orders or
contexts is an error.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple

from gmpy2 import mpq

from .exactmath import Exps, Poly, Scalar, VariableMismatch, add_into, clean, mul_into
from .pbw import (
    AlgElem,
    ContextMismatch,
    GeneratorContext,
    Mono,
    mono_antipode,
    mono_coproduct,
    mono_mul,
)

Key = Tuple[Mono, ...]
MAX_ARITY = 3
T = "t"


class TruncationMismatch(ValueError):
    pass


class SeriesPrecondition(ValueError):
    pass


class TensorElem:
    __slots__ = ("ctx", "params", "arity", "order", "terms", "_tidx")

    def __init__(
        self,
        ctx: GeneratorContext,
        params: Sequence[str],
        arity: int,
        order: int,
        terms: Mapping[Key, Poly | Scalar] | None = None,
    ):
        if not 1 <= arity <= MAX_ARITY:
            raise ValueError(f"arity must be in 1..{MAX_ARITY}, got {arity}")
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        params = tuple(params)
        if T not in params:
            raise VariableMismatch(f"parameter context {params} has no {T!r}")
        self.ctx = ctx
        self.params = params
        self.arity = arity
        self.order = order
        self._tidx = params.index(T)
        self.terms: Dict[Key, Poly] = {}
        for key, c in (terms or {}).items():
            key = tuple(tuple(m) for m in key)
            if len(key) != arity or any(len(m) != ctx.width for m in key):
                raise ValueError(f"key {key} does not fit arity {arity} / context {ctx.momenta}")
            if not isinstance(c, Poly):
                c = Poly.const(params, c)
            elif c.vars != params:
                raise VariableMismatch(f"coefficient over {c.vars}, expected {params}")
            c = c.truncate(T, order)
            if c:
                self.terms[key] = c

    @classmethod
    def _raw(cls, like: "TensorElem", raw: Dict[Key, Dict[Exps, Scalar]], arity: int | None = None, order: int | None = None) -> "TensorElem":
        x = object.__new__(cls)
        x.ctx = like.ctx
        x.params = like.params
        x.arity = like.arity if arity is None else arity
        x.order = like.order if order is None else order
        x._tidx = like._tidx
        x.terms = {}
        cap = x.order
        ti = x._tidx
        for key, t in raw.items():
            t = clean({e: c for e, c in t.items() if e[ti] <= cap})
            if t:
                x.terms[key] = Poly._raw(x.params, t)
        return x

    # constructors
    @classmethod
    def identity(cls, ctx, params, arity: int, order: int) -> "TensorElem":
        return cls(ctx, params, arity, order, {(ctx.identity(),) * arity: 1})

    @classmethod
    def zero(cls, ctx, params, arity: int, order: int) -> "TensorElem":
        return cls(ctx, params, arity, order)

    @classmethod
    def from_alg(cls, a: AlgElem, order: int) -> "TensorElem":
        return cls(a.ctx, a.params, 1, order, {(m,): c for m, c in a.terms.items()})

    @classmethod
    def pure(cls, legs: Sequence[AlgElem], order: int, coeff: Poly | Scalar = 1) -> "TensorElem":
        """``coeff * legs[0] (x) legs[1] (x) ...``, truncated."""
        first = legs[0]
        for a in legs[1:]:
            first._check(a)
        raw: Dict[Key, Dict[Exps, Scalar]] = {(): {(0,) * len(first.params): mpq(1)}}
        tcap = (first.params.index(T), order)
        for a in legs:
            nxt: Dict[Key, Dict[Exps, Scalar]] = {}
            for key, c in raw.items():
                for m, cm in a.terms.items():
                    mul_into(nxt.setdefault(key + (m,), {}), c, cm.terms, trunc=tcap)
            raw = nxt
        out = cls(first.ctx, first.params, len(legs), order)
        x = cls._raw(out, raw)
        if not isinstance(coeff, Poly) or coeff != 1:
            x = x.scale(coeff)
        return x

    # bookkeeping
    def _check(self, other: "TensorElem"):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"generator contexts differ: {self.ctx} vs {other.ctx}")
        if self.params != other.params:
            raise VariableMismatch(f"parameter contexts differ: {self.params} vs {other.params}")
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")
        if self.order != other.order:
            raise TruncationMismatch(f"truncation orders differ: {self.order} vs {other.order}")

    def with_order(self, order: int) -> "TensorElem":
        """Explicit re-truncation; only lowering is exact."""
        if order > self.order:
            raise TruncationMismatch("cannot raise the order of a truncated series")
        return TensorElem(self.ctx, self.params, self.arity, order, self.terms)

    def scale(self, c: Poly | Scalar) -> "TensorElem":
        if isinstance(c, Poly):
            if c.vars != self.params:
                raise VariableMismatch(f"{c.vars} vs {self.params}")
            raw = {}
            for key, p in self.terms.items():
                acc: Dict[Exps, Scalar] = {}
                mul_into(acc, p.terms, c.terms, trunc=(self._tidx, self.order))
                raw[key] = acc
            return TensorElem._raw(self, raw)
        return TensorElem._raw(self, {key: {e: v * c for e, v in p.terms.items()} for key, p in self.terms.items()})

    def __add__(self, other: "TensorElem") -> "TensorElem":
        self._check(other)
        raw = {k: dict(c.terms) for k, c in self.terms.items()}
        for k, c in other.terms.items():
            add_into(raw.setdefault(k, {}), c.terms)
        return TensorElem._raw(self, raw)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "TensorElem") -> "TensorElem":
        self._check(other)
        raw = {k: dict(c.terms) for k, c in self.terms.items()}
        for k, c in other.terms.items():
            add_into(raw.setdefault(k, {}), c.terms, -1)
        return TensorElem._raw(self, raw)

    def __mul__(self, other):
        if isinstance(other, TensorElem):
            return tensor_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, TensorElem):
            return (
                self.ctx == other.ctx
                and self.params == other.params
                and self.arity == other.arity
                and self.order == other.order
                and self.terms == other.terms
            )
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def min_t_degree(self) -> int:
        return min((c.min_degree(T) for c in self.terms.values()), default=self.order + 1)

    def t_coefficient(self, n: int) -> "TensorElem":
        """The ``t^n`` part, with ``t`` stripped (order kept)."""
        raw = {}
        for key, c in self.terms.items():
            part = {}
            for e, v in c.terms.items():
                if e[self._tidx] == n:
                    e2 = list(e)
                    e2[self._tidx] = 0
                    part[tuple(e2)] = v
            if part:
                raw[key] = part
        return TensorElem._raw(self, raw)

    def t_part(self, n: int) -> "TensorElem":
        """The ``t^n`` part, keeping ``t`` in the coefficients."""
        raw = {}
        for key, c in self.terms.items():
            part = {e: v for e, v in c.terms.items() if e[self._tidx] == n}
            if part:
                raw[key] = part
        return TensorElem._raw(self, raw)

    def map_coeffs(self, fn: Callable[[Poly], Poly], params: Sequence[str] | None = None) -> "TensorElem":
        params = self.params if params is None else tuple(params)
        return TensorElem(self.ctx, params, self.arity, self.order, {k: fn(c) for k, c in self.terms.items()})

    def subs(self, assignment: Mapping[str, Scalar]) -> "TensorElem":
        """Substitute exact values for non-``t`` parameters."""
        if T in assignment:
            raise ValueError("t is the grading parameter and cannot be substituted here")
        params = tuple(p for p in self.params if p not in assignment)
        return TensorElem(self.ctx, params, self.arity, self.order, {k: c.subs(assignment) for k, c in self.terms.items()})

    def leg(self) -> AlgElem:
        """The underlying algebra element of a one-leg series."""
        if self.arity != 1:
            raise ValueError("leg() needs arity 1")
        return AlgElem(self.ctx, self.params, {k[0]: c for k, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kc: (kc[1].min_degree(T), tuple(sum(m) for m in kc[0]), kc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.sorted_terms():
            mono = " ⊗ ".join(self.ctx.mono_str(m) for m in key)
            parts.append(f"{mono}" if c == 1 else f"({c}) {mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TensorElem(arity={self.arity}, N={self.order}, {self})"

    def to_json(self):
        return [
            {"legs": [self.ctx.mono_str(m) for m in key], "coeff": str(c)}
            for key, c in self.sorted_terms()
        ]


def _group_by_tdeg(x: TensorElem):
    groups: Dict[int, list] = {}
    for key, c in x.terms.items():
        groups.setdefault(c.min_degree(T), []).append((key, c.terms))
    return sorted(groups.items())


@lru_cache(maxsize=1 << 20)
def _leg_products(ka: Key, kb: Key) -> Tuple[Tuple[Key, int], ...]:
    combos = [((), 1)]
    for m1, m2 in zip(ka, kb):
        combos = [(key + (m,), c * k) for key, c in combos for m, k in mono_mul(m1, m2)]
    return tuple(combos)


def tensor_mul(a: TensorElem, b: TensorElem) -> TensorElem:
    a._check(b)
    N = a.order
    trunc = (a._tidx, N)
    ga = _group_by_tdeg(a)
    gb = _group_by_tdeg(b)
    raw: Dict[Key, Dict[Exps, Scalar]] = {}
    for da, terms_a in ga:
        for db, terms_b in gb:
            if da + db > N:
                break
            for ka, ca in terms_a:
                for kb, cb in terms_b:
                    combos = _leg_products(ka, kb)
                    if len(combos) == 1:
                        key, c = combos[0]
                        mul_into(raw.setdefault(key, {}), ca, cb, c, trunc)
                        continue
                    prod: Dict[Exps, Scalar] = {}
                    mul_into(prod, ca, cb, 1, trunc)
                    if prod:
                        for key, c in combos:
                            add_into(raw.setdefault(key, {}), prod, c)
    return TensorElem._raw(a, raw)


# -- leg maps -----------------------------------------------------------------

LegMap = Callable[[Mono], Iterable[Tuple[Key, Poly | Scalar]]]


def _coproduct_map(m: Mono):
    return (((l, r), c) for l, r, c in mono_coproduct(m))


def _counit_map(m: Mono):
    return (((), 1),) if not any(m) else ()


def _antipode_map(m: Mono):
    return (((mono,), c) for mono, c in mono_antipode(m))


_NAMED_MAPS = {
    "coproduct0": (_coproduct_map, 1),
    "counit": (_counit_map, -1),
    "antipode0": (_antipode_map, 0),
}


def apply_leg(x: TensorElem, leg: int, fn, arity_change: int | None = None) -> TensorElem:
    """Apply a linear map to one leg.

    ``fn`` is one of ``"coproduct0"``, ``"counit"``, ``"antipode0"`` or a
    callable taking a monomial and yielding ``(key, coeff)`` pairs where
    ``key`` is a tuple of ``1 + arity_change`` monomials and ``coeff`` is an
    integer, rational or Poly over ``x.params``.
    """
    if not 0 <= leg < x.arity:
        raise IndexError(f"leg {leg} out of range for arity {x.arity}")
    if isinstance(fn, str):
        fn, arity_change = _NAMED_MAPS[fn]
    elif arity_change is None:
        raise ValueError("arity_change is required for a custom leg map")
    new_arity = x.arity + arity_change
    if new_arity > MAX_ARITY:
        raise ValueError(f"resulting arity {new_arity} exceeds {MAX_ARITY}")
    if new_arity == 0:
        raise ValueError("the counit of a one-leg series is a scalar; use counit_scalar")
    trunc = (x._tidx, x.order)
    cache: Dict[Mono, list] = {}
    raw: Dict[Key, Dict[Exps, Scalar]] = {}
    for key, c in x.terms.items():
        m = key[leg]
        if m not in cache:
            cache[m] = list(fn(m))
        for sub, k in cache[m]:
            nk = key[:leg] + tuple(sub) + key[leg + 1:]
            if isinstance(k, Poly):
                mul_into(raw.setdefault(nk, {}), c.terms, k.terms, 1, trunc)
            else:
                add_into(raw.setdefault(nk, {}), c.terms, k)
    return TensorElem._raw(x, raw, arity=new_arity)


def counit_scalar(x: TensorElem) -> Poly:
    if x.arity != 1:
        raise ValueError("counit_scalar needs arity 1")
    return x.terms.get((x.ctx.identity(),), Poly.zero(x.params))


def merge_legs(x: TensorElem, i: int = 0, j: int = 1) -> TensorElem:
    """Multiply leg ``i`` into leg ``j`` (``j == i + 1``), lowering arity by one."""
    if j != i + 1 or j >= x.arity:
        raise ValueError("only adjacent legs can be merged")
    if x.arity == 1:
        raise ValueError("nothing to merge")
    raw: Dict[Key, Dict[Exps, Scalar]] = {}
    for key, c in x.terms.items():
        for m, k in mono_mul(key[i], key[j]):
            nk = key[:i] + (m,) + key[j + 1:]
            add_into(raw.setdefault(nk, {}), c.terms, k)
    return TensorElem._raw(x, raw, arity=x.arity - 1)


def embed(x: TensorElem, positions: Sequence[int], arity: int) -> TensorElem:
    """Place the legs of ``x`` at ``positions`` of a larger tensor, 1 elsewhere."""
    if len(positions) != x.arity or len(set(positions)) != len(positions):
        raise ValueError("one distinct position per leg is required")
    if arity > MAX_ARITY or max(positions) >= arity:
        raise ValueError("bad target arity")
    ident = x.ctx.identity()
    terms = {}
    for key, c in x.terms.items():
        new = [ident] * arity
        for p, m in zip(positions, key):
            new[p] = m
        terms[tuple(new)] = c
    out = object.__new__(TensorElem)
    out.ctx, out.params, out.arity, out.order, out._tidx = x.ctx, x.params, arity, x.order, x._tidx
    out.terms = terms
    return out


def flip(x: TensorElem) -> TensorElem:
    if x.arity != 2:
        raise ValueError("flip needs arity 2")
    out = object.__new__(TensorElem)
    out.ctx, out.params, out.arity, out.order, out._tidx = x.ctx, x.params, 2, x.order, x._tidx
    out.terms = {(k[1], k[0]): c for k, c in x.terms.items()}
    return out


def tensor_product(a: TensorElem, b: TensorElem) -> TensorElem:
    """``a (x) b`` for two series with the same order; arities add."""
    if a.ctx != b.ctx or a.params != b.params:
        raise ContextMismatch("contexts differ")
    if a.order != b.order:
        raise TruncationMismatch("truncation orders differ")
    if a.arity + b.arity > MAX_ARITY:
        raise ValueError("resulting arity too large")
    trunc = (a._tidx, a.order)
    raw: Dict[Key, Dict[Exps, Scalar]] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            mul_into(raw.setdefault(ka + kb, {}), ca.terms, cb.terms, 1, trunc)
    return TensorElem._raw(a, raw, arity=a.arity + b.arity)


# -- series -------------------------------------------------------------------


def exp_series(x: TensorElem) -> TensorElem:
    """``sum_m x^m / m!``; every term of ``x`` must carry ``t``."""
    if x.terms and x.min_t_degree() < 1:
        raise SeriesPrecondition("exp_series needs every term to have t-degree >= 1")
    one = TensorElem.identity(x.ctx, x.params, x.arity, x.order)
    result = one
    power = one
    for m in range(1, x.order + 1):
        power = tensor_mul(power, x)
        if not power:
            break
        result = result + power.scale(mpq(1, math.factorial(m)))
    return result


def inverse_series(f: TensorElem) -> TensorElem:
    """Inverse of ``1 + X`` with ``X`` of positive ``t``-degree: ``sum (-X)^m``."""
    one = TensorElem.identity(f.ctx, f.params, f.arity, f.order)
    rest = f - one
    if rest.terms and rest.min_t_degree() < 1:
        raise SeriesPrecondition("constant term of the series is not the identity")
    neg = -rest
    result = one
    power = one
    for _ in range(f.order):
        power = tensor_mul(power, neg)
        if not power:
            break
        result = result + power
    return result


def log_onebody(sign: int, order: int, ctx: GeneratorContext, params: Sequence[str], momentum: str = "P") -> TensorElem:
    """``ln(1 + sign*t*P) = sum_{m>=1} (-1)^(m+1) (sign t)^m P^m / m``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    t = Poly.var(params, T)
    terms = {}
    for m in range(1, order + 1):
        c = mpq((-1) ** (m + 1) * sign ** m, m)
        terms[(ctx.mono(**{momentum: m}),)] = t ** m * c
    return TensorElem(ctx, params, 1, order, terms)


def geometric_series(x: TensorElem) -> TensorElem:
    """``1 / (1 - x) = sum_m x^m``; ``x`` must carry ``t``."""
    if x.terms and x.min_t_degree() < 1:
        raise SeriesPrecondition("geometric series needs positive t-degree")
    one = TensorElem.identity(x.ctx, x.params, x.arity, x.order)
    result = one
    power = one
    for _ in range(x.order):
        power = tensor_mul(power, x)
        if not power:
            break
        result = result + power
    return result


def diff_u(x: TensorElem, var: str = "u") -> TensorElem:
    return TensorElem(x.ctx, x.params, x.arity, x.order, {k: c.diff(var) for k, c in x.terms.items()})


def commutator(a: TensorElem, b: TensorElem) -> TensorElem:
    return tensor_mul(a, b) - tensor_mul(b, a)
