"""Enveloping algebra of ``[D, g] = -g`` with commuting momenta ``g``.

A PBW monomial is a flat tuple ``(a_1, ..., a_m, d)`` standing for
``g_1^a_1 ... g_m^a_m D^d`` (momenta left, dilatation right).  Coefficients
are :class:`~jordtwist.exactmath.Poly` over a parameter context such as
``("u", "t")``.

The only rewriting rule needed is ``q(D) g^alpha = g^alpha q(D - |alpha|)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from gmpy2 import mpq

from .exactmath import Exps, Poly, Scalar, VariableMismatch, add_into, clean, mul_into

Mono = Tuple[int, ...]


@dataclass(frozen=True)
class GeneratorContext:
    """Momentum generator names; ``D`` is implicit and always present."""

    momenta: Tuple[str, ...] = ("P",)

    def __post_init__(self):
        names = tuple(self.momenta)
        object.__setattr__(self, "momenta", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate momentum names {names}")
        if "D" in names:
            raise ValueError("D is the dilatation and cannot be a momentum")
        if not names:
            raise ValueError("at least one momentum generator is required")

    @property
    def width(self) -> int:
        return len(self.momenta) + 1

    def identity(self) -> Mono:
        return (0,) * self.width

    def momentum_index(self, name: str) -> int:
        try:
            return self.momenta.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a momentum of {self.momenta}") from None

    def mono(self, d: int = 0, **momenta: int) -> Mono:
        e = [0] * self.width
        for name, k in momenta.items():
            e[self.momentum_index(name)] = k
        e[-1] = d
        return tuple(e)

    def mono_str(self, m: Mono) -> str:
        parts = []
        for name, k in zip(self.momenta, m[:-1]):
            if k:
                parts.append(name if k == 1 else f"{name}^{k}")
        if m[-1]:
            parts.append("D" if m[-1] == 1 else f"D^{m[-1]}")
        return " ".join(parts) if parts else "1"

    def mono_latex(self, m: Mono) -> str:
        parts = []
        for name, k in zip(self.momenta, m[:-1]):
            if k:
                parts.append(name if k == 1 else f"{name}^{{{k}}}")
        if m[-1]:
            parts.append("D" if m[-1] == 1 else f"D^{{{m[-1]}}}")
        return " ".join(parts) if parts else "1"


DEFAULT_CONTEXT = GeneratorContext()
PROBE_CONTEXT = GeneratorContext(("P", "p"))


# -- monomial kernels (integer structure constants, cached) -----------------


@lru_cache(maxsize=None)
def mono_mul(m1: Mono, m2: Mono) -> Tuple[Tuple[Mono, int], ...]:
    """``g^a D^d * g^b D^e = sum_j C(d,j) (-|b|)^(d-j) g^(a+b) D^(j+e)``."""
    d = m1[-1]
    shift = -sum(m2[:-1])
    mom = tuple(x + y for x, y in zip(m1[:-1], m2[:-1]))
    e = m2[-1]
    if d == 0 or shift == 0:
        return ((mom + (d + e,), 1),)
    return tuple(
        (mom + (j + e,), comb(d, j) * shift ** (d - j)) for j in range(d + 1)
    )


@lru_cache(maxsize=None)
def mono_coproduct(m: Mono) -> Tuple[Tuple[Mono, Mono, int], ...]:
    """Primitive coproduct of a PBW monomial; the two legs commute."""
    split = [((), (), 1)]
    for k in m:
        split = [
            (left + (j,), right + (k - j,), c * comb(k, j))
            for left, right, c in split
            for j in range(k + 1)
        ]
    return tuple(split)


@lru_cache(maxsize=None)
def mono_antipode(m: Mono) -> Tuple[Tuple[Mono, int], ...]:
    """``S0(g^a D^d) = (-D)^d (-g)^a = (-1)^(d+|a|) g^a (D - |a|)^d``."""
    d = m[-1]
    size = sum(m[:-1])
    sign = -1 if (d + size) % 2 else 1
    return tuple((mono, sign * c) for mono, c in mono_mul((0,) * (len(m) - 1) + (d,), m[:-1] + (0,)))


class ContextMismatch(ValueError):
    pass


class AlgElem:
    """Normal-ordered element of the enveloping algebra with Poly coefficients."""

    __slots__ = ("ctx", "params", "terms")

    def __init__(self, ctx: GeneratorContext, params: Sequence[str], terms: Mapping[Mono, Poly] | None = None):
        self.ctx = ctx
        self.params = tuple(params)
        self.terms: Dict[Mono, Poly] = {}
        for m, c in (terms or {}).items():
            if len(m) != ctx.width:
                raise ValueError(f"monomial {m} does not fit context {ctx.momenta}")
            if not isinstance(c, Poly):
                c = Poly.const(self.params, c)
            elif c.vars != self.params:
                raise VariableMismatch(f"coefficient over {c.vars}, expected {self.params}")
            if c:
                self.terms[tuple(m)] = c

    @classmethod
    def _raw(cls, ctx, params, raw: Dict[Mono, Dict[Exps, Scalar]]) -> "AlgElem":
        a = object.__new__(cls)
        a.ctx = ctx
        a.params = params
        a.terms = {}
        for m, t in raw.items():
            t = clean(t)
            if t:
                a.terms[m] = Poly._raw(params, t)
        return a

    # constructors
    @classmethod
    def zero(cls, ctx, params) -> "AlgElem":
        return cls(ctx, params)

    @classmethod
    def scalar(cls, ctx, params, value) -> "AlgElem":
        return cls(ctx, params, {ctx.identity(): value})

    @classmethod
    def one(cls, ctx, params) -> "AlgElem":
        return cls.scalar(ctx, params, 1)

    @classmethod
    def gen(cls, ctx, params, name: str) -> "AlgElem":
        if name == "D":
            return cls(ctx, params, {ctx.mono(d=1): 1})
        return cls(ctx, params, {ctx.mono(**{name: 1}): 1})

    @classmethod
    def monomial(cls, ctx, params, m: Mono, coeff=1) -> "AlgElem":
        return cls(ctx, params, {tuple(m): coeff})

    def _check(self, other: "AlgElem"):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"generator contexts differ: {self.ctx} vs {other.ctx}")
        if self.params != other.params:
            raise VariableMismatch(f"parameter contexts differ: {self.params} vs {other.params}")

    def _coerce(self, other) -> "AlgElem":
        if isinstance(other, AlgElem):
            self._check(other)
            return other
        if isinstance(other, Poly):
            return AlgElem.scalar(self.ctx, self.params, other)
        return AlgElem.scalar(self.ctx, self.params, other)

    def __add__(self, other):
        other = self._coerce(other)
        raw = {m: dict(c.terms) for m, c in self.terms.items()}
        for m, c in other.terms.items():
            add_into(raw.setdefault(m, {}), c.terms)
        return AlgElem._raw(self.ctx, self.params, raw)

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.ctx, self.params, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, AlgElem):
            if isinstance(other, Poly):
                if other.vars != self.params:
                    raise VariableMismatch(f"{other.vars} vs {self.params}")
                return AlgElem(self.ctx, self.params, {m: c * other for m, c in self.terms.items()})
            return AlgElem(self.ctx, self.params, {m: c * other for m, c in self.terms.items()})
        return alg_mul(self, other)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int) -> "AlgElem":
        result = AlgElem.one(self.ctx, self.params)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, AlgElem):
            return self.ctx == other.ctx and self.params == other.params and self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def shift_D(self, s: int) -> "AlgElem":
        """Replace ``D`` by ``D + s`` in every monomial."""
        raw: Dict[Mono, Dict[Exps, Scalar]] = {}
        for m, c in self.terms.items():
            d = m[-1]
            for j in range(d + 1):
                k = comb(d, j) * s ** (d - j)
                if k:
                    add_into(raw.setdefault(m[:-1] + (j,), {}), c.terms, k)
        return AlgElem._raw(self.ctx, self.params, raw)

    def max_param_degree(self, var: str) -> int:
        return max((c.degree(var) for c in self.terms.values()), default=-1)

    def map_coeffs(self, fn, params: Sequence[str] | None = None) -> "AlgElem":
        params = self.params if params is None else tuple(params)
        return AlgElem(self.ctx, params, {m: fn(c) for m, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(_term_str(c, self.ctx.mono_str(m)) for m, c in self.sorted_terms())

    def __repr__(self):
        return f"AlgElem({self})"


def _term_str(c: Poly, mono: str) -> str:
    if c == 1:
        return mono
    text = str(c)
    if mono == "1":
        return text if len(c.terms) == 1 else f"({text})"
    return f"({text}) {mono}"


def alg_mul(a: AlgElem, b: AlgElem) -> AlgElem:
    a._check(b)
    raw: Dict[Mono, Dict[Exps, Scalar]] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            for m, k in mono_mul(m1, m2):
                mul_into(raw.setdefault(m, {}), c1.terms, c2.terms, k)
    return AlgElem._raw(a.ctx, a.params, raw)


def binom_D(n: int, ctx: GeneratorContext = DEFAULT_CONTEXT, params: Sequence[str] = ("t",), shift: int = 0, sign: int = 1) -> AlgElem:
    """``binom(sign*D + shift, n)`` in the power basis of ``D``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    # coefficients of prod_{j<n} (sign*D + shift - j) as a polynomial in D
    poly = [mpq(1)]
    for j in range(n):
        c0 = shift - j
        nxt = [mpq(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] += c * c0
            nxt[i + 1] += c * sign
        poly = nxt
    fact = 1
    for j in range(2, n + 1):
        fact *= j
    return AlgElem(ctx, params, {ctx.mono(d=i): c / fact for i, c in enumerate(poly) if c})


def counit(a: AlgElem) -> Poly:
    return a.terms.get(a.ctx.identity(), Poly.zero(a.params))


def antipode0(a: AlgElem) -> AlgElem:
    raw: Dict[Mono, Dict[Exps, Scalar]] = {}
    for m, c in a.terms.items():
        for mono, k in mono_antipode(m):
            add_into(raw.setdefault(mono, {}), c.terms, k)
    return AlgElem._raw(a.ctx, a.params, raw)


def momentum_degree(m: Mono) -> int:
    return sum(m[:-1])


def d_polynomial(coeffs: Iterable[Scalar], ctx: GeneratorContext = DEFAULT_CONTEXT, params=("t",)) -> AlgElem:
    """``sum_i coeffs[i] D^i``."""
    return AlgElem(ctx, params, {ctx.mono(d=i): c for i, c in enumerate(coeffs) if c})
