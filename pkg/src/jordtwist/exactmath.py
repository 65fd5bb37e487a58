"""Exact scalars and sparse multivariate polynomials.

Rationals are ``gmpy2.mpq``.  A :class:`GaussianRational` only appears when
the imaginary part is nonzero; every arithmetic result is collapsed back to a
plain rational as soon as the imaginary part cancels, so equality of
coefficient maps is equality of values.
"""
from __future__ import annotations

import math
import re
from typing import Dict, Mapping, Sequence, Tuple, Union

from gmpy2 import mpq

Rational = type(mpq(0))
Exps = Tuple[int, ...]


class GaussianRational:
    """``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    @staticmethod
    def coerce(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(value, 0)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return canon(GaussianRational(self.re + other.re, self.im + other.im))
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return canon(
                GaussianRational(
                    self.re * other.re - self.im * other.im,
                    self.re * other.im + self.im * other.re,
                )
            )
        if isinstance(other, (int, Rational)):
            if other == 0:
                return mpq(0)
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            norm = other.re * other.re + other.im * other.im
            return self * other.conjugate() * (1 / norm)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, n: int):
        result = mpq(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return scalar_str(self)


Scalar = Union[int, Rational, GaussianRational]
I = GaussianRational(0, 1)


def canon(value: Scalar) -> Scalar:
    """Collapse real Gaussian rationals and ints to ``mpq``."""
    if isinstance(value, GaussianRational):
        return value.re if value.im == 0 else value
    return mpq(value)


def scalar_str(value: Scalar) -> str:
    value = canon(value)
    if isinstance(value, GaussianRational):
        if value.re == 0:
            return _imag_str(value.im)
        sign = "+" if value.im > 0 else "-"
        return f"({value.re} {sign} {_imag_str(abs(value.im))})"
    return str(value)


def _imag_str(im) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}i"


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: Union[str, int, Rational]) -> Rational:
    """Parse ``"a"`` or ``"a/b"``; decimal and float input is rejected."""
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, (int, Rational)):
        return mpq(text)
    if not isinstance(text, str):
        raise TypeError(f"expected an exact rational, got {type(text).__name__}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not an exact rational of the form a/b: {text!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return mpq(int(num), int(den) if den else 1)


# -- raw term-map helpers ---------------------------------------------------
# Hot loops in the tensor calculus work on plain dicts and wrap once.


def add_into(acc: Dict[Exps, Scalar], terms: Mapping[Exps, Scalar], scale: Scalar = 1) -> None:
    for e, c in terms.items():
        v = acc.get(e, 0) + c * scale
        if v:
            acc[e] = v
        elif e in acc:
            del acc[e]


def mul_into(
    acc: Dict[Exps, Scalar],
    a: Mapping[Exps, Scalar],
    b: Mapping[Exps, Scalar],
    scale: Scalar = 1,
    trunc: Tuple[int, int] | None = None,
) -> None:
    """``acc += scale * a * b``, dropping exponents with ``e[idx] > cap``."""
    if trunc is None:
        for ea, ca in a.items():
            cas = ca * scale
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = acc.get(e, 0) + cas * cb
                if v:
                    acc[e] = v
                elif e in acc:
                    del acc[e]
        return
    idx, cap = trunc
    for ea, ca in a.items():
        room = cap - ea[idx]
        if room < 0:
            continue
        cas = ca * scale
        for eb, cb in b.items():
            if eb[idx] > room:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            v = acc.get(e, 0) + cas * cb
            if v:
                acc[e] = v
            elif e in acc:
                del acc[e]


def clean(terms: Dict[Exps, Scalar]) -> Dict[Exps, Scalar]:
    return {e: canon(c) for e, c in terms.items() if c}


class VariableMismatch(ValueError):
    pass


class Poly:
    """Sparse polynomial over an explicit, ordered tuple of variable names.

    Values are immutable.  Operations between polynomials with different
    variable tuples raise :class:`VariableMismatch`; use :meth:`extend` to
    embed into a larger context on purpose.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exps, Scalar] | None = None):
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        self.terms: Dict[Exps, Scalar] = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                if c:
                    self.terms[tuple(e)] = canon(c)
        self._hash = None

    @classmethod
    def _raw(cls, variables: Tuple[str, ...], terms: Dict[Exps, Scalar]) -> "Poly":
        p = object.__new__(cls)
        p.vars = variables
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Poly":
        return cls(variables)

    @classmethod
    def const(cls, variables: Sequence[str], value: Scalar) -> "Poly":
        return cls(variables, {(0,) * len(tuple(variables)): value})

    @classmethod
    def one(cls, variables: Sequence[str]) -> "Poly":
        return cls.const(variables, 1)

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "Poly":
        variables = tuple(variables)
        if name not in variables:
            raise VariableMismatch(f"{name!r} is not one of {variables}")
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> Tuple["Poly", ...]:
        return tuple(cls.var(variables, v) for v in variables)

    # coercion
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise VariableMismatch(f"variable contexts differ: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Rational, GaussianRational)):
            return Poly.const(self.vars, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    # arithmetic
    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self.terms)
        add_into(acc, other.terms)
        return Poly._raw(self.vars, clean(acc))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self.terms)
        add_into(acc, other.terms, -1)
        return Poly._raw(self.vars, clean(acc))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational, GaussianRational)):
            if not other:
                return Poly.zero(self.vars)
            return Poly._raw(self.vars, clean({e: c * other for e, c in self.terms.items()}))
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        acc: Dict[Exps, Scalar] = {}
        mul_into(acc, self.terms, other.terms)
        return Poly._raw(self.vars, clean(acc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * (1 / other)
        if isinstance(other, (int, Rational)):
            return self * (mpq(1) / other)
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_trunc(self, other: "Poly", var: str, cap: int) -> "Poly":
        other = self._coerce(other)
        acc: Dict[Exps, Scalar] = {}
        mul_into(acc, self.terms, other.terms, trunc=(self.vars.index(var), cap))
        return Poly._raw(self.vars, clean(acc))

    # comparison
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Rational, GaussianRational)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * len(self.vars): canon(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * len(self.vars), mpq(0))

    # structure
    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def min_degree(self, var: str) -> int:
        if not self.terms:
            return 0
        i = self.vars.index(var)
        return min(e[i] for e in self.terms)

    def truncate(self, var: str, cap: int) -> "Poly":
        i = self.vars.index(var)
        return Poly._raw(self.vars, {e: c for e, c in self.terms.items() if e[i] <= cap})

    def coefficient(self, var: str, k: int) -> "Poly":
        """Coefficient of ``var**k``, still expressed over the same variables."""
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                e2 = list(e)
                e2[i] = 0
                out[tuple(e2)] = c
        return Poly._raw(self.vars, out)

    def diff(self, var: str) -> "Poly":
        if var not in self.vars:
            return Poly.zero(self.vars)
        i = self.vars.index(var)
        out: Dict[Exps, Scalar] = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return Poly._raw(self.vars, out)

    def extend(self, variables: Sequence[str]) -> "Poly":
        """Embed into a context containing every current variable."""
        variables = tuple(variables)
        missing = [v for v in self.vars if v not in variables]
        if missing:
            raise VariableMismatch(f"cannot embed: {missing} not in {variables}")
        pos = [variables.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * len(variables)
            for p, k in zip(pos, e):
                e2[p] = k
            out[tuple(e2)] = c
        return Poly._raw(variables, out)

    def subs(self, assignment: Mapping[str, Scalar]) -> "Poly":
        """Substitute exact values for some variables; they leave the context."""
        unknown = set(assignment) - set(self.vars)
        if unknown:
            raise VariableMismatch(f"unknown variables {sorted(unknown)} for {self.vars}")
        keep = [i for i, v in enumerate(self.vars) if v not in assignment]
        gone = [(i, canon(assignment[v])) for i, v in enumerate(self.vars) if v in assignment]
        acc: Dict[Exps, Scalar] = {}
        for e, c in self.terms.items():
            for i, val in gone:
                if e[i]:
                    c = c * val ** e[i]
            if not c:
                continue
            e2 = tuple(e[i] for i in keep)
            v = acc.get(e2, 0) + c
            if v:
                acc[e2] = v
            else:
                acc.pop(e2, None)
        return Poly._raw(tuple(self.vars[i] for i in keep), clean(acc))

    def compose(self, images: Mapping[str, "Poly"]) -> "Poly":
        """Substitute polynomials (all over one common context) for variables."""
        target = None
        for p in images.values():
            target = p.vars
            break
        if target is None:
            return self
        powers = {}
        result = Poly.zero(target)
        for e, c in self.terms.items():
            term = Poly.const(target, c)
            for v, k in zip(self.vars, e):
                if not k:
                    continue
                if v in images:
                    key = (v, k)
                    if key not in powers:
                        powers[key] = images[v] ** k
                    term = term * powers[key]
                else:
                    term = term * Poly.var(target, v) ** k
            result = result + term
        return result

    def eval(self, assignment: Mapping[str, Scalar]) -> Scalar:
        missing = [v for v in self.vars if v not in assignment]
        if missing:
            raise KeyError(f"no value assigned to {missing}")
        return self.subs({v: assignment[v] for v in self.vars}).constant_term()

    # rendering
    def sorted_terms(self):
        """Terms in graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            cs = scalar_str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.vars}, {str(self)!r})"

    def latex(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = " ".join(v if k == 1 else f"{v}^{{{k}}}" for v, k in zip(self.vars, e) if k)
            parts.append(_latex_scalar(c, bool(mono)) + mono)
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        return [[list(e), scalar_str(c)] for e, c in self.sorted_terms()]


def _latex_scalar(c: Scalar, has_mono: bool) -> str:
    c = canon(c)
    if has_mono and c == 1:
        return ""
    if has_mono and c == -1:
        return "-"
    if isinstance(c, GaussianRational):
        return scalar_str(c).replace("i", "\\mathrm{i}") + (" " if has_mono else "")
    if c.denominator != 1:
        sign = "-" if c < 0 else ""
        return f"{sign}\\frac{{{abs(c.numerator)}}}{{{c.denominator}}}" + (" " if has_mono else "")
    return str(c) + (" " if has_mono else "")


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def binom_poly(q: Poly, n: int) -> Poly:
    """``q (q-1) ... (q-n+1) / n!``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = Poly.one(q.vars)
    for j in range(n):
        result = result * (q - j)
    return result * mpq(1, math.factorial(n))


def binom_int(q: int, n: int) -> Rational:
    """Generalized binomial for integer (possibly negative) top argument."""
    if n < 0:
        return mpq(0)
    num = 1
    for j in range(n):
        num *= q - j
    return mpq(num, math.factorial(n))


def poly_eval(p: Poly, assignment: Mapping[str, Scalar]) -> Scalar:
    return p.eval(assignment)


def poly_diff(p: Poly, var: str) -> Poly:
    return p.diff(var)
