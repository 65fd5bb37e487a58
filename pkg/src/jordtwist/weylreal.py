"""Weyl-algebra realizations and the differential action on polynomials.

Convention: ``[x_mu, p_nu] = i delta_{mu nu}``, i.e. ``p_mu`` acts as
``-i d/dx_mu``.  With it ``D = i x.p`` and ``P = v.p`` satisfy ``[D, P] = -P``
and the leading term of ``[p_mu, xhat_nu]`` is ``-i delta_{mu nu}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Mapping, Sequence, Tuple

from gmpy2 import mpq

from .exactmath import I, Poly, Rational, Scalar, VariableMismatch, add_into, canon, clean, mul_into, parse_rational
from .pbw import AlgElem, Mono
from .report import Report, timed
from .tensorcalc import TensorElem
from .twists import SYMBOLIC, UMode, fgz_inv, fru_inv, param_context

WeylKey = Tuple[int, ...]


@dataclass(frozen=True)
class SpaceConfig:
    n: int = 2
    v: Tuple[Rational, ...] = (mpq(1), mpq(0))
    probe: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be at least 1")
        v = tuple(parse_rational(c) for c in self.v)
        if len(v) != self.n:
            raise ValueError(f"v has {len(v)} components, expected {self.n}")
        object.__setattr__(self, "v", v)
        if not 0 <= self.probe < self.n:
            raise ValueError("probe index out of range")

    @classmethod
    def make(cls, v: Sequence, probe: int = 0) -> "SpaceConfig":
        v = tuple(parse_rational(c) for c in v)
        return cls(len(v), v, probe)

    @property
    def v_squared(self) -> Rational:
        return sum((c * c for c in self.v), mpq(0))

    @property
    def v_compliant(self) -> bool:
        return self.v_squared in (-1, 0, 1)

    @property
    def xnames(self) -> Tuple[str, ...]:
        return tuple(f"x{m}" for m in range(self.n))

    def dot(self, k: Sequence) -> Scalar:
        return sum((a * b for a, b in zip(self.v, k)), mpq(0))


def function_vars(config: SpaceConfig, extra: Sequence[str] = ()) -> Tuple[str, ...]:
    return config.xnames + tuple(extra)


@lru_cache(maxsize=None)
def weyl_mono_mul(n: int, k1: WeylKey, k2: WeylKey) -> Tuple[Tuple[WeylKey, Scalar], ...]:
    """``x^b p^a * x^c p^d`` with ``p^a x^c = sum_j C(a,j) c!/(c-j)! (-i)^j x^(c-j) p^(a-j)``."""
    b, a = k1[:n], k1[n:]
    c, d = k2[:n], k2[n:]
    parts = [((), (), mpq(1))]
    for mu in range(n):
        nxt = []
        for j in range(min(a[mu], c[mu]) + 1):
            coeff = comb(a[mu], j) * factorial(c[mu]) // factorial(c[mu] - j) * (-I) ** j
            xe = b[mu] + c[mu] - j
            pe = a[mu] - j + d[mu]
            for xs, ps, cc in parts:
                nxt.append((xs + (xe,), ps + (pe,), cc * coeff))
        parts = nxt
    acc: Dict[WeylKey, Scalar] = {}
    for xs, ps, cc in parts:
        key = xs + ps
        acc[key] = acc.get(key, 0) + cc
    return tuple((k, canon(v)) for k, v in acc.items() if v)


class WeylElem:
    """Normal-ordered (x left of p) element with Poly coefficients."""

    __slots__ = ("config", "params", "terms")

    def __init__(self, config: SpaceConfig, params: Sequence[str], terms: Mapping[WeylKey, Poly | Scalar] | None = None):
        self.config = config
        self.params = tuple(params)
        self.terms: Dict[WeylKey, Poly] = {}
        for k, c in (terms or {}).items():
            if len(k) != 2 * config.n:
                raise ValueError(f"key {k} does not match dimension {config.n}")
            if not isinstance(c, Poly):
                c = Poly.const(self.params, c)
            elif c.vars != self.params:
                raise VariableMismatch(f"{c.vars} vs {self.params}")
            if c:
                self.terms[tuple(k)] = c

    @classmethod
    def _raw(cls, like: "WeylElem", raw) -> "WeylElem":
        w = object.__new__(cls)
        w.config, w.params, w.terms = like.config, like.params, {}
        for k, t in raw.items():
            t = clean(t)
            if t:
                w.terms[k] = Poly._raw(like.params, t)
        return w

    @classmethod
    def scalar(cls, config, params, value) -> "WeylElem":
        return cls(config, params, {(0,) * (2 * config.n): value})

    @classmethod
    def x(cls, config, params, mu: int) -> "WeylElem":
        key = [0] * (2 * config.n)
        key[mu] = 1
        return cls(config, params, {tuple(key): 1})

    @classmethod
    def p(cls, config, params, mu: int) -> "WeylElem":
        key = [0] * (2 * config.n)
        key[config.n + mu] = 1
        return cls(config, params, {tuple(key): 1})

    def _check(self, other: "WeylElem"):
        if self.config != other.config:
            raise ValueError(f"space configs differ: {self.config} vs {other.config}")
        if self.params != other.params:
            raise VariableMismatch(f"{self.params} vs {other.params}")

    def _coerce(self, other) -> "WeylElem":
        if isinstance(other, WeylElem):
            self._check(other)
            return other
        return WeylElem.scalar(self.config, self.params, other)

    def __add__(self, other):
        other = self._coerce(other)
        raw = {k: dict(c.terms) for k, c in self.terms.items()}
        for k, c in other.terms.items():
            add_into(raw.setdefault(k, {}), c.terms)
        return WeylElem._raw(self, raw)

    __radd__ = __add__

    def __neg__(self):
        return WeylElem(self.config, self.params, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, WeylElem):
            return weyl_mul(self, other)
        if isinstance(other, Poly) and other.vars != self.params:
            raise VariableMismatch(f"{other.vars} vs {self.params}")
        return WeylElem(self.config, self.params, {k: c * other for k, c in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        out = WeylElem.scalar(self.config, self.params, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, WeylElem):
            return self.config == other.config and self.params == other.params and self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def subs(self, assignment: Mapping[str, Scalar]) -> "WeylElem":
        params = tuple(p for p in self.params if p not in assignment)
        return WeylElem(self.config, params, {k: c.subs(assignment) for k, c in self.terms.items()})

    def key_str(self, k: WeylKey) -> str:
        n = self.config.n
        parts = [f"x{m}" if e == 1 else f"x{m}^{e}" for m, e in enumerate(k[:n]) if e]
        parts += [f"p{m}" if e == 1 else f"p{m}^{e}" for m, e in enumerate(k[n:]) if e]
        return " ".join(parts) if parts else "1"

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kc: (sum(kc[0]), kc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) {self.key_str(k)}" for k, c in self.sorted_terms())

    def __repr__(self):
        return f"WeylElem({self})"

    def to_json(self):
        return [{"mono": self.key_str(k), "coeff": str(c)} for k, c in self.sorted_terms()]


def weyl_mul(a: WeylElem, b: WeylElem) -> WeylElem:
    a._check(b)
    n = a.config.n
    raw: Dict[WeylKey, Dict] = {}
    for k1, c1 in a.terms.items():
        for k2, c2 in b.terms.items():
            for k, coeff in weyl_mono_mul(n, k1, k2):
                mul_into(raw.setdefault(k, {}), c1.terms, c2.terms, coeff)
    return WeylElem._raw(a, raw)


def weyl_commutator(a: WeylElem, b: WeylElem) -> WeylElem:
    return a * b - b * a


# -- realizations of the abstract generators ---------------------------------------


def P_weyl(config: SpaceConfig, params) -> WeylElem:
    out = WeylElem(config, params)
    for mu, c in enumerate(config.v):
        if c:
            out = out + WeylElem.p(config, params, mu) * c
    return out


def D_weyl(config: SpaceConfig, params) -> WeylElem:
    out = WeylElem(config, params)
    for mu in range(config.n):
        out = out + WeylElem.x(config, params, mu) * WeylElem.p(config, params, mu)
    return out * I


def realize(a: AlgElem, config: SpaceConfig) -> WeylElem:
    """Image of a PBW element under ``P -> v.p``, ``D -> i x.p`` and ``p -> p_probe``."""
    params = a.params
    images = []
    for name in a.ctx.momenta:
        images.append(P_weyl(config, params) if name == "P" else WeylElem.p(config, params, config.probe))
    D = D_weyl(config, params)
    out = WeylElem(config, params)
    for m, c in a.terms.items():
        term = WeylElem.scalar(config, params, c)
        for img, k in zip(images, m[:-1]):
            if k:
                term = term * img ** k
        if m[-1]:
            term = term * D ** m[-1]
        out = out + term
    return out


# -- action on polynomial functions ---------------------------------------------------


def _lift_coeff(c: Poly, target: Tuple[str, ...]) -> Poly:
    if c.is_constant():
        return Poly.const(target, c.constant_term())
    return c.extend(target)


def act_D(f: Poly, config: SpaceConfig) -> Poly:
    """``x.grad f``: scales each monomial by its x-degree."""
    idx = [f.vars.index(x) for x in config.xnames]
    return Poly._raw(f.vars, clean({e: c * sum(e[i] for i in idx) for e, c in f.terms.items()}))


def act_p(f: Poly, config: SpaceConfig, mu: int) -> Poly:
    return f.diff(config.xnames[mu]) * (-I)


def act_P(f: Poly, config: SpaceConfig) -> Poly:
    out = Poly.zero(f.vars)
    for mu, c in enumerate(config.v):
        if c:
            out = out + act_p(f, config, mu) * c
    return out


def act_mono(m: Mono, ctx_momenta: Sequence[str], f: Poly, config: SpaceConfig) -> Poly:
    """``g^a D^d |> f``: D acts first, then the momenta."""
    for _ in range(m[-1]):
        f = act_D(f, config)
        if not f:
            return f
    for name, k in zip(ctx_momenta, m[:-1]):
        for _ in range(k):
            f = act_P(f, config) if name == "P" else act_p(f, config, config.probe)
            if not f:
                return f
    return f


def act(a, f: Poly, config: SpaceConfig) -> Poly:
    """Action of an AlgElem or WeylElem on a polynomial in ``config.xnames`` (plus parameters).

    Coefficients must be constants or polynomials over variables of ``f``.
    """
    missing = [x for x in config.xnames if x not in f.vars]
    if missing:
        raise VariableMismatch(f"function lacks coordinates {missing}")
    out = Poly.zero(f.vars)
    if isinstance(a, AlgElem):
        for m, c in a.terms.items():
            out = out + act_mono(m, a.ctx.momenta, f, config) * _lift_coeff(c, f.vars)
        return out
    if isinstance(a, WeylElem):
        n = config.n
        for k, c in a.terms.items():
            g = f
            for mu, e in enumerate(k[n:]):
                for _ in range(e):
                    g = act_p(g, config, mu)
            if not g:
                continue
            xmono = [0] * len(f.vars)
            for mu, e in enumerate(k[:n]):
                xmono[f.vars.index(config.xnames[mu])] = e
            out = out + g * Poly(f.vars, {tuple(xmono): 1}) * _lift_coeff(c, f.vars)
        return out
    raise TypeError(f"cannot act with {type(a).__name__}")


# -- noncommutative coordinates -----------------------------------------------------------


def xhat(mu: int, config: SpaceConfig, u: UMode = SYMBOLIC) -> WeylElem:
    """``(x_mu + (1-u) i t v_mu D)(1 + u t P) + u(1-u) t^2 i v_mu P``."""
    if not 0 <= mu < config.n:
        raise IndexError(f"index {mu} out of range for dimension {config.n}")
    params, uu, t = param_context(u)
    one = WeylElem.scalar(config, params, 1)
    x = WeylElem.x(config, params, mu)
    D = D_weyl(config, params)
    P = P_weyl(config, params)
    vmu = config.v[mu]
    first = x + D * ((1 - uu) * t * vmu) * I
    return first * (one + P * (uu * t)) + P * (uu * (1 - uu) * t * t * vmu) * I


def xhat_from_twist(f_inv: TensorElem, mu: int, config: SpaceConfig) -> WeylElem:
    """``m(F^-1 (|> (x) 1)(x_mu (x) 1))``: left legs act on ``x_mu``, right legs stay operators."""
    if f_inv.arity != 2:
        raise ValueError("a twist has two legs")
    if f_inv.order < 2:
        raise ValueError("need truncation order >= 2 for an exact realization")
    if not 0 <= mu < config.n:
        raise IndexError(f"index {mu} out of range for dimension {config.n}")
    fvars = config.xnames
    x_mu = Poly.var(fvars, fvars[mu])
    params = f_inv.params
    out = WeylElem(config, params)
    acted: Dict[Mono, Poly] = {}
    right_cache: Dict[Mono, WeylElem] = {}
    for (left, right), c in f_inv.terms.items():
        if left not in acted:
            acted[left] = act_mono(left, f_inv.ctx.momenta, x_mu, config)
        g = acted[left]
        if not g:
            continue
        if right not in right_cache:
            right_cache[right] = realize(AlgElem.monomial(f_inv.ctx, params, right), config)
        fn = WeylElem(config, params, {e + (0,) * config.n: Poly.const(params, cg) * c for e, cg in g.terms.items()})
        out = out + fn * right_cache[right]
    return out


def corrupted_xhat(mu: int, config: SpaceConfig, u: UMode = SYMBOLIC) -> WeylElem:
    """Negative control: ``xhat_mu + t^2 x_mu P``."""
    params, _, t = param_context(u)
    return xhat(mu, config, u) + WeylElem.x(config, params, mu) * P_weyl(config, params) * (t * t)


def check_kappa_minkowski(config: SpaceConfig, u: UMode = SYMBOLIC, corrupt: bool = False) -> Report:
    build = corrupted_xhat if corrupt else xhat

    def run():
        if config.n < 2:
            raise ValueError("need at least two coordinates")
        params, _, t = param_context(u)
        xs = [build(mu, config, u) for mu in range(config.n)]
        residual = {}
        for mu in range(config.n):
            for nu in range(mu + 1, config.n):
                expected = (xs[nu] * config.v[mu] - xs[mu] * config.v[nu]) * t * I
                residual[f"[x{mu},x{nu}]"] = weyl_commutator(xs[mu], xs[nu]) - expected
        return residual

    return timed("minkowski", {"u": str(u), "v": [str(c) for c in config.v]}, run, v_squared=str(config.v_squared))


def check_p_xhat(config: SpaceConfig, u: UMode = SYMBOLIC, corrupt: bool = False) -> Report:
    build = corrupted_xhat if corrupt else xhat

    def run():
        params, uu, t = param_context(u)
        one = WeylElem.scalar(config, params, 1)
        P = P_weyl(config, params)
        residual = {}
        for mu in range(config.n):
            p_mu = WeylElem.p(config, params, mu)
            for nu in range(config.n):
                delta = 1 if mu == nu else 0
                expected = (one * (-I * delta) + p_mu * ((1 - uu) * t * config.v[nu]) * I) * (one + P * (uu * t))
                residual[f"[p{mu},xhat{nu}]"] = weyl_commutator(p_mu, build(nu, config, u)) - expected
        return residual

    return timed("p_xhat", {"u": str(u), "v": [str(c) for c in config.v]}, run)


def check_realizations(config: SpaceConfig, u: UMode = SYMBOLIC, N: int = 2, corrupt: bool = False) -> Report:
    build = corrupted_xhat if corrupt else xhat

    def run():
        residual = {}
        for mu in range(config.n):
            closed = build(mu, config, u)
            residual[f"gz_x{mu}"] = xhat_from_twist(fgz_inv(u, N), mu, config) - closed
            residual[f"r_x{mu}"] = xhat_from_twist(fru_inv(u, N), mu, config) - closed
        return residual

    return timed("realization", {"u": str(u), "N": N, "v": [str(c) for c in config.v]}, run)
