"""Twist and R-matrix constructors as truncated two-leg series.

``u`` is either the string ``"symbolic"`` (coefficients live in Q[u, t]) or an
exact rational (coefficients live in Q[t]).  Floating-point ``u`` is refused.
Every constructor returns the *inverse* twist unless its name says otherwise,
matching the way the series are written down.
"""
from __future__ import annotations

from typing import Tuple, Union

from gmpy2 import mpq

from .exactmath import Poly, Rational, parse_rational
from .pbw import DEFAULT_CONTEXT, AlgElem, GeneratorContext, binom_D
from .tensorcalc import (
    SeriesPrecondition,
    TensorElem,
    apply_leg,
    exp_series,
    flip,
    inverse_series,
    log_onebody,
    tensor_mul,
    tensor_product,
)

SYMBOLIC = "symbolic"
UMode = Union[str, int, Rational]


def param_context(u: UMode) -> Tuple[Tuple[str, ...], Poly, Poly]:
    """Parameter names plus the polynomials standing for ``u`` and ``t``."""
    if isinstance(u, float):
        raise TypeError("floating-point u is not allowed; pass a rational such as '1/3'")
    if u == SYMBOLIC or u is None:
        params = ("u", "t")
        return params, Poly.var(params, "u"), Poly.var(params, "t")
    value = parse_rational(u)
    params = ("t",)
    return params, Poly.const(params, value), Poly.var(params, "t")


def _gens(ctx: GeneratorContext, params):
    return AlgElem.gen(ctx, params, "P"), AlgElem.gen(ctx, params, "D")


def f0_inv(N: int, ctx: GeneratorContext = DEFAULT_CONTEXT, u: UMode = 0) -> TensorElem:
    """``sum_m (-t)^m P^m (x) binom(D, m)``."""
    params, _, t = param_context(u)
    P, _ = _gens(ctx, params)
    out = TensorElem.zero(ctx, params, 2, N)
    for m in range(N + 1):
        out = out + TensorElem.pure([P ** m, binom_D(m, ctx, params)], N, (-t) ** m)
    return out


def f1_inv(N: int, ctx: GeneratorContext = DEFAULT_CONTEXT, u: UMode = 1) -> TensorElem:
    """``sum_m t^m binom(D, m) (x) P^m``."""
    params, _, t = param_context(u)
    P, _ = _gens(ctx, params)
    out = TensorElem.zero(ctx, params, 2, N)
    for m in range(N + 1):
        out = out + TensorElem.pure([binom_D(m, ctx, params), P ** m], N, t ** m)
    return out


def fgz_inv(u: UMode, N: int, ctx: GeneratorContext = DEFAULT_CONTEXT) -> TensorElem:
    """``sum_{k+l<=N} t^(k+l) ((u-1)P)^k binom(D,l) (x) (uP)^l binom(D,k)``."""
    params, uu, t = param_context(u)
    P, _ = _gens(ctx, params)
    out = TensorElem.zero(ctx, params, 2, N)
    for n in range(N + 1):
        for k in range(n + 1):
            l = n - k
            coeff = (uu - 1) ** k * uu ** l * t ** n
            if not coeff:
                continue
            left = P ** k * binom_D(l, ctx, params)
            right = P ** l * binom_D(k, ctx, params)
            out = out + TensorElem.pure([left, right], N, coeff)
    return out


def _pd(ctx, params) -> AlgElem:
    P, D = _gens(ctx, params)
    return P * D


def fru_inv(u: UMode, N: int, ctx: GeneratorContext = DEFAULT_CONTEXT) -> TensorElem:
    """Three-factor form ``exp(Δ0(u t PD)) exp(ln(1-tP) (x) D) exp(-u t (PD(x)1 + 1(x)PD))``."""
    params, uu, t = param_context(u)
    _, D = _gens(ctx, params)
    one = AlgElem.one(ctx, params)
    pd = TensorElem.from_alg(_pd(ctx, params), N)
    first = exp_series(apply_leg(pd, 0, "coproduct0").scale(uu * t))
    log = log_onebody(-1, N, ctx, params)
    middle = exp_series(tensor_product(log, TensorElem.from_alg(D, N)))
    both = TensorElem.pure([_pd(ctx, params), one], N) + TensorElem.pure([one, _pd(ctx, params)], N)
    last = exp_series(both.scale(-uu * t))
    return tensor_mul(tensor_mul(first, middle), last)


def omega(u: UMode, N: int, ctx: GeneratorContext = DEFAULT_CONTEXT, power: int = 1) -> TensorElem:
    """The 1-cochain ``exp(-power * u t PD)`` as a one-leg series."""
    params, uu, t = param_context(u)
    pd = TensorElem.from_alg(_pd(ctx, params), N)
    return exp_series(pd.scale(-power * uu * t))


def cochain_transform(u: UMode, N: int, ctx: GeneratorContext = DEFAULT_CONTEXT) -> TensorElem:
    """``(ω^-1 (x) ω^-1) F_0 Δ0(ω)`` with ``ω = exp(-u t PD)``; returns the twist itself."""
    params, uu, t = param_context(u)
    _, D = _gens(ctx, params)
    w_inv = omega(u, N, ctx, power=-1)
    left = tensor_product(w_inv, w_inv)
    log = log_onebody(-1, N, ctx, params)
    f0 = exp_series(tensor_product(log, TensorElem.from_alg(D, N)).scale(-1))
    pd = TensorElem.from_alg(_pd(ctx, params), N)
    delta_w = exp_series(apply_leg(pd, 0, "coproduct0").scale(-uu * t))
    return tensor_mul(tensor_mul(left, f0), delta_w)


def r_matrix(f_inv: TensorElem) -> TensorElem:
    """``R = F^21 F^-1`` from the inverse twist."""
    if f_inv.arity != 2:
        raise ValueError("a twist has two legs")
    try:
        f = inverse_series(f_inv)
    except SeriesPrecondition as exc:
        raise SeriesPrecondition("twist inverse must start with 1 (x) 1") from exc
    return tensor_mul(flip(f), f_inv)


def r0_series(N: int, ctx: GeneratorContext = DEFAULT_CONTEXT, u: UMode = 0) -> TensorElem:
    """``sum_{k,l} binom(-D, l) (-tP)^k (x) (-tP)^l binom(D, k)``."""
    params, _, t = param_context(u)
    P, _ = _gens(ctx, params)
    out = TensorElem.zero(ctx, params, 2, N)
    for n in range(N + 1):
        for k in range(n + 1):
            l = n - k
            left = binom_D(l, ctx, params, sign=-1) * P ** k
            right = P ** l * binom_D(k, ctx, params)
            out = out + TensorElem.pure([left, right], N, (-t) ** n)
    return out


def r0_exponential(N: int, ctx: GeneratorContext = DEFAULT_CONTEXT, u: UMode = 0) -> TensorElem:
    """``exp(-D (x) ln(1 - tP)) exp(ln(1 - tP) (x) D)``."""
    params, _, _ = param_context(u)
    _, D = _gens(ctx, params)
    log = log_onebody(-1, N, ctx, params)
    d = TensorElem.from_alg(D, N)
    a = exp_series(tensor_product(d, log).scale(-1))
    b = exp_series(tensor_product(log, d))
    return tensor_mul(a, b)


def classical_r(f_inv: TensorElem) -> TensorElem:
    """Antisymmetrized ``t^1`` coefficient ``c1 - flip(c1)`` (``t`` stripped)."""
    if f_inv.order < 1:
        raise ValueError("need truncation order >= 1 to read off the classical r-matrix")
    c1 = f_inv.t_coefficient(1)
    return c1 - flip(c1)


def identity_twist(N: int, ctx: GeneratorContext = DEFAULT_CONTEXT, u: UMode = 0) -> TensorElem:
    params, _, _ = param_context(u)
    return TensorElem.identity(ctx, params, 2, N)


def corrupted_twist(N: int, ctx: GeneratorContext = DEFAULT_CONTEXT, u: UMode = 0) -> TensorElem:
    """Negative-control fixture ``1 (x) 1 + t D (x) D``: counital but not a cocycle."""
    params, _, t = param_context(u)
    _, D = _gens(ctx, params)
    return identity_twist(N, ctx, u) + TensorElem.pure([D, D], N, t)


def noncounital_twist(N: int, ctx: GeneratorContext = DEFAULT_CONTEXT, u: UMode = 0) -> TensorElem:
    """Negative-control fixture ``1 (x) 1 + t D (x) 1``: ``(1 (x) eps)`` leaves ``t D`` behind."""
    params, _, t = param_context(u)
    _, D = _gens(ctx, params)
    return identity_twist(N, ctx, u) + TensorElem.pure([D, AlgElem.one(ctx, params)], N, t)


def corrupted_r(N: int, ctx: GeneratorContext = DEFAULT_CONTEXT, u: UMode = 0) -> TensorElem:
    """Negative-control fixture ``1 (x) 1 + t P (x) D``; ``[P1 D2, P2 D3] != 0`` breaks QYBE at order 2."""
    params, _, t = param_context(u)
    P, D = _gens(ctx, params)
    return identity_twist(N, ctx, u) + TensorElem.pure([P, D], N, t)


def perturbation(N: int, ctx: GeneratorContext = DEFAULT_CONTEXT, u: UMode = 0, power: int = 2) -> TensorElem:
    """``u t^power P (x) P`` (or ``t^power P (x) P`` for rational u): a generic wrong term."""
    params, uu, t = param_context(u)
    P, _ = _gens(ctx, params)
    return TensorElem.pure([P, P], N, uu * t ** power if "u" in params else t ** power)


TWISTS = {
    "f0_inv": lambda u, N, ctx=DEFAULT_CONTEXT: f0_inv(N, ctx, u),
    "f1_inv": lambda u, N, ctx=DEFAULT_CONTEXT: f1_inv(N, ctx, u),
    "fgz_inv": fgz_inv,
    "fru_inv": fru_inv,
    "R0": lambda u, N, ctx=DEFAULT_CONTEXT: r0_series(N, ctx, u),
    "R_gz": lambda u, N, ctx=DEFAULT_CONTEXT: r_matrix(fgz_inv(u, N, ctx)),
}


def by_name(name: str, u: UMode, N: int, ctx: GeneratorContext = DEFAULT_CONTEXT) -> TensorElem:
    try:
        build = TWISTS[name]
    except KeyError:
        raise KeyError(f"unknown twist {name!r}; choose from {sorted(TWISTS)}") from None
    return build(u, N, ctx)


def rational_u(u: UMode):
    return None if u == SYMBOLIC or u is None else mpq(parse_rational(u))
