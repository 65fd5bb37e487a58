"""Twist-induced star products: exact on polynomials, closed form on plane waves."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from gmpy2 import mpq

from .exactmath import I, GaussianRational, Poly, Rational, Scalar, canon, parse_rational
from .pbw import DEFAULT_CONTEXT, Mono
from .report import Report, timed
from .tensorcalc import TensorElem
from .twists import fgz_inv, fru_inv, perturbation
from .weylreal import SpaceConfig, act, act_mono, xhat

FAMILIES = ("GZ", "R")


class SingularMomentum(ArithmeticError):
    """Plane-wave denominator ``1 - u(u-1) t^2 (v.k)(v.q)`` vanishes."""


@dataclass(frozen=True)
class PlaneWave:
    """``prefactor * exp(i k.x)``."""

    k: Tuple[Scalar, ...]
    prefactor: Scalar = mpq(1)

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(canon(parse_rational(c) if isinstance(c, str) else c) for c in self.k))
        p = self.prefactor
        object.__setattr__(self, "prefactor", canon(parse_rational(p) if isinstance(p, str) else p))

    def to_json(self):
        return {"momentum": [str(c) for c in self.k], "prefactor": str(self.prefactor)}

    def __str__(self):
        return f"({self.prefactor}) exp(i [{', '.join(str(c) for c in self.k)}].x)"


def _kappa_t(kappa) -> Rational:
    kappa = parse_rational(kappa)
    if kappa == 0:
        raise ZeroDivisionError("kappa must be non-zero")
    return mpq(1) / kappa


@lru_cache(maxsize=64)
def family_twist(family: str, u, N: int) -> TensorElem:
    """Inverse twist of the named family at rational ``u`` (cached per order)."""
    u = parse_rational(u)
    if family == "GZ":
        return fgz_inv(u, N, DEFAULT_CONTEXT)
    if family == "R":
        return fru_inv(u, N, DEFAULT_CONTEXT)
    raise KeyError(f"unknown family {family!r}; choose from {FAMILIES}")


def _x_degree(f: Poly, config: SpaceConfig) -> int:
    idx = [f.vars.index(x) for x in config.xnames]
    return max((sum(e[i] for i in idx) for e in f.terms), default=0)


def star_with_twist(f_inv: TensorElem, config: SpaceConfig, f: Poly, g: Poly, t_value: Optional[Scalar] = None) -> Poly:
    """``m(F^-1 (|> (x) |>)(f (x) g))``.

    With ``t_value`` the twist coefficients are evaluated there; otherwise
    ``t`` must be one of the variables of ``f`` and ``g`` and stays symbolic.
    """
    if f.vars != g.vars:
        raise ValueError(f"operands over different variables: {f.vars} vs {g.vars}")
    momenta = f_inv.ctx.momenta
    left: Dict[Mono, Poly] = {}
    right: Dict[Mono, Poly] = {}
    out = Poly.zero(f.vars)
    for (a, b), c in f_inv.terms.items():
        if a not in left:
            left[a] = act_mono(a, momenta, f, config)
        if not left[a]:
            continue
        if b not in right:
            right[b] = act_mono(b, momenta, g, config)
        if not right[b]:
            continue
        if t_value is not None:
            coeff = Poly.const(f.vars, c.eval({"t": t_value}))
        else:
            coeff = c.extend(f.vars)
        out = out + left[a] * right[b] * coeff
    return out


def star_poly(family: str, u, kappa, config: SpaceConfig, f: Poly, g: Poly) -> Poly:
    """Exact star product of two polynomials at rational ``u`` and ``kappa``.

    Each ``P`` in a twist term lowers the degree by one and ``t``-degree equals
    the number of momenta, so order ``deg f + deg g`` is already exact.
    """
    t = _kappa_t(kappa)
    N = _x_degree(f, config) + _x_degree(g, config)
    return star_with_twist(family_twist(family, parse_rational(u), N), config, f, g, t)


def planewave_denominator(u, t, vk, vq) -> Scalar:
    return 1 - u * (u - 1) * t * t * vk * vq


def corrupted_star_planewave(u, kappa, config: SpaceConfig, a: PlaneWave, b: PlaneWave) -> PlaneWave:
    """Negative control: the closed form with an extra ``t k_mu (v.q)^2`` in the momentum."""
    out = star_planewave(u, kappa, config, a, b)
    t = _kappa_t(kappa)
    vq = config.dot(b.k)
    return PlaneWave(tuple(d + t * k * vq * vq for d, k in zip(out.k, a.k)), out.prefactor)


def star_planewave(u, kappa, config: SpaceConfig, a: PlaneWave, b: PlaneWave) -> PlaneWave:
    """Closed form: ``D_mu = [k_mu (1 + u t vq) + q_mu (1 + (u-1) t vk)] / den``, prefactor divided by ``den``."""
    u = parse_rational(u)
    t = _kappa_t(kappa)
    if len(a.k) != config.n or len(b.k) != config.n:
        raise ValueError(f"momenta must have {config.n} components")
    vk, vq = config.dot(a.k), config.dot(b.k)
    den = planewave_denominator(u, t, vk, vq)
    if den == 0:
        raise SingularMomentum(f"1 - u(u-1) t^2 (v.k)(v.q) = 0 at v.k={vk}, v.q={vq}")
    ka = 1 + u * t * vq
    kb = 1 + (u - 1) * t * vk
    out = tuple((k * ka + q * kb) / den for k, q in zip(a.k, b.k))
    return PlaneWave(out, a.prefactor * b.prefactor / den)


def star_planewave_phase_form(u, kappa, config: SpaceConfig, a: PlaneWave, b: PlaneWave, sign: int = 1) -> PlaneWave:
    """The same product written with ``1 + u(1-u) t^2 (v.k)(v.q)`` and prefactor ``exp(i G)``, ``G = i ln A``.

    ``sign=-1`` flips the correction in ``A`` (negative control).
    """
    u = parse_rational(u)
    t = _kappa_t(kappa)
    vk, vq = config.dot(a.k), config.dot(b.k)
    A = 1 + sign * u * (1 - u) * t * t * vk * vq
    if A == 0:
        raise SingularMomentum(f"1 + u(1-u) t^2 (v.k)(v.q) = 0 at v.k={vk}, v.q={vq}")
    out = tuple((k * (1 + u * t * vq) + q * (1 - (1 - u) * t * vk)) / A for k, q in zip(a.k, b.k))
    return PlaneWave(out, a.prefactor * b.prefactor * exp_i_times_log(I, A))


def exp_i_times_log(c: Scalar, A: Scalar) -> Scalar:
    """``exp(i * c * ln A)`` for ``i*c`` an integer, i.e. ``A ** (i*c)``."""
    power = canon(I * c)
    if isinstance(power, GaussianRational) or power != int(power):
        raise ValueError(f"exponent {power} is not an integer")
    return mpq(A) ** int(power)


def random_rational(rng: random.Random, span: int = 5, max_den: int = 4) -> Rational:
    return mpq(rng.randint(-span, span), rng.randint(1, max_den))


def random_momentum(rng: random.Random, n: int) -> Tuple[Rational, ...]:
    return tuple(random_rational(rng) for _ in range(n))


def _sample(seed: int, index: int, attempt: int, config: SpaceConfig, count: int):
    rng = random.Random(f"{seed}:{index}:{attempt}")
    return [PlaneWave(random_momentum(rng, config.n)) for _ in range(count)]


def check_assoc_planewave(u, kappa, config: SpaceConfig, samples: int = 100, seed: int = 0, max_attempts: int = 50, corrupt: bool = False) -> Report:
    singular = compared = 0
    star = corrupted_star_planewave if corrupt else star_planewave

    def run():
        nonlocal singular, compared
        failures = []
        for i in range(samples):
            for attempt in range(max_attempts):
                a, b, c = _sample(seed, i, attempt, config, 3)
                try:
                    lhs = star(u, kappa, config, star(u, kappa, config, a, b), c)
                    rhs = star(u, kappa, config, a, star(u, kappa, config, b, c))
                except SingularMomentum:
                    singular += 1
                    continue
                compared += 1
                if lhs != rhs:
                    failures.append({"k": a.to_json(), "q": b.to_json(), "r": c.to_json(), "lhs": lhs.to_json(), "rhs": rhs.to_json()})
                break
            else:
                failures.append({"sample": i, "error": "no regular triple found"})
        return {"assoc": failures}

    rep = timed("star-assoc", {"u": str(u), "kappa": str(kappa), "samples": samples, "seed": seed}, run)
    rep.info["singular_resamples"] = singular
    rep.info["triples_compared"] = compared
    return rep


def check_planewave_prefactor(u, kappa, config: SpaceConfig, samples: int = 20, seed: int = 0) -> Report:
    """Prefactor equals ``sum_n (u(u-1) t^2 vk vq)^n`` summed, i.e. the x = 0 value of the product."""

    def run():
        failures = []
        t = _kappa_t(kappa)
        uu = parse_rational(u)
        for i in range(samples):
            a, b = _sample(seed, i, 0, config, 2)
            x = uu * (uu - 1) * t * t * config.dot(a.k) * config.dot(b.k)
            if x == 1:
                continue
            out = star_planewave(u, kappa, config, a, b)
            if out.prefactor * (1 - x) != 1:
                failures.append({"k": a.to_json(), "q": b.to_json(), "prefactor": str(out.prefactor)})
        return {"prefactor": failures}

    return timed("star-prefactor", {"u": str(u), "kappa": str(kappa), "samples": samples, "seed": seed}, run)


def check_star_forms_agree(u, kappa, config: SpaceConfig, samples: int = 50, seed: int = 0, corrupt: bool = False) -> Report:
    flip = -1 if corrupt else 1

    def run():
        params = ("u",)
        uu = Poly.var(params, "u")
        sign = {"sign": -uu * (uu - 1) - flip * uu * (1 - uu)}
        phase = exp_i_times_log(I, mpq(7, 3)) * mpq(7, 3)
        sign["exp_iG"] = [] if phase == 1 else [str(phase)]
        failures = []
        for i in range(samples):
            a, b = _sample(seed, i, 0, config, 2)
            try:
                lhs = star_planewave(u, kappa, config, a, b)
            except SingularMomentum:
                continue
            try:
                rhs = star_planewave_phase_form(u, kappa, config, a, b, flip)
            except SingularMomentum:
                failures.append({"k": a.to_json(), "q": b.to_json(), "error": "phase form singular"})
                continue
            if lhs != rhs:
                failures.append({"k": a.to_json(), "q": b.to_json(), "lhs": lhs.to_json(), "rhs": rhs.to_json()})
        sign["samples"] = failures
        return sign

    return timed("star-agree", {"u": str(u), "kappa": str(kappa), "samples": samples, "seed": seed}, run)


def monomials(config: SpaceConfig, max_degree: int):
    """All exponent vectors in ``n`` variables with total degree ``<= max_degree``."""
    def rec(n, budget):
        if n == 0:
            yield ()
            return
        for e in range(budget + 1):
            for rest in rec(n - 1, budget - e):
                yield (e,) + rest

    return sorted(rec(config.n, max_degree), key=lambda e: (sum(e), e))


def truncated_exponential(config: SpaceConfig, k: Sequence[Scalar], M: int, extra: Sequence[str] = ("t",)) -> Poly:
    """``sum_{j<=M} (i k.x)^j / j!``."""
    fvars = config.xnames + tuple(extra)
    kx = Poly.zero(fvars)
    for name, c in zip(config.xnames, k):
        kx = kx + Poly.var(fvars, name) * c
    kx = kx * I
    out, term = Poly.one(fvars), Poly.one(fvars)
    for j in range(1, M + 1):
        term = term * kx * mpq(1, j)
        out = out + term
    return out


def total_truncate(f: Poly, M: int) -> Poly:
    return Poly._raw(f.vars, {e: c for e, c in f.terms.items() if sum(e) <= M})


def planewave_jet(u, config: SpaceConfig, k, q, M: int) -> Poly:
    """Taylor jet of ``pref(t) exp(i D(t).x)`` to total degree ``M`` in ``(x, t)``."""
    u = parse_rational(u)
    fvars = config.xnames + ("t",)
    t = Poly.var(fvars, "t")
    vk, vq = config.dot(k), config.dot(q)
    c = u * (u - 1) * vk * vq
    geo = Poly.zero(fvars)
    for j in range(M // 2 + 1):
        geo = geo + (t * t * c) ** j
    geo = total_truncate(geo, M)
    Y = Poly.zero(fvars)
    for mu, name in enumerate(config.xnames):
        num = (t * (u * vq) + 1) * k[mu] + (t * ((u - 1) * vk) + 1) * q[mu]
        Y = Y + total_truncate(num * geo, M) * Poly.var(fvars, name)
    Y = total_truncate(Y * I, M)
    exp_y, term = Poly.one(fvars), Poly.one(fvars)
    for j in range(1, M + 1):
        term = total_truncate(term * Y, M) * mpq(1, j)
        exp_y = exp_y + term
    return total_truncate(geo * exp_y, M)


def check_star_jets(u, kappa, config: SpaceConfig, max_degree: int = 3, jet_degree: int = 2, samples: int = 3, seed: int = 0, corrupt: bool = False) -> Report:
    """GZ vs R on monomial pairs, plus plane-wave jets vs star products of truncated exponentials.

    The jet comparison keeps ``t`` symbolic and grades by ``x``-degree plus
    ``t``-degree: the weight-``M`` part of a product of truncated exponentials
    depends only on their weight-``<= M`` parts, so truncating the inputs at
    ``M`` is exact.
    """
    def run():
        uu = parse_rational(u)
        residual = {}
        fvars = config.xnames

        def twist(family, N):
            f = family_twist(family, uu, N)
            return f + perturbation(N, f.ctx, uu, 1) if corrupt and family == "R" else f

        monos = monomials(config, max_degree)
        pairs = []
        for ea in monos:
            for eb in monos:
                f = Poly(fvars, {ea: 1})
                g = Poly(fvars, {eb: 1})
                N = sum(ea) + sum(eb)
                t = _kappa_t(kappa)
                diff = star_with_twist(twist("GZ", N), config, f, g, t) - star_with_twist(twist("R", N), config, f, g, t)
                if diff:
                    pairs.append({"f": str(f), "g": str(g), "diff": str(diff)})
        residual["gz_vs_r"] = pairs
        jets = []
        M = jet_degree
        for family in FAMILIES:
            f_inv = twist(family, M)
            for i in range(samples):
                rng = random.Random(f"{seed}:jet:{i}")
                k, q = random_momentum(rng, config.n), random_momentum(rng, config.n)
                lhs = star_with_twist(f_inv, config, truncated_exponential(config, k, M), truncated_exponential(config, q, M))
                diff = total_truncate(lhs, M) - planewave_jet(uu, config, k, q, M)
                if diff:
                    jets.append({"family": family, "k": [str(c) for c in k], "q": [str(c) for c in q], "diff": str(diff)})
        residual["jets"] = jets
        return residual

    return timed("jets", {"u": str(u), "kappa": str(kappa), "max_degree": max_degree, "jet_degree": jet_degree}, run)


def check_xhat_star(u, kappa, config: SpaceConfig, g: Poly) -> Report:
    """``x_mu * g`` equals ``xhat_mu |> g``."""
    def run():
        t = _kappa_t(kappa)
        residual = {}
        for family in FAMILIES:
            for mu in range(config.n):
                x_mu = Poly.var(g.vars, config.xnames[mu])
                lhs = star_poly(family, u, kappa, config, x_mu, g)
                rhs = act(xhat(mu, config, u).subs({"t": t}), g, config)
                residual[f"{family}_x{mu}"] = lhs - rhs
        return residual

    return timed("xhat-star", {"u": str(u), "kappa": str(kappa)}, run)
