"""Hopf-structural identities checked on truncated series.

Every check returns a :class:`~jordtwist.report.Report` whose residual is
exactly empty on success.  Closed forms with denominators are expanded as
truncated geometric series; each denominator is ``1 +`` (terms carrying t).
"""
from __future__ import annotations

from typing import Callable, Dict, Iterable, Tuple

from .exactmath import Poly
from .pbw import DEFAULT_CONTEXT, PROBE_CONTEXT, AlgElem, GeneratorContext, Mono
from .report import Report, timed
from .tensorcalc import (
    TensorElem,
    apply_leg,
    commutator,
    diff_u,
    embed,
    geometric_series,
    inverse_series,
    merge_legs,
    tensor_mul,
    tensor_product,
)
from .twists import SYMBOLIC, UMode, f0_inv, fgz_inv, fru_inv, param_context, perturbation


def _one_leg(ctx, params, N, **momenta) -> TensorElem:
    return TensorElem.from_alg(AlgElem.monomial(ctx, params, ctx.mono(**momenta)), N)


def _leg_params(u: UMode, ctx: GeneratorContext, N: int):
    params, uu, t = param_context(u)
    one = TensorElem.identity(ctx, params, 1, N)
    P = _one_leg(ctx, params, N, P=1)
    return params, uu, t, one, P


# -- cocycle, counitality, equality, ODE -------------------------------------


def cocycle_residual(f_inv: TensorElem) -> TensorElem:
    if f_inv.arity != 2:
        raise ValueError("a twist has two legs")
    lhs = tensor_mul(apply_leg(f_inv, 0, "coproduct0"), embed(f_inv, (0, 1), 3))
    rhs = tensor_mul(apply_leg(f_inv, 1, "coproduct0"), embed(f_inv, (1, 2), 3))
    return lhs - rhs


def check_cocycle(f_inv: TensorElem, name: str = "twist", **params) -> Report:
    return timed(
        "cocycle",
        {"twist": name, "N": f_inv.order, **params},
        lambda: {"cocycle": cocycle_residual(f_inv)},
    )


def check_counital(f_inv: TensorElem, name: str = "twist", **params) -> Report:
    def run():
        one = TensorElem.identity(f_inv.ctx, f_inv.params, 1, f_inv.order)
        return {
            "counit_left": apply_leg(f_inv, 0, "counit") - one,
            "counit_right": apply_leg(f_inv, 1, "counit") - one,
        }

    return timed("counital", {"twist": name, "N": f_inv.order, **params}, run)


def check_equality_gz_r(u: UMode, N: int, ctx: GeneratorContext = DEFAULT_CONTEXT, corrupt: bool = False) -> Report:
    def run():
        fru = fru_inv(u, N, ctx)
        if corrupt:
            fru = fru + perturbation(N, ctx, u)
        return {"fgz_minus_fru": fgz_inv(u, N, ctx) - fru}

    return timed("equality", {"u": str(u), "N": N}, run)


def ode_residual(f_inv: TensorElem) -> TensorElem:
    """``d/du F - t((P(x)D + D(x)P) F + [PD(x)1 + 1(x)PD, F])``."""
    ctx, params, N = f_inv.ctx, f_inv.params, f_inv.order
    if "u" not in params:
        raise ValueError("the u-derivative needs symbolic u")
    P = AlgElem.gen(ctx, params, "P")
    D = AlgElem.gen(ctx, params, "D")
    one = AlgElem.one(ctx, params)
    t = Poly.var(params, "t")
    sym = TensorElem.pure([P, D], N) + TensorElem.pure([D, P], N)
    pd = TensorElem.pure([P * D, one], N) + TensorElem.pure([one, P * D], N)
    rhs = (tensor_mul(sym, f_inv) + commutator(pd, f_inv)).scale(t)
    return diff_u(f_inv) - rhs


def check_ode(family: str, N: int, ctx: GeneratorContext = DEFAULT_CONTEXT, corrupt: bool = False) -> Report:
    builders = {"GZ": fgz_inv, "R": fru_inv}
    if family not in builders:
        raise ValueError(f"family must be one of {sorted(builders)}")

    def run():
        f = builders[family](SYMBOLIC, N, ctx)
        if corrupt:
            f = f + perturbation(N, ctx, SYMBOLIC)
        return {
            "ode": ode_residual(f),
            "initial_condition": f.subs({"u": 0}) - f0_inv(N, ctx),
        }

    return timed("ode", {"family": family, "N": N}, run)


# -- twisted coproducts and antipodes ------------------------------------------


def twisted_coproduct(f_inv: TensorElem, a: AlgElem, N: int | None = None) -> TensorElem:
    """``F Δ0(a) F^-1`` with ``F`` the series inverse of ``f_inv``."""
    N = f_inv.order if N is None else N
    if N != f_inv.order:
        f_inv = f_inv.with_order(N)
    delta0 = apply_leg(TensorElem.from_alg(a, N), 0, "coproduct0")
    return tensor_mul(tensor_mul(inverse_series(f_inv), delta0), f_inv)


def closed_coproduct_momentum(u: UMode, N: int, ctx: GeneratorContext = PROBE_CONTEXT, name: str = "p") -> TensorElem:
    """``(q(x)(1 + utP) + (1 + (u-1)tP)(x)q) / (1(x)1 - u(u-1)t^2 P(x)P)``."""
    params, uu, t, one, P = _leg_params(u, ctx, N)
    q = _one_leg(ctx, params, N, **{name: 1})
    numer = tensor_product(q, one + P.scale(uu * t)) + tensor_product(one + P.scale((uu - 1) * t), q)
    denom_tail = tensor_product(P, P).scale(uu * (uu - 1) * t * t)
    return tensor_mul(numer, geometric_series(denom_tail))


def closed_coproduct_p(u: UMode, N: int, ctx: GeneratorContext = PROBE_CONTEXT) -> TensorElem:
    return closed_coproduct_momentum(u, N, ctx, "p")


def closed_coproduct_D(u: UMode, N: int, ctx: GeneratorContext = DEFAULT_CONTEXT) -> TensorElem:
    """``(1(x)1 + u(1-u)t^2 P(x)P)(D (x) 1/(1+utP) + 1/(1-(1-u)tP) (x) D)``."""
    params, uu, t, one, P = _leg_params(u, ctx, N)
    D = TensorElem.from_alg(AlgElem.gen(ctx, params, "D"), N)
    right_inv = geometric_series(P.scale(-uu * t))
    left_inv = geometric_series(P.scale((1 - uu) * t))
    prefactor = tensor_product(one, one) + tensor_product(P, P).scale(uu * (1 - uu) * t * t)
    return tensor_mul(prefactor, tensor_product(D, right_inv) + tensor_product(left_inv, D))


def closed_antipode(gen: str, u: UMode, N: int, ctx: GeneratorContext = PROBE_CONTEXT) -> TensorElem:
    """Twisted antipode of a generator as a one-leg series.

    Momenta: ``S(q) = -q / (1 - (1-2u)tP)``.
    Dilatation: ``S(D) = -(1 - (1-u)tP) D (1 - (1-2u)tP) / (1 - (1-u)tP)``.
    """
    params, uu, t, one, P = _leg_params(u, ctx, N)
    if gen == "D":
        D = TensorElem.from_alg(AlgElem.gen(ctx, params, "D"), N)
        left = one - P.scale((1 - uu) * t)
        right = tensor_mul(one - P.scale((1 - 2 * uu) * t), geometric_series(P.scale((1 - uu) * t)))
        return tensor_mul(tensor_mul(left, D), right).scale(-1)
    if gen not in ctx.momenta:
        raise KeyError(f"{gen!r} is not a generator of {ctx}")
    q = _one_leg(ctx, params, N, **{gen: 1})
    return tensor_mul(q, geometric_series(P.scale((1 - 2 * uu) * t))).scale(-1)


def _power(x: TensorElem, n: int, cache: Dict) -> TensorElem:
    key = (id(x), n)
    if key not in cache:
        if n == 0:
            cache[key] = TensorElem.identity(x.ctx, x.params, x.arity, x.order)
        else:
            cache[key] = tensor_mul(_power(x, n - 1, cache), x)
    return cache[key]


def antipode_map(images: Dict[str, TensorElem]) -> Callable[[Mono], Iterable[Tuple[tuple, Poly]]]:
    """Anti-homomorphic extension of generator images to PBW monomials.

    ``S(g^a D^d) = S(D)^d S(g)^a``; the images of the momenta commute.
    """
    some = next(iter(images.values()))
    ctx = some.ctx
    cache: Dict = {}

    def fn(m: Mono):
        result = _power(images["D"], m[-1], cache) if m[-1] else None
        for name, k in zip(ctx.momenta, m[:-1]):
            if k:
                piece = _power(images[name], k, cache)
                result = piece if result is None else tensor_mul(result, piece)
        if result is None:
            result = TensorElem.identity(ctx, some.params, 1, some.order)
        return list(result.terms.items())

    return fn


def homomorphism_map(images: Dict[str, TensorElem]) -> Callable[[Mono], Iterable[Tuple[tuple, Poly]]]:
    """Multiplicative extension (momenta first, then D powers) of generator images."""
    some = next(iter(images.values()))
    ctx = some.ctx
    cache: Dict = {}

    def fn(m: Mono):
        result = None
        for name, k in zip(ctx.momenta, m[:-1]):
            if k:
                piece = _power(images[name], k, cache)
                result = piece if result is None else tensor_mul(result, piece)
        if m[-1]:
            piece = _power(images["D"], m[-1], cache)
            result = piece if result is None else tensor_mul(result, piece)
        if result is None:
            result = TensorElem.identity(ctx, some.params, some.arity, some.order)
        return list(result.terms.items())

    return fn


def closed_antipode_images(u: UMode, N: int, ctx: GeneratorContext = PROBE_CONTEXT) -> Dict[str, TensorElem]:
    images = {name: closed_antipode(name, u, N, ctx) for name in ctx.momenta}
    images["D"] = closed_antipode("D", u, N, ctx)
    return images


def closed_coproduct_images(u: UMode, N: int, ctx: GeneratorContext = PROBE_CONTEXT) -> Dict[str, TensorElem]:
    images = {name: closed_coproduct_momentum(u, N, ctx, name) for name in ctx.momenta}
    images["D"] = closed_coproduct_D(u, N, ctx)
    return images


def undeformed_images(u: UMode, N: int, ctx: GeneratorContext = PROBE_CONTEXT):
    params, _, _ = param_context(u)
    gens = {name: AlgElem.gen(ctx, params, name) for name in ctx.momenta + ("D",)}
    antipode = {k: TensorElem.from_alg(-g, N) for k, g in gens.items()}
    coproduct = {k: apply_leg(TensorElem.from_alg(g, N), 0, "coproduct0") for k, g in gens.items()}
    return coproduct, antipode


def antipode_axiom_residual(coproduct: TensorElem, antipode: Dict[str, TensorElem], counit_value: int = 0) -> TensorElem:
    """``m((S (x) id) Δ(x)) - ε(x) 1``."""
    applied = apply_leg(coproduct, 0, antipode_map(antipode), arity_change=0)
    merged = merge_legs(applied)
    one = TensorElem.identity(coproduct.ctx, coproduct.params, 1, coproduct.order)
    return merged - one.scale(counit_value)


def check_antipode_axiom(
    gen: str,
    N: int,
    u: UMode = SYMBOLIC,
    twist: str = "jordanian",
    ctx: GeneratorContext = PROBE_CONTEXT,
    antipode: Dict[str, TensorElem] | None = None,
) -> Report:
    def run():
        if twist == "identity":
            coproducts, images = undeformed_images(u, N, ctx)
        elif twist == "jordanian":
            coproducts = {gen: closed_coproduct_images(u, N, ctx)[gen]}
            images = closed_antipode_images(u, N, ctx)
        else:
            raise ValueError(f"unknown twist {twist!r}")
        if antipode is not None:
            images = antipode
        return {"antipode": antipode_axiom_residual(coproducts[gen], images)}

    return timed("antipode", {"gen": gen, "N": N, "u": str(u), "twist": twist}, run)


def corrupted_antipode(u: UMode, N: int, ctx: GeneratorContext = PROBE_CONTEXT) -> Dict[str, TensorElem]:
    """Undeformed antipode images paired with deformed coproducts: negative control."""
    params, _, _ = param_context(u)
    return {k: TensorElem.from_alg(-AlgElem.gen(ctx, params, k), N) for k in ctx.momenta + ("D",)}


def check_coproducts(u: UMode, N: int, corrupt: bool = False) -> Report:
    """Conjugation by the twist against the closed coproducts of p and D."""

    def run():
        f_probe = fgz_inv(u, N, PROBE_CONTEXT)
        params = f_probe.params
        p = AlgElem.gen(PROBE_CONTEXT, params, "p")
        D = AlgElem.gen(DEFAULT_CONTEXT, params, "D")
        f = fgz_inv(u, N)
        closed_p = closed_coproduct_p(u, N)
        if corrupt:
            closed_p = corrupt_coproduct(closed_p)
        return {
            "p_conjugation_vs_closed": twisted_coproduct(f_probe, p) - closed_p,
            "D_conjugation_vs_closed": twisted_coproduct(f, D) - closed_coproduct_D(u, N),
            "D_gz_vs_r": twisted_coproduct(f, D) - twisted_coproduct(fru_inv(u, N), D),
        }

    return timed("coproduct", {"u": str(u), "N": N}, run)


# -- coassociativity and QYBE -----------------------------------------------------


def coassoc_residual(delta: TensorElem, leg_coproduct: Callable) -> TensorElem:
    left = apply_leg(delta, 0, leg_coproduct, arity_change=1)
    right = apply_leg(delta, 1, leg_coproduct, arity_change=1)
    return left - right


def leg_coproduct_map(u: UMode, N: int, mode: str = "closed", ctx: GeneratorContext = PROBE_CONTEXT):
    if mode == "closed":
        return homomorphism_map(closed_coproduct_images(u, N, ctx))
    if mode == "twist":
        f = fgz_inv(u, N, ctx)

        def fn(m: Mono):
            a = AlgElem.monomial(ctx, f.params, m)
            return list(twisted_coproduct(f, a).terms.items())

        return fn
    raise ValueError(f"unknown leg coproduct mode {mode!r}")


def corrupt_coproduct(delta: TensorElem) -> TensorElem:
    """Add ``t p (x) P`` to a coproduct: negative control."""
    ctx, params, N = delta.ctx, delta.params, delta.order
    t = Poly.var(params, "t")
    extra = TensorElem.pure([AlgElem.gen(ctx, params, "p"), AlgElem.gen(ctx, params, "P")], N, t)
    return delta + extra


def check_coassoc(N: int, u: UMode = SYMBOLIC, mode: str = "closed", corrupt: bool = False) -> Report:
    def run():
        delta = closed_coproduct_p(u, N)
        if corrupt:
            delta = corrupt_coproduct(delta)
        return {"coassociativity": coassoc_residual(delta, leg_coproduct_map(u, N, mode))}

    return timed("coassoc", {"N": N, "u": str(u), "mode": mode, "corrupt": corrupt}, run)


def qybe_residual(R: TensorElem) -> TensorElem:
    if R.arity != 2:
        raise ValueError("an R-matrix has two legs")
    r12 = embed(R, (0, 1), 3)
    r13 = embed(R, (0, 2), 3)
    r23 = embed(R, (1, 2), 3)
    lhs = tensor_mul(tensor_mul(r12, r13), r23)
    rhs = tensor_mul(tensor_mul(r23, r13), r12)
    return lhs - rhs


def check_qybe(R: TensorElem, name: str = "R", **params) -> Report:
    return timed("qybe", {"R": name, "N": R.order, **params}, lambda: {"qybe": qybe_residual(R)})
