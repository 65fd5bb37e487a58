"""Command-line front end: ``expand``, ``verify``, ``star``, ``xhat``, ``lemma``.

Exit codes: 0 when every check passes, 1 when any fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .binomid import check_lemma, corrupted_lemma
from .exactmath import parse_rational
from .render import parse_poly, render_series, series_json
from .report import Report
from .starprod import FAMILIES, PlaneWave, SingularMomentum, check_assoc_planewave, star_planewave, star_poly
from .suites import SUITES, RunConfig, run_suite
from .twists import SYMBOLIC, TWISTS, by_name, fgz_inv, fru_inv
from .weylreal import xhat, xhat_from_twist

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational_list(text: str):
    try:
        return tuple(parse_rational(c.strip()) for c in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational list {text!r}: {exc}") from None


def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    return data


def _run_config(args, keys: Sequence[str]) -> RunConfig:
    flags = {k: getattr(args, k, None) for k in keys}
    try:
        return RunConfig.merged(_load_config(getattr(args, "config", None)), flags)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _emit_reports(reports: List[Report], timing: bool) -> int:
    for r in reports:
        payload = r.to_json()
        if not timing:
            payload["ms"] = 0
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False))
        print(r.line(), file=sys.stderr)
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def cmd_expand(args) -> int:
    cfg = _run_config(args, ("u", "N"))
    try:
        series = by_name(args.twist, cfg.u, cfg.N)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if args.format == "json":
        print(json.dumps({"twist": args.twist, "u": cfg.u, **series_json(series)}, sort_keys=True, ensure_ascii=False))
    else:
        print(render_series(series, args.format))
    return EXIT_PASS


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES) + ['all']}")
    cfg = _run_config(args, ("N", "u", "v", "kappa", "seed", "samples", "K", "max_degree", "corrupt"))
    return _emit_reports(run_suite(args.suite, cfg), args.timing)


def cmd_star(args) -> int:
    cfg = _run_config(args, ("u", "v", "kappa", "seed", "samples"))
    space = cfg.space
    u = "1/2" if cfg.u == SYMBOLIC else cfg.u
    if args.f is not None or args.g is not None:
        f = parse_poly(args.f or "1", space.xnames)
        g = parse_poly(args.g or "1", space.xnames)
        out = star_poly(args.family, u, cfg.kappa, space, f, g)
        print(json.dumps({"family": args.family, "u": u, "kappa": cfg.kappa, "product": str(out)}, sort_keys=True, ensure_ascii=False))
        return EXIT_PASS
    if args.k is not None or args.q is not None:
        zero = ",".join("0" for _ in range(space.n))
        a = PlaneWave(_rational_list(args.k or zero))
        b = PlaneWave(_rational_list(args.q or zero))
        if len(a.k) != space.n or len(b.k) != space.n:
            raise UsageError(f"momenta need {space.n} components to match --v")
        try:
            out = star_planewave(u, cfg.kappa, space, a, b)
        except SingularMomentum as exc:
            print(json.dumps({"error": "singular", "detail": str(exc)}, sort_keys=True), file=sys.stderr)
            return EXIT_FAIL
        print(json.dumps({"u": u, "kappa": cfg.kappa, **out.to_json()}, sort_keys=True, ensure_ascii=False))
        return EXIT_PASS
    us = cfg.star_us
    return _emit_reports([check_assoc_planewave(x, cfg.kappa, space, cfg.samples, cfg.seed) for x in us], args.timing)


def cmd_xhat(args) -> int:
    cfg = _run_config(args, ("u", "v", "N"))
    space = cfg.space
    if not 0 <= args.mu < space.n:
        raise UsageError(f"--mu must lie in 0..{space.n - 1}")
    if args.from_twist:
        build = fgz_inv if args.from_twist == "GZ" else fru_inv
        elem = xhat_from_twist(build(cfg.u, max(cfg.N, 2)), args.mu, space)
    else:
        elem = xhat(args.mu, space, cfg.u)
    if args.format == "json":
        print(json.dumps({"mu": args.mu, "u": cfg.u, "terms": elem.to_json()}, sort_keys=True, ensure_ascii=False))
    else:
        print(elem)
    return EXIT_PASS


def cmd_lemma(args) -> int:
    if args.max < 0:
        raise UsageError("--max must be non-negative")
    rep = corrupted_lemma(args.max) if args.corrupt else check_lemma(args.max)
    failures = rep.residual["failures"]
    print(json.dumps({"tuples_checked": rep.info["tuples_checked"], "failures": failures}, sort_keys=True))
    print(rep.line(), file=sys.stderr)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jordtwist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *names):
        if "u" in names:
            p.add_argument("--u", help='"symbolic" or a rational "a/b"')
        if "N" in names:
            p.add_argument("--N", type=int, help="truncation order in t")
        if "v" in names:
            p.add_argument("--v", help='comma-separated rationals, e.g. "1,0"')
        if "kappa" in names:
            p.add_argument("--kappa", help='non-zero rational, e.g. "1"')
        if "seed" in names:
            p.add_argument("--seed", type=int)
        if "samples" in names:
            p.add_argument("--samples", type=int)
        p.add_argument("--config", help="JSON file with defaults; flags win")

    p = sub.add_parser("expand", help="print a truncated twist or R-matrix series")
    p.add_argument("twist", choices=sorted(TWISTS))
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common(p, "u", "N")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="run a verification suite, one JSON report per check")
    p.add_argument("suite", help=f"one of {', '.join(sorted(SUITES))}, all")
    p.add_argument("--K", type=int, help="lemma sweep bound")
    p.add_argument("--max-degree", dest="max_degree", type=int, help="monomial degree for the jets suite")
    p.add_argument("--corrupt", action="store_true", default=None, help="run the built-in corrupted fixture")
    p.add_argument("--no-timing", dest="timing", action="store_false", help="report ms as 0 for byte-stable output")
    common(p, "u", "N", "v", "kappa", "seed", "samples")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("star", help="star product of plane waves or polynomials")
    p.add_argument("--k", help="first momentum, comma-separated rationals")
    p.add_argument("--q", help="second momentum")
    p.add_argument("--f", help='first polynomial, e.g. "x0^2 + 1/2*x1"')
    p.add_argument("--g", help="second polynomial")
    p.add_argument("--family", choices=FAMILIES, default="GZ")
    p.add_argument("--no-timing", dest="timing", action="store_false")
    common(p, "u", "v", "kappa", "seed", "samples")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("xhat", help="closed-form or twist-derived realization of a coordinate")
    p.add_argument("--mu", type=int, default=0)
    p.add_argument("--from-twist", dest="from_twist", choices=FAMILIES)
    p.add_argument("--format", choices=("text", "json"), default="text")
    common(p, "u", "v", "N")
    p.set_defaults(func=cmd_xhat)

    p = sub.add_parser("lemma", help="sweep the binomial lemma")
    p.add_argument("--max", type=int, default=4)
    p.add_argument("--corrupt", action="store_true")
    p.set_defaults(func=cmd_lemma)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, ZeroDivisionError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
