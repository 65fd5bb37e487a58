"""Named verification suites, each with a built-in corrupted fixture."""
from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Callable, Dict, List, Tuple

from .binomid import (
    check_lemma,
    check_reduced_c0,
    check_simple_identity,
    check_termwise_y_factor,
    check_vandermonde_steps,
    corrupted_lemma,
)
from .exactmath import parse_rational
from .hopfcheck import (
    check_antipode_axiom,
    check_coassoc,
    check_cocycle,
    check_coproducts,
    check_counital,
    check_equality_gz_r,
    check_ode,
    check_qybe,
    corrupted_antipode,
)
from .report import Report
from .starprod import check_assoc_planewave, check_planewave_prefactor, check_star_forms_agree, check_star_jets
from .twists import SYMBOLIC, corrupted_r, corrupted_twist, fgz_inv, fru_inv, noncounital_twist, r_matrix
from .weylreal import SpaceConfig, check_kappa_minkowski, check_p_xhat, check_realizations

STAR_SWEEP = ("0", "1/3", "1/2", "1")


@dataclass(frozen=True)
class RunConfig:
    """Parameters shared by every suite; ``u="symbolic"`` keeps u as a variable."""

    N: int = 4
    u: str = SYMBOLIC
    v: Tuple[str, ...] = ("1", "0")
    kappa: str = "1"
    seed: int = 0
    samples: int = 100
    K: int = 6
    max_degree: int = 3
    jet_degree: int = 2
    corrupt: bool = False

    def __post_init__(self):
        if self.N < 0:
            raise ValueError("N must be non-negative")
        if self.u != SYMBOLIC:
            parse_rational(self.u)
        if parse_rational(self.kappa) == 0:
            raise ValueError("kappa must be non-zero")
        for c in self.v:
            parse_rational(c)

    @property
    def space(self) -> SpaceConfig:
        return SpaceConfig.make(self.v)

    @property
    def star_us(self) -> Tuple[str, ...]:
        return STAR_SWEEP if self.u == SYMBOLIC else (self.u,)

    @classmethod
    def merged(cls, *layers: Dict) -> "RunConfig":
        """Later layers win; ``None`` values are ignored."""
        names = {f.name for f in fields(cls)}
        values: Dict = {}
        for layer in layers:
            for k, val in (layer or {}).items():
                k = k.replace("-", "_")
                if k not in names:
                    raise ValueError(f"unknown configuration key {k!r}")
                if val is not None:
                    values[k] = val
        if "v" in values:
            v = values["v"]
            values["v"] = tuple(str(c).strip() for c in (v.split(",") if isinstance(v, str) else v))
        for k in ("u", "kappa"):
            if k in values:
                values[k] = str(values[k])
        return cls(**values)


def _twists(cfg: RunConfig):
    return {"fgz_inv": fgz_inv(cfg.u, cfg.N), "fru_inv": fru_inv(cfg.u, cfg.N)}


def suite_cocycle(cfg: RunConfig) -> List[Report]:
    if cfg.corrupt:
        return [check_cocycle(corrupted_twist(cfg.N, u=cfg.u), "corrupted", u=cfg.u)]
    return [check_cocycle(f, name, u=cfg.u) for name, f in _twists(cfg).items()]


def suite_counital(cfg: RunConfig) -> List[Report]:
    if cfg.corrupt:
        return [check_counital(noncounital_twist(cfg.N, u=cfg.u), "noncounital", u=cfg.u)]
    return [check_counital(f, name, u=cfg.u) for name, f in _twists(cfg).items()]


def suite_equality(cfg: RunConfig) -> List[Report]:
    return [check_equality_gz_r(cfg.u, cfg.N, corrupt=cfg.corrupt)]


def suite_ode(cfg: RunConfig) -> List[Report]:
    return [check_ode(fam, cfg.N, corrupt=cfg.corrupt) for fam in ("GZ", "R")]


def suite_coproduct(cfg: RunConfig) -> List[Report]:
    return [check_coproducts(cfg.u, cfg.N, corrupt=cfg.corrupt)]


def suite_antipode(cfg: RunConfig) -> List[Report]:
    N = min(cfg.N, 3)
    if cfg.corrupt:
        return [check_antipode_axiom("p", N, cfg.u, antipode=corrupted_antipode(cfg.u, N))]
    return [check_antipode_axiom(g, N, cfg.u) for g in ("p", "D")]


def suite_coassoc(cfg: RunConfig) -> List[Report]:
    return [check_coassoc(min(cfg.N, 3), cfg.u, corrupt=cfg.corrupt)]


def suite_qybe(cfg: RunConfig) -> List[Report]:
    N = min(cfg.N, 3)
    if cfg.corrupt:
        return [check_qybe(corrupted_r(N, u=cfg.u), "corrupted", u=cfg.u)]
    return [check_qybe(r_matrix(fgz_inv(cfg.u, N)), "R_gz", u=cfg.u)]


def suite_minkowski(cfg: RunConfig) -> List[Report]:
    space = cfg.space
    out = [check_p_xhat(space, cfg.u, corrupt=cfg.corrupt), check_realizations(space, cfg.u, corrupt=cfg.corrupt)]
    if space.n >= 2:
        out.insert(0, check_kappa_minkowski(space, cfg.u, corrupt=cfg.corrupt))
    return out


def suite_star_assoc(cfg: RunConfig) -> List[Report]:
    out = [check_assoc_planewave(u, cfg.kappa, cfg.space, cfg.samples, cfg.seed, corrupt=cfg.corrupt) for u in cfg.star_us]
    if not cfg.corrupt:
        out += [check_planewave_prefactor(u, cfg.kappa, cfg.space, seed=cfg.seed) for u in cfg.star_us]
    return out


def suite_star_agree(cfg: RunConfig) -> List[Report]:
    us = ("2/3",) + cfg.star_us if cfg.u == SYMBOLIC else cfg.star_us
    return [check_star_forms_agree(u, cfg.kappa, cfg.space, 50, cfg.seed, corrupt=cfg.corrupt) for u in us]


def suite_jets(cfg: RunConfig) -> List[Report]:
    us = ("1/2",) if cfg.corrupt else cfg.star_us
    return [
        check_star_jets(u, cfg.kappa, cfg.space, cfg.max_degree, cfg.jet_degree, seed=cfg.seed, corrupt=cfg.corrupt)
        for u in us
    ]


def suite_lemma(cfg: RunConfig) -> List[Report]:
    if cfg.corrupt:
        return [corrupted_lemma(min(cfg.K, 2))]
    return [
        check_lemma(cfg.K),
        check_reduced_c0(cfg.K + 2),
        check_simple_identity(cfg.K),
        check_vandermonde_steps(cfg.K),
        check_termwise_y_factor(cfg.K),
    ]


SUITES: Dict[str, Callable[[RunConfig], List[Report]]] = {
    "antipode": suite_antipode,
    "coassoc": suite_coassoc,
    "cocycle": suite_cocycle,
    "coproduct": suite_coproduct,
    "counital": suite_counital,
    "equality": suite_equality,
    "jets": suite_jets,
    "lemma": suite_lemma,
    "minkowski": suite_minkowski,
    "ode": suite_ode,
    "qybe": suite_qybe,
    "star-agree": suite_star_agree,
    "star-assoc": suite_star_assoc,
}


def run_suite(name: str, cfg: RunConfig) -> List[Report]:
    """Run one suite, or every suite in name order for ``"all"``."""
    if name == "all":
        return [r for key in sorted(SUITES) for r in SUITES[key](cfg)]
    try:
        suite = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}") from None
    return suite(cfg)
