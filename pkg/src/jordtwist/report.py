"""Structured verification outcomes."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List


def _terms_of(residual) -> List[Any]:
    if residual is None:
        return []
    if isinstance(residual, (list, tuple)):
        return list(residual)
    if hasattr(residual, "to_json"):
        return residual.to_json() if residual else []
    return [str(residual)] if residual else []


@dataclass
class Report:
    """Outcome of one check.

    ``residual`` maps a part label to something that should be zero: a
    TensorElem, AlgElem, WeylElem, Poly, or a list of failure records.  The
    check passes iff every part is empty.
    """

    check: str
    params: Dict[str, Any]
    residual: Dict[str, Any] = field(default_factory=dict)
    ms: float = 0.0
    info: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(not _terms_of(r) for r in self.residual.values())

    def residual_terms(self) -> List[Dict[str, Any]]:
        out = []
        for part in sorted(self.residual):
            for term in _terms_of(self.residual[part]):
                out.append({"part": part, "term": term})
        return out

    def to_json(self) -> Dict[str, Any]:
        payload = {
            "check": self.check,
            "params": {k: _plain(v) for k, v in sorted(self.params.items())},
            "pass": self.passed,
            "residual_terms": self.residual_terms(),
            "ms": round(self.ms, 3),
        }
        if self.info:
            payload["info"] = {k: _plain(v) for k, v in sorted(self.info.items())}
        return payload

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = ", ".join(f"{k}={_plain(v)}" for k, v in sorted(self.params.items()))
        return f"[{status}] {self.check} ({params}) {self.ms:.0f} ms"


def _plain(v):
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return str(v)


def timed(check: str, params: Dict[str, Any], fn: Callable[[], Dict[str, Any]], **info) -> Report:
    start = time.perf_counter()
    residual = fn()
    ms = (time.perf_counter() - start) * 1000.0
    return Report(check, params, residual, ms, info)
