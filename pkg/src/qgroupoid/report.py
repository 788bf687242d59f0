"""Check results and reports with deterministic serialization."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

__all__ = ["CheckResult", "Report", "run_check", "fmt", "PASS", "FAIL", "SAMPLED"]

PASS = "pass"
FAIL = "fail"
SAMPLED = "sampled-pass"

MAX_WITNESSES = 5


def fmt(x: Any) -> Any:
    """JSON-friendly rendering of labels, vectors and scalars."""
    from fractions import Fraction

    from .linalg import SparseVector

    if isinstance(x, SparseVector):
        return repr(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple):
        return "⊗".join(str(fmt(y)) for y in x)
    if isinstance(x, (list,)):
        return [fmt(y) for y in x]
    if isinstance(x, dict):
        return {str(k): fmt(v) for k, v in x.items()}
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


@dataclass
class CheckResult:
    axiom: str
    status: str
    witnesses: list = field(default_factory=list)
    reads: frozenset = frozenset()
    timing_ms: float | None = None
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_json(self, timings: bool = False) -> dict:
        out: dict = {"axiom-id": self.axiom, "status": self.status, "witnesses": [fmt(w) for w in self.witnesses]}
        if self.detail:
            out["detail"] = fmt(self.detail)
        if timings and self.timing_ms is not None:
            out["timing-ms"] = round(self.timing_ms, 3)
        return out


def run_check(axiom: str, fn: Callable[[], Iterable], reads: Iterable[str] = (), sampled: bool = False) -> CheckResult:
    """Run ``fn`` (which yields witnesses of failure) and package the outcome.

    ``fn`` may also return a pair ``(witnesses, detail)``.
    """
    t0 = time.perf_counter()
    detail: dict = {}
    try:
        out = fn()
        if isinstance(out, tuple) and len(out) == 2 and isinstance(out[1], dict):
            out, detail = out
        witnesses = []
        for w in out:
            witnesses.append(w)
            if len(witnesses) >= MAX_WITNESSES:
                break
    except Exception as exc:  # a crashing check is a failing check
        witnesses = [f"error: {type(exc).__name__}: {exc}"]
    ms = (time.perf_counter() - t0) * 1000
    status = FAIL if witnesses else (SAMPLED if sampled else PASS)
    return CheckResult(axiom, status, witnesses, frozenset(reads), ms, detail)


@dataclass
class Report:
    title: str
    results: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def __getitem__(self, axiom: str) -> CheckResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def failing(self) -> list[str]:
        return [r.axiom for r in self.results if not r.ok]

    def to_json(self, timings: bool = False) -> dict:
        out = {"title": self.title, "ok": self.ok, "results": [r.to_json(timings) for r in self.results]}
        if self.info:
            out["info"] = fmt(self.info)
        return out

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), indent=2, ensure_ascii=False, sort_keys=False) + "\n"

    def render_text(self, timings: bool = False) -> str:
        lines = [f"== {self.title} =="]
        for k, v in self.info.items():
            lines.append(f"  {k}: {fmt(v)}")
        for r in self.results:
            t = f"  ({r.timing_ms:.1f} ms)" if timings and r.timing_ms is not None else ""
            lines.append(f"  [{r.status:>12}] {r.axiom}{t}")
            for w in r.witnesses:
                lines.append(f"      witness: {fmt(w)}")
        lines.append(f"  overall: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"
