"""Verification runs and their reports (JSON and text)."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import inf
from typing import Optional, Sequence

from ..errors import ContinuityPreconditionError, PreconditionError, SupdiffError
from ..formulas import ALL_KINDS, FormulaKind, Status, lhs_subdifferential, verify_formula
from ..polyrat import Polyhedron
from .instances import Instance, load

DEFAULT_GRID = tuple(Fraction(1, 4 ** k) for k in range(1, 7))  # (2^-k)^2, k = 1..6
DEFAULT_TOL = Fraction(1, 256)


def parse_grid(spec: Optional[str]):
    """``"1/4,1/16"`` or ``"squares:K"`` for ``(2^-k)^2, k = 1..K``."""
    if spec is None or spec == "":
        return list(DEFAULT_GRID)
    spec = spec.strip()
    if spec.startswith("squares:"):
        k = int(spec.split(":", 1)[1])
        return [Fraction(1, 4 ** j) for j in range(1, k + 1)]
    return [Fraction(s.strip()) for s in spec.split(",") if s.strip()]


def fmt_value(v) -> str:
    if v == inf:
        return "+inf"
    if v == -inf:
        return "-inf"
    return str(v)


def describe_set(P: Polyhedron) -> str:
    return P.describe()


def set_to_json(P: Polyhedron) -> dict:
    if P.is_empty:
        return {"empty": True}
    P = P.canonical()
    v = P.vrep
    return {"empty": False,
            "vertices": [[str(c) for c in p] for p in v.vertices],
            "rays": [[str(c) for c in r] for r in v.rays],
            "text": P.describe()}


def _witness_json(w):
    if w is None:
        return None
    out = {}
    for k, v in w.items():
        if isinstance(v, tuple):
            out[k] = [str(c) for c in v]
        elif isinstance(v, (Fraction, float, int)):
            out[k] = fmt_value(v)
        else:
            out[k] = v
    return out


@dataclass
class FormulaResult:
    kind: FormulaKind
    status: str  # EXACT_MATCH, SANDWICH_PASS, MISMATCH or SKIPPED
    expected: Optional[str]
    ok: bool
    gap: Optional[str] = None
    reason: Optional[str] = None
    witness: Optional[dict] = None
    inner: Optional[dict] = None
    outer: Optional[dict] = None
    monotone: Optional[bool] = None

    def to_json(self) -> dict:
        out = {"formula": self.kind.name, "status": self.status, "ok": self.ok}
        for k in ("expected", "gap", "reason", "witness", "inner", "outer", "monotone"):
            v = getattr(self, k)
            if v is not None:
                out[k] = v
        return out


@dataclass
class Report:
    instance: str
    grid: list
    tolerance: Fraction
    seed: int
    directions: int
    lhs: Optional[dict]
    results: list = field(default_factory=list)
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def to_json(self) -> dict:
        out = {
            "instance": self.instance,
            "grid": [str(e) for e in self.grid],
            "tolerance": str(self.tolerance),
            "seed": self.seed,
            "directions": self.directions,
            "lhs": self.lhs,
            "ok": self.ok,
            "results": [r.to_json() for r in self.results],
        }
        if self.extra:
            out["extra"] = self.extra
        return out

    def to_text(self) -> str:
        lines = [f"instance {self.instance}  grid bottom {self.grid[-1]}  tol {self.tolerance}"]
        if self.lhs is not None:
            lines.append(f"  lhs ∂f(x) = {self.lhs.get('text', '∅')}")
        for r in self.results:
            mark = "ok " if r.ok else "BAD"
            line = f"  [{mark}] {r.kind.name:<17} {r.status:<13}"
            if r.expected:
                line += f" expected {r.expected:<13}"
            if r.status in ("EXACT_MATCH", "SANDWICH_PASS", "MISMATCH") and r.outer is not None:
                line += f" rhs in [{r.inner.get('text', '∅')}, {r.outer.get('text', '∅')}]"
            if r.gap is not None and r.status == "SANDWICH_PASS":
                line += f" gap {r.gap}"
            if r.reason:
                line += f" ({r.reason})"
            lines.append(line)
        for k, v in self.extra.items():
            lines.append(f"  {k}: {v}")
        lines.append(f"  time {self.elapsed:.3f}s")
        return "\n".join(lines)


def _judge(status: str, expected: Optional[str]) -> bool:
    if expected is None:
        return status in ("EXACT_MATCH", "SANDWICH_PASS", "SKIPPED")
    if expected in ("EXACT_MATCH", "SANDWICH_PASS"):
        return status in ("EXACT_MATCH", "SANDWICH_PASS")
    return status == expected


def verify_instance(inst: Instance, formulas: Sequence = ALL_KINDS, grid=None, n_directions: int = 50,
                    seed: int = 0, tol=DEFAULT_TOL) -> Report:
    t0 = time.perf_counter()
    grid = list(DEFAULT_GRID) if grid is None else [Fraction(e) for e in grid]
    tol = Fraction(tol)
    try:
        lhs = set_to_json(lhs_subdifferential(inst.family, inst.x))
    except SupdiffError as exc:
        lhs = {"error": exc.code, "message": str(exc)}
    rep = Report(inst.name, grid, tol, seed, n_directions, lhs)
    for kind in formulas:
        kind = FormulaKind.parse(kind)
        expected = inst.expected.get(kind)
        try:
            v = verify_formula(kind, inst.family, inst.x, grid, None, tol, flags=inst.flags,
                               seed=seed, n_directions=n_directions)
        except (ContinuityPreconditionError, PreconditionError) as exc:
            rep.results.append(FormulaResult(kind, "SKIPPED", expected, _judge("SKIPPED", expected),
                                             reason=f"{exc.code}: {exc}"))
            continue
        res = FormulaResult(
            kind, v.status.value, expected, _judge(v.status.value, expected),
            gap=fmt_value(v.gap) if v.gap is not None else None,
            witness=_witness_json(v.witness),
            inner=set_to_json(v.rhs.inner), outer=set_to_json(v.rhs.outer),
            monotone=v.rhs.monotone,
        )
        rep.results.append(res)
    rep.elapsed = time.perf_counter() - t0
    return rep


def run_verify(instance_path: str, formula="all", grid_spec: Optional[str] = None, directions_count: int = 50,
               seed: int = 0, tol=DEFAULT_TOL) -> Report:
    """Load an instance (path or ``bundled:NAME``) and verify the requested formulas."""
    inst = load(instance_path)
    kinds = ALL_KINDS if str(formula).lower() == "all" else (FormulaKind.parse(formula),)
    return verify_instance(inst, kinds, parse_grid(grid_spec), directions_count, seed, Fraction(tol))


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=False) + "\n"
