"""Instance files: JSON with every rational written as a string.

Example::

    {
      "name": "abs",
      "x": ["0"],
      "family": [
        {"label": "plus", "f": {"kind": "max_affine", "pieces": [{"a": ["1"], "b": "0"}]}},
        {"label": "minus", "f": {"kind": "max_affine", "pieces": [{"a": ["-1"], "b": "0"}]}}
      ],
      "expected": {"lhs": "[-1, 1]", "formulas": {"BREVE_FVB1": "EXACT_MATCH"}}
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional

from ..convfun import Analytic1D, FunctionFamily, MaxAffineFunction
from ..errors import ParseError, SupdiffError
from ..formulas import Flags, FormulaKind
from ..polyrat import Polyhedron
from ..polyrat.linalg import as_fraction

EXPECTABLE = ("EXACT_MATCH", "SANDWICH_PASS", "MISMATCH", "SKIPPED")


@dataclass
class Instance:
    name: str
    family: FunctionFamily
    x: tuple
    flags: Flags
    expected: dict = field(default_factory=dict)
    expected_lhs: Optional[str] = None
    description: str = ""


def _rat(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise ParseError(f"rationals must be strings or integers, got {v!r}")
    try:
        return as_fraction(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {v!r}") from exc


def _ratvec(vs, n: Optional[int] = None):
    if not isinstance(vs, list):
        raise ParseError(f"expected a list of rationals, got {vs!r}")
    out = tuple(_rat(v) for v in vs)
    if n is not None and len(out) != n:
        raise ParseError(f"expected {n} coordinates, got {len(out)}")
    return out


def parse_function(obj: dict, n: int):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError("function objects need a 'kind'")
    kind = obj["kind"]
    try:
        if kind == "max_affine":
            pieces = [(_ratvec(p["a"], n), _rat(p["b"])) for p in obj["pieces"]]
            dom = obj.get("domain")
            domain = None
            if dom:
                ineqs = [(_ratvec(r["normal"], n), _rat(r["offset"])) for r in dom.get("ineqs", [])]
                eqs = [(_ratvec(r["normal"], n), _rat(r["offset"])) for r in dom.get("eqs", [])]
                domain = Polyhedron.from_hrep(n, ineqs, eqs)
            overrides = [(_ratvec(o["point"], n), _rat(o["value"])) for o in obj.get("overrides", [])]
            return MaxAffineFunction(pieces, domain, overrides, n)
        if kind == "analytic1d":
            if n != 1:
                raise ParseError("analytic catalog functions are one-dimensional")
            return Analytic1D(obj.get("name", "neg_sqrt"), bool(obj.get("reflect", False)),
                              _rat(obj.get("shift", "0")), _rat(obj.get("scale", "1")))
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, SupdiffError) as exc:
        raise ParseError(f"invalid {kind} function: {exc}") from exc
    raise ParseError(f"unknown function kind {kind!r}")


def _str(q: Fraction) -> str:
    return str(q)


def function_to_json(f) -> dict:
    if isinstance(f, MaxAffineFunction):
        out = {"kind": "max_affine",
               "pieces": [{"a": [_str(c) for c in a], "b": _str(b)} for a, b in f.pieces]}
        h = f.domain.hrep
        if h.inequalities or h.equalities:
            out["domain"] = {
                "ineqs": [{"normal": [_str(c) for c in a], "offset": _str(b)} for a, b in h.inequalities],
                "eqs": [{"normal": [_str(c) for c in a], "offset": _str(b)} for a, b in h.equalities],
            }
        if f.overrides:
            out["overrides"] = [{"point": [_str(c) for c in p], "value": _str(v)} for p, v in f.overrides]
        return out
    if isinstance(f, Analytic1D):
        return {"kind": "analytic1d", "name": f.kind, "reflect": f.reflect,
                "shift": _str(f.shift), "scale": _str(f.scale)}
    raise TypeError(f"cannot serialize {f!r}")


def parse_instance(obj: dict) -> Instance:
    if not isinstance(obj, dict):
        raise ParseError("an instance must be a JSON object")
    try:
        name = str(obj["name"])
        fam_obj = obj["family"]
        x_obj = obj["x"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc}") from exc
    n = int(obj.get("dim", len(x_obj)))
    x = _ratvec(x_obj, n)
    if not fam_obj:
        raise ParseError("the family is empty")
    entries = []
    for i, e in enumerate(fam_obj):
        label = str(e.get("label", i + 1))
        entries.append((label, parse_function(e["f"], n)))
    try:
        fam = FunctionFamily(entries, n)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    computed = Flags.compute(fam, x)
    declared = obj.get("flags") or {}
    for key, val in declared.items():
        if not hasattr(computed, key):
            raise ParseError(f"unknown flag {key!r}")
        if bool(val) != getattr(computed, key):
            raise ParseError(f"flag {key}={val} contradicts the family (computed {getattr(computed, key)})")
    exp = obj.get("expected") or {}
    formulas = {}
    for k, v in (exp.get("formulas") or {}).items():
        if v not in EXPECTABLE:
            raise ParseError(f"unknown expected status {v!r}")
        try:
            formulas[FormulaKind.parse(k)] = v
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    return Instance(name, fam, x, computed, formulas, exp.get("lhs"), obj.get("description", ""))


def instance_to_json(inst: Instance) -> dict:
    out = {
        "name": inst.name,
        "dim": inst.family.dim,
        "x": [_str(c) for c in inst.x],
        "family": [{"label": lbl, "f": function_to_json(f)} for lbl, f in inst.family.entries],
        "flags": {"lsc": inst.flags.lsc, "continuous_at_x": inst.flags.continuous_at_x,
                  "continuous_somewhere": inst.flags.continuous_somewhere},
    }
    if inst.description:
        out["description"] = inst.description
    if inst.expected or inst.expected_lhs:
        out["expected"] = {}
        if inst.expected_lhs:
            out["expected"]["lhs"] = inst.expected_lhs
        if inst.expected:
            out["expected"]["formulas"] = {k.name: v for k, v in inst.expected.items()}
    return out


def loads(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return parse_instance(obj)


def load(path: str) -> Instance:
    """Load an instance from a path, or ``bundled:NAME`` for a shipped one."""
    if path.startswith("bundled:"):
        return load_bundled(path.split(":", 1)[1])
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def dumps(inst: Instance) -> str:
    return json.dumps(instance_to_json(inst), indent=2, ensure_ascii=False) + "\n"


def bundled_names() -> list:
    root = resources.files("supdiff.harness") / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_bundled(name: str) -> Instance:
    root = resources.files("supdiff.harness") / "data"
    path = root / f"{name}.json"
    if not path.is_file():
        raise ParseError(f"no bundled instance named {name!r} (have {', '.join(bundled_names())})")
    return loads(path.read_text(encoding="utf-8"))
