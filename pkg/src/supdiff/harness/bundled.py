"""Bundled instances and the examples table.

The JSON files in ``data/`` are generated from the builders below with
:func:`write_data` and shipped with the package.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from ..convfun import Analytic1D, FunctionFamily, MaxAffineFunction, lsc_envelope
from ..formulas import Flags, FormulaKind
from ..polyrat import Polyhedron
from ..subdiff import EnlargementQuery, Variant, enlargement
from .instances import Instance, dumps, load_bundled
from .report import DEFAULT_GRID, DEFAULT_TOL, Report, verify_instance

K = FormulaKind
ALL_EXACT = {k: "EXACT_MATCH" for k in K}


def _inst(name, entries, x, expected, lhs, description):
    fam = FunctionFamily(entries)
    x = tuple(Fraction(c) for c in x)
    return Instance(name, fam, x, Flags.compute(fam, x), expected, lhs, description)


def sqrt_pair() -> Instance:
    exp = dict(ALL_EXACT)
    exp[K.MARCO2] = exp[K.VALADIER_CLASSIC] = "SKIPPED"
    return _inst("sqrt_pair", [("1", Analytic1D()), ("2", Analytic1D(reflect=True))], [0], exp, "ℝ",
                 "f1(y) = -sqrt(y) on [0, inf), f2(y) = f1(-y); sup is the indicator of {0}")


def _non_lsc_members():
    f1 = MaxAffineFunction([((1,), 0)], Polyhedron.interval(0, None), [((0,), 1)])
    f2 = MaxAffineFunction([((-1,), 0)], Polyhedron.interval(None, 0), [((0,), 1)])
    return [("1", f1), ("2", f2)]


def non_lsc_pair() -> Instance:
    exp = {K.BRONDSTED_M5: "MISMATCH", K.HLZ_EPS: "MISMATCH", K.BREVE_FVB1: "MISMATCH",
           K.HAT_COR1: "MISMATCH", K.SINL_M1: "EXACT_MATCH",
           K.MARCO2: "SKIPPED", K.VALADIER_CLASSIC: "SKIPPED"}
    return _inst("non_lsc_pair", _non_lsc_members(), [0], exp, "ℝ",
                 "f1 = y on (0, inf) with f1(0) = 1, f2(y) = f1(-y); sup is 1 + indicator of {0}")


def non_lsc_pair_closed() -> Instance:
    exp = dict(ALL_EXACT)
    exp[K.MARCO2] = exp[K.VALADIER_CLASSIC] = "SKIPPED"
    entries = [(lbl, lsc_envelope(f)) for lbl, f in _non_lsc_members()]
    return _inst("non_lsc_pair_closed", entries, [0], exp, "ℝ",
                 "lsc envelopes of the non-lsc pair: y on [0, inf) and -y on (-inf, 0]")


def abs_family() -> Instance:
    entries = [("plus", MaxAffineFunction([((1,), 0)])), ("minus", MaxAffineFunction([((-1,), 0)]))]
    return _inst("abs", entries, [0], dict(ALL_EXACT), "[-1, 1]", "|y| as the supremum of y and -y")


def abs_single() -> Instance:
    entries = [("abs", MaxAffineFunction([((1,), 0), ((-1,), 0)]))]
    return _inst("abs_single", entries, [0], dict(ALL_EXACT), "[-1, 1]", "|y| as a one-member family")


def max3_2d() -> Instance:
    entries = [("e1", MaxAffineFunction([((1, 0), 0)])), ("e2", MaxAffineFunction([((0, 1), 0)])),
               ("e3", MaxAffineFunction([((-1, -1), 0)]))]
    return _inst("max3_2d", entries, [0, 0], dict(ALL_EXACT), None,
                 "max of y1, y2 and -y1-y2 at the origin (continuous everywhere)")


def box_boundary_2d() -> Instance:
    box = Polyhedron.box([0, -1], [2, 1])
    entries = [("lin", MaxAffineFunction([((1, 0), 0)])),
               ("boxed", MaxAffineFunction([((0, 1), -1)], box))]
    exp = dict(ALL_EXACT)
    exp[K.VALADIER_CLASSIC] = exp[K.BRONDSTED_M5] = "SKIPPED"
    return _inst("box_boundary_2d", entries, [0, 0], exp, None,
                 "y1 together with an inactive member restricted to a box; x on the box boundary")


BUILDERS = {
    "sqrt_pair": sqrt_pair,
    "non_lsc_pair": non_lsc_pair,
    "non_lsc_pair_closed": non_lsc_pair_closed,
    "abs": abs_family,
    "abs_single": abs_single,
    "max3_2d": max3_2d,
    "box_boundary_2d": box_boundary_2d,
}


def write_data(directory: str) -> None:
    for name, build in BUILDERS.items():
        with open(os.path.join(directory, f"{name}.json"), "w", encoding="utf-8") as fh:
            fh.write(dumps(build()))


@dataclass
class ExamplesReport:
    reports: list
    rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    def to_json(self) -> dict:
        return {"ok": self.ok, "rows": self.rows, "reports": [r.to_json() for r in self.reports]}

    def to_text(self) -> str:
        out = ["example table (grid (2^-k)^2, k = 1..6)"]
        for row in self.rows:
            out.append(f"  {row['example']:<22} {row['quantity']:<34} {row['value']}")
        out.append("")
        out.extend(r.to_text() for r in self.reports)
        return "\n".join(out)


def _enl_text(f, eps, variant=Variant.BREVE):
    return enlargement(EnlargementQuery(f, (Fraction(0),), eps, variant)).outer.describe()


def reproduce_paper_examples(seed: int = 0, n_directions: int = 50) -> ExamplesReport:
    """Run every bundled instance on the default grid and tabulate the key sets."""
    reports = [verify_instance(load_bundled(name), grid=DEFAULT_GRID, n_directions=n_directions,
                               seed=seed, tol=DEFAULT_TOL) for name in BUILDERS]
    rows = []
    sq = sqrt_pair().family
    for eps in (Fraction(1, 4), Fraction(1, 16)):
        for lbl in ("1", "2"):
            rows.append({"example": "sqrt_pair", "quantity": f"breve enlargement f{lbl}(0), eps={eps}",
                         "value": _enl_text(sq[lbl], eps)})
    nl = non_lsc_pair().family
    for lbl in ("1", "2"):
        rows.append({"example": "non_lsc_pair", "quantity": f"breve enlargement f{lbl}(0), eps=1/8",
                     "value": _enl_text(nl[lbl], Fraction(1, 8))})
    cl = non_lsc_pair_closed().family
    for lbl in ("1", "2"):
        rows.append({"example": "non_lsc_pair_closed", "quantity": f"breve enlargement cl f{lbl}(0), eps=1/8",
                     "value": _enl_text(cl[lbl], Fraction(1, 8))})
    for rep in reports:
        for r in rep.results:
            rows.append({"example": rep.instance, "quantity": r.kind.name, "value": r.status})
    return ExamplesReport(reports, rows)

