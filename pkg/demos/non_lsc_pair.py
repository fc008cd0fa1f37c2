"""A non-lsc pair where the enlargement formula fails, and its closure where
it holds again.

    python demos/non_lsc_pair.py
"""

from fractions import Fraction

from supdiff.convfun import FunctionFamily, MaxAffineFunction, lsc_envelope
from supdiff.formulas import ALL_KINDS, Flags, FormulaKind
from supdiff.harness.bundled import non_lsc_pair
from supdiff.harness.instances import Instance
from supdiff.harness.report import verify_instance
from supdiff.polyrat import Polyhedron
from supdiff.subdiff import EnlargementQuery, enlargement

# f1(y) = y on (0, inf), f1(0) = 1; f2 is its mirror image
f1 = MaxAffineFunction([((1,), 0)], Polyhedron.interval(0, None), [((0,), 1)])
f2 = MaxAffineFunction([((-1,), 0)], Polyhedron.interval(None, 0), [((0,), 1)])
x, eps = (Fraction(0),), Fraction(1, 8)

for name, g in (("f1", f1), ("f2", f2), ("cl f1", lsc_envelope(f1)), ("cl f2", lsc_envelope(f2))):
    print(f"breve enlargement of {name} at 0, eps={eps}: {enlargement(EnlargementQuery(g, x, eps)).outer.describe()}")

print()
print(verify_instance(non_lsc_pair(), ALL_KINDS).to_text())
closed = FunctionFamily([("1", lsc_envelope(f1)), ("2", lsc_envelope(f2))])
inst = Instance("closure of the pair", closed, x, Flags.compute(closed, x))
print(verify_instance(inst, [FormulaKind.BREVE_FVB1, FormulaKind.HAT_COR1]).to_text())
