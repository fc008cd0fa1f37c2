"""The -sqrt pair: each member has an empty subdifferential at 0, yet the
enlargement formula still recovers the subdifferential of the supremum.

    python demos/sqrt_pair.py
"""

from fractions import Fraction

from supdiff.convfun import Analytic1D, FunctionFamily, evaluate, sup_function
from supdiff.formulas import FormulaKind, intersect_over_grid, lhs_subdifferential, verify_formula
from supdiff.subdiff import EnlargementQuery, Variant, enlargement, enlargement_member, subdifferential

f1, f2 = Analytic1D(), Analytic1D(reflect=True)
fam = FunctionFamily([("f1", f1), ("f2", f2)])
x = (Fraction(0),)

print("f1(1/4) =", evaluate(f1, (Fraction(1, 4),)), "  f(0) =", evaluate(sup_function(fam), x))
print("∂f1(0) =", subdifferential(f1, x).describe(), "  ∂f(0) =", lhs_subdifferential(fam, x).describe())

for eps in (Fraction(1, 4), Fraction(1, 16)):
    for lbl, g in fam:
        s = enlargement(EnlargementQuery(g, x, eps, Variant.BREVE))
        print(f"breve enlargement of {lbl} at 0, eps={eps}: {s.outer.describe()}")

ok, y = enlargement_member(EnlargementQuery(f1, x, Fraction(1, 4)), (Fraction(-2),))
print("-2 in the eps=1/4 enlargement of f1:", ok, "with witness point", y)

grid = [Fraction(1, 4), Fraction(1, 16), Fraction(1, 64)]
print("right-hand side over the grid:", intersect_over_grid(FormulaKind.BREVE_FVB1, fam, x, grid).outer.describe())
print("verdict:", verify_formula(FormulaKind.BREVE_FVB1, fam, x, grid).status.value)
