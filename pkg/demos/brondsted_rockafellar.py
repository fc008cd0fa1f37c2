"""Brondsted-Rockafellar witnesses for eps-subgradients of a random
max-affine supremum, with every bound checked in exact arithmetic.

    python demos/brondsted_rockafellar.py
"""

from fractions import Fraction

from supdiff.convfun import sup_function
from supdiff.harness.generator import GenKind, gen_random_instance
from supdiff.subdiff import br_witness, eps_subdifferential

inst = gen_random_instance(2, 4, seed=7, kind=GenKind.WITH_INDICATOR)
f, x = sup_function(inst.family), inst.x
print("x =", [str(c) for c in x])
for eps in (Fraction(1, 4), Fraction(1, 16)):
    D = eps_subdifferential(f, x, eps)
    print(f"\neps = {eps}: ∂_eps f(x) has vertices {[tuple(map(str, v)) for v in D.vertices]}")
    for xstar in D.vertices:
        w = br_witness(f, x, xstar, eps)
        print(f"  x* = {tuple(map(str, xstar))} -> x_eps = {tuple(map(str, w.x_eps))}, "
              f"x*_eps = {tuple(map(str, w.xstar_eps))}, all bounds hold: {w.ok}")
