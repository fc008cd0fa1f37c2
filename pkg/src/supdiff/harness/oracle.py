"""Independent directional-derivative oracle.

``σ_{∂f(x)}(d) = f'(x; d)`` for a proper convex polyhedral ``f`` at a point of
its domain. The derivative is read off an exact difference quotient taken
below the first breakpoint along ``d``, using only function evaluations and
the domain inequalities. Nothing here calls the subdifferential code.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf

from ..convfun import FunctionFamily, MaxAffineFunction, evaluate, sup_function
from ..errors import UnsupportedFamilyError
from ..polyrat.linalg import as_fraction, dot, vec


def _as_max_affine(fam) -> MaxAffineFunction:
    f = sup_function(fam) if isinstance(fam, FunctionFamily) else fam
    if not isinstance(f, MaxAffineFunction):
        raise UnsupportedFamilyError("the oracle needs a max-affine representable supremum")
    if f.overrides:
        raise UnsupportedFamilyError("the oracle needs a lower semicontinuous supremum")
    return f


def breakpoint_step(f: MaxAffineFunction, x, d) -> Fraction:
    """A step ``t > 0`` with no piece switch and no facet crossing on ``(0, t]``."""
    vals = [dot(a, x) + b for a, b in f.pieces]
    rates = [dot(a, d) for a, _ in f.pieces]
    fx = max(vals)
    # along d the value grows like the steepest piece that is active at x
    top = max(r for v, r in zip(vals, rates) if v == fx)
    ts = [(fx - v) / (r - top) for v, r in zip(vals, rates) if v < fx and r > top]
    for c, e in f.domain.hrep.inequalities:
        slack = e - dot(c, x)
        rate = dot(c, d)
        if slack > 0 and rate > 0:
            ts.append(slack / rate)
    return min(ts) / 2 if ts else Fraction(1)


def _derivative(f: MaxAffineFunction, x, fx, d):
    t = breakpoint_step(f, x, d)
    y = tuple(xi + t * di for xi, di in zip(x, d))
    fy = evaluate(f, y)
    if fy == inf:
        return inf
    return (fy - fx) / t


def oracle_support(fam, x, d):
    """Exact ``f'(x; d)``: a Fraction, ``+inf`` when ``d`` leaves the domain."""
    return oracle_supports(fam, x, [d])[0]


def oracle_supports(fam, x, directions) -> list:
    """:func:`oracle_support` for many directions, building the supremum once."""
    f = _as_max_affine(fam)
    x = vec(x)
    fx = evaluate(f, x)
    if fx == inf:
        raise UnsupportedFamilyError("x is outside the domain")
    return [_derivative(f, x, fx, vec(d)) for d in directions]
