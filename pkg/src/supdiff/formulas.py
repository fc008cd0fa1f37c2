"""Right-hand sides of the supremum formulas, grid intersections and verdicts."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import inf
from typing import Optional, Sequence

from . import convfun as cf
from .errors import ContinuityPreconditionError, PreconditionError, UnsupportedFamilyError
from .polyrat import (
    Polyhedron,
    closed_conv_union,
    contains_set,
    intersect,
    member,
    minkowski_sum,
    same_set,
    support,
    vec,
)
from .polyrat.linalg import as_fraction, primitive_direction, unit
from .polyrat.polyhedron import in_recession_cone
from .subdiff import (
    EnlargementQuery,
    Variant,
    ball_subdifferential_parts,
    enlargement,
    eps_subdifferential,
    normal_cone,
    subdifferential,
)


class FormulaKind(enum.Enum):
    BRONDSTED_M5 = "brondsted_m5"
    HLZ_EPS = "hlz_eps"
    BREVE_FVB1 = "breve_fvb1"
    HAT_COR1 = "hat_cor1"
    SINL_M1 = "sinl_m1"
    MARCO2 = "marco2"
    VALADIER_CLASSIC = "valadier_classic"

    @classmethod
    def parse(cls, name) -> "FormulaKind":
        if isinstance(name, cls):
            return name
        key = str(name).strip()
        for k in cls:
            if key.upper() == k.name or key.lower() == k.value:
                return k
        raise ValueError(f"unknown formula {name!r}")


ALL_KINDS = tuple(FormulaKind)


class Status(enum.Enum):
    EXACT_MATCH = "EXACT_MATCH"
    SANDWICH_PASS = "SANDWICH_PASS"
    MISMATCH = "MISMATCH"


@dataclass(frozen=True)
class Flags:
    lsc: bool
    continuous_at_x: bool
    continuous_somewhere: bool

    @classmethod
    def compute(cls, fam: cf.FunctionFamily, x) -> "Flags":
        return cls(cf.is_lsc(fam), cf.continuous_at(fam, x), cf.continuous_somewhere(fam))


@dataclass(frozen=True)
class RhsSandwich:
    eps: Optional[Fraction]
    inner: Polyhedron
    outer: Polyhedron
    per_eps: tuple = ()
    monotone: bool = True

    @property
    def exact(self) -> bool:
        return same_set(self.inner, self.outer)


def lhs_subdifferential(fam: cf.FunctionFamily, x) -> Polyhedron:
    """Exact ``∂f(x)`` for ``f = sup_t f_t``."""
    f = cf.sup_function(fam)
    if not isinstance(f, cf.MaxAffineFunction):
        raise UnsupportedFamilyError("the supremum has no polyhedral closed form at this instance")
    return subdifferential(f, vec(x))


def _check_continuity(kind: FormulaKind, fam, x, flags: Optional[Flags]):
    if flags is None:
        flags = Flags.compute(fam, x)
    if kind is FormulaKind.MARCO2 and not flags.continuous_somewhere:
        raise ContinuityPreconditionError("the supremum is not continuous at any point")
    if kind is FormulaKind.VALADIER_CLASSIC and not flags.continuous_at_x:
        raise ContinuityPreconditionError("the supremum is not continuous at x")


def n_term(fam: cf.FunctionFamily, x) -> Polyhedron:
    return normal_cone(cf.domain(fam), vec(x), 0)


def rhs_at_eps(kind, fam: cf.FunctionFamily, x, eps, *, flags: Optional[Flags] = None) -> RhsSandwich:
    """Inner/outer bounds of the closed convex hull inside the formula at one eps.

    For MARCO2 the normal-cone term sits outside the intersection and is added
    by :func:`intersect_over_grid`, not here.
    """
    kind = FormulaKind.parse(kind)
    x, eps = vec(x), as_fraction(eps)
    n = fam.dim
    if eps <= 0:
        raise ValueError("eps must be positive")
    if kind in (FormulaKind.MARCO2, FormulaKind.VALADIER_CLASSIC):
        _check_continuity(kind, fam, x, flags)

    inner_parts, outer_parts = [], []
    add_n = kind in (FormulaKind.HLZ_EPS, FormulaKind.BREVE_FVB1, FormulaKind.HAT_COR1)

    if kind is FormulaKind.BRONDSTED_M5:
        active = cf.active_set(fam, x, 0)
        if active != set(fam.labels):
            raise PreconditionError("requires every index to be active at x")
        for lbl, g in fam.entries:
            P = eps_subdifferential(g, x, eps)
            inner_parts.append(P)
            outer_parts.append(P)
    elif kind is FormulaKind.HLZ_EPS:
        for lbl in _ordered(fam, cf.active_set(fam, x, eps)):
            P = eps_subdifferential(fam[lbl], x, eps)
            inner_parts.append(P)
            outer_parts.append(P)
    elif kind in (FormulaKind.BREVE_FVB1, FormulaKind.HAT_COR1):
        var = Variant.BREVE if kind is FormulaKind.BREVE_FVB1 else Variant.HAT
        for lbl in _ordered(fam, cf.active_set(fam, x, eps)):
            s = enlargement(EnlargementQuery(fam[lbl], x, eps, var))
            inner_parts.append(s.inner)
            outer_parts.append(s.outer)
    elif kind is FormulaKind.SINL_M1:
        cl_dom = cf.domain(fam)
        for lbl in _ordered(fam, cf.active_set(fam, x, eps)):
            g = cf.restrict(fam[lbl], cl_dom)
            s = enlargement(EnlargementQuery(g, x, eps, Variant.BREVE))
            inner_parts.append(s.inner)
            outer_parts.append(s.outer)
    elif kind is FormulaKind.MARCO2:
        for lbl in _ordered(fam, cf.active_set(fam, x, eps, use_cl=True)):
            s = enlargement(EnlargementQuery(cf.lsc_envelope(fam[lbl]), x, eps, Variant.BREVE))
            inner_parts.append(s.inner)
            outer_parts.append(s.outer)
    elif kind is FormulaKind.VALADIER_CLASSIC:
        for lbl in _ordered(fam, cf.active_set(fam, x, eps)):
            parts = ball_subdifferential_parts(fam[lbl], x, eps)
            inner_parts.extend(parts)
            outer_parts.extend(parts)

    inner = closed_conv_union(inner_parts, n)
    outer = closed_conv_union(outer_parts, n)
    if add_n:
        N = n_term(fam, x)
        inner = minkowski_sum(inner, N)
        outer = minkowski_sum(outer, N)
    return RhsSandwich(eps, inner, outer)


def _ordered(fam, labels):
    return [lbl for lbl in fam.labels if lbl in labels]


def rhs_grid(kind, fam, x, grid, *, flags: Optional[Flags] = None):
    return [rhs_at_eps(kind, fam, x, e, flags=flags) for e in grid]


def check_grid(grid) -> list:
    grid = [as_fraction(e) for e in grid]
    if not grid:
        raise ValueError("the eps grid is empty")
    if any(e <= 0 for e in grid):
        raise ValueError("grid values must be positive")
    if any(b >= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly decreasing")
    return grid


def intersect_over_grid(kind, fam, x, grid, *, flags: Optional[Flags] = None) -> RhsSandwich:
    """Finite-grid surrogate of the intersection over eps > 0."""
    kind = FormulaKind.parse(kind)
    grid = check_grid(grid)
    per = rhs_grid(kind, fam, x, grid, flags=flags)
    inner, outer = per[0].inner, per[0].outer
    monotone = True
    for prev, cur in zip(per, per[1:]):
        if not contains_set(prev.outer, cur.outer):
            monotone = False
        inner = intersect(inner, cur.inner)
        outer = intersect(outer, cur.outer)
    if kind is FormulaKind.MARCO2:
        N = n_term(fam, x)
        inner = minkowski_sum(inner, N)
        outer = minkowski_sum(outer, N)
    return RhsSandwich(None, inner, outer, tuple(per), monotone)


# --------------------------------------------------------------------------
# verdicts


@dataclass
class Verdict:
    kind: FormulaKind
    status: Status
    grid: tuple
    tolerance: Fraction
    gap: Optional[object] = None
    witness: Optional[dict] = None
    lhs: Optional[Polyhedron] = field(default=None, repr=False)
    rhs: Optional[RhsSandwich] = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.status is not Status.MISMATCH


def default_directions(n: int, count: int = 50, seed: int = 0, polys: Sequence[Polyhedron] = ()):
    """Facet normals of ``polys``, the 2n axis directions, then seeded random ones."""
    out = []

    def push(d):
        d = tuple(Fraction(a) for a in d)
        if any(d) and d not in out:
            out.append(d)

    for P in polys:
        if P.is_empty:
            continue
        h = P.hrep
        for a, _ in h.inequalities:
            push(primitive_direction(a))
        for a, _ in h.equalities:
            push(primitive_direction(a))
            push(primitive_direction(tuple(-c for c in a)))
    for i in range(n):
        push(unit(n, i))
        push(tuple(-c for c in unit(n, i)))
    rng = random.Random(seed)
    while len(out) < count:
        push(tuple(Fraction(rng.randint(-16, 16), rng.randint(1, 8)) for _ in range(n)))
    return out


def _sup_gap(a, b):
    if a == inf and b == inf:
        return Fraction(0)
    if a == -inf and b == -inf:
        return Fraction(0)
    if isinstance(a, float) or isinstance(b, float):
        return inf
    return abs(a - b)


def _containment_witness(outer: Polyhedron, inner: Polyhedron):
    """A generator of ``inner`` outside ``outer`` plus a separating direction."""
    n = inner.dim
    if outer.is_empty:
        d = unit(n, 0)
        return {"point": inner.vertices[0], "direction": d,
                "lhs_support": support(inner, d), "rhs_bound": -inf}
    v = inner.vrep
    h = outer.hrep
    for p in v.vertices:
        if not member(outer, p):
            for a, b in h.inequalities:
                if sum(x * y for x, y in zip(a, p)) > b:
                    return {"point": p, "direction": a, "lhs_support": support(inner, a),
                            "rhs_bound": support(outer, a)}
            for a, b in h.equalities:
                s = sum(x * y for x, y in zip(a, p))
                if s != b:
                    d = a if s > b else tuple(-c for c in a)
                    return {"point": p, "direction": d, "lhs_support": support(inner, d),
                            "rhs_bound": support(outer, d)}
    for r in v.rays:
        if not in_recession_cone(outer, r):
            for a, _ in h.inequalities:
                if sum(x * y for x, y in zip(a, r)) > 0:
                    return {"ray": r, "direction": a, "lhs_support": support(inner, a),
                            "rhs_bound": support(outer, a)}
            for a, _ in h.equalities:
                s = sum(x * y for x, y in zip(a, r))
                if s != 0:
                    d = a if s > 0 else tuple(-c for c in a)
                    return {"ray": r, "direction": d, "lhs_support": support(inner, d),
                            "rhs_bound": support(outer, d)}
    return None


def verify_formula(kind, fam, x, grid, directions=None, tol=Fraction(1, 256), *,
                   flags: Optional[Flags] = None, seed: int = 0, n_directions: int = 50) -> Verdict:
    """Compare ``∂f(x)`` with the formula's right-hand side on a finite grid."""
    kind = FormulaKind.parse(kind)
    tol = as_fraction(tol)
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    x = vec(x)
    grid = check_grid(grid)
    lhs = lhs_subdifferential(fam, x)
    rhs = intersect_over_grid(kind, fam, x, grid, flags=flags)
    if directions is None:
        directions = default_directions(fam.dim, n_directions, seed, (lhs, rhs.outer))
    directions = [vec(d) for d in directions]
    if not directions:
        raise ValueError("at least one direction is required")
    base = dict(kind=kind, grid=tuple(grid), tolerance=tol, lhs=lhs, rhs=rhs)

    if same_set(lhs, rhs.inner) and same_set(lhs, rhs.outer):
        return Verdict(status=Status.EXACT_MATCH, gap=Fraction(0), **base)
    if not contains_set(rhs.outer, lhs):
        w = _containment_witness(rhs.outer, lhs)
        w["side"] = "lhs not contained in outer"
        return Verdict(status=Status.MISMATCH, witness=w, **base)
    if not contains_set(lhs, rhs.inner):
        w = _containment_witness(lhs, rhs.inner)
        w["side"] = "inner not contained in lhs"
        return Verdict(status=Status.MISMATCH, witness=w, **base)
    gap, worst = Fraction(0), None
    for d in directions:
        g = _sup_gap(support(rhs.outer, d), support(lhs, d))
        if worst is None or g > gap:
            gap, worst = g, d
    if gap <= tol:
        return Verdict(status=Status.SANDWICH_PASS, gap=gap, **base)
    w = {"direction": worst, "lhs_support": support(lhs, worst), "rhs_bound": support(rhs.outer, worst),
         "side": "support gap above tolerance"}
    return Verdict(status=Status.MISMATCH, gap=gap, witness=w, **base)
