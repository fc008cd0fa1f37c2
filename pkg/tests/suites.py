"""Seeded property suites shared by the acceptance tests.

Every suite returns ``(cases, violations)`` where ``violations`` is a list of
short strings; a clean run has none.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

from supdiff.convfun import active_set, lsc_envelope, restrict, sup_function
from supdiff.harness.generator import GenKind, gen_random_instance
from supdiff.polyrat import (
    Polyhedron,
    Subspace,
    closed_conv_union,
    contains_set,
    intersect,
    intersect_all,
    member,
    minkowski_sum,
    project,
    same_set,
    scale_set,
    support,
)
from supdiff.polyrat.linalg import add, unit
from supdiff.subdiff import (
    EnlargementQuery,
    Variant,
    enlargement,
    enlargement_member,
    eps_subdifferential,
    subdifferential,
)
from supdiff.surd import rational_sqrt

SQUARE_GRID = [F(1, 4 ** k) for k in range(1, 6)]


def _points(rng, n, m, lo=-3, hi=3):
    return [tuple(F(rng.randint(lo, hi)) for _ in range(n)) for _ in range(m)]


def random_instances(count, seed0=0):
    for i in range(count):
        kind = GenKind.WITH_INDICATOR if i % 2 else GenKind.FULL_DOMAIN
        yield gen_random_instance(1 + i % 3, 2 + (i // 3) % 4, seed0 + i, kind)


def _generators(P: Polyhedron):
    """Vertices and vertex + ray points of a polyhedron."""
    if P.is_empty:
        return []
    out = list(P.vertices)
    out += [add(v, r) for v in P.vertices for r in P.rays]
    return out


def scaled_hull(A: Polyhedron, lo, hi) -> Polyhedron:
    """``{l a : l in [lo, hi], a in A}`` by homogenization and projection."""
    if hi < 0:
        return scale_set(scaled_hull(A, -hi, -lo), -1)
    n = A.dim
    h = A.hrep
    # variables (z, l) with z = l a: C z <= l d, lo <= l <= hi
    rows = [(tuple(a) + (-b,), F(0)) for a, b in h.inequalities]
    eqs = [(tuple(a) + (-b,), F(0)) for a, b in h.equalities]
    rows += [(unit(n + 1, n), F(hi)), (tuple(-c for c in unit(n + 1, n)), F(-lo))]
    return project(Polyhedron.from_hrep(n + 1, rows, eqs), list(range(n)))


def scaling_hull(cases=100):
    """Omega co(A) = co(Omega A) for a compact interval Omega not containing 0."""
    bad = []
    for s in range(cases):
        rng = random.Random(f"scaling_hull:{s}")
        n = rng.randint(1, 3)
        pts = _points(rng, n, rng.randint(1, 5))
        lo = F(rng.randint(1, 4), rng.randint(1, 4))
        hi = lo + F(rng.randint(1, 4), rng.randint(1, 3))
        if rng.random() < 0.3:
            lo, hi = -hi, -lo
        lhs = scaled_hull(Polyhedron.from_vrep(n, pts), lo, hi)
        rhs = Polyhedron.from_vrep(n, [tuple(l * c for c in p) for p in pts for l in (lo, hi)])
        via_union = closed_conv_union([scale_set(Polyhedron.from_vrep(n, pts), l) for l in (lo, hi)], n)
        if not (same_set(lhs, rhs) and same_set(rhs, via_union)):
            bad.append(f"case {s}")
    return cases, bad


def lambda_interval(eps):
    r = rational_sqrt(F(eps))
    return 1 / (1 + r), 1 / (1 - r)


def shrinking_scaled_sets(cases=100):
    """Nested A_eps scaled by [1/(1+sqrt eps), 1/(1-sqrt eps)]: the intersections
    agree up to a gap that vanishes with the grid bottom, exactly for cones."""
    bad = []
    for s in range(cases):
        rng = random.Random(f"shrinking:{s}")
        n = rng.randint(1, 3)
        if s % 5 == 0:
            # nested cones: every A_eps is invariant under positive scaling
            rays = [r for r in _points(rng, n, 2, -1, 1) if any(r)] or [unit(n, 0)]
            core, blob = Polyhedron.from_vrep(n, [(F(0),) * n], rays), Polyhedron.point((F(0),) * n)
        else:
            core = Polyhedron.from_vrep(n, _points(rng, n, rng.randint(1, 4)))
            blob = Polyhedron.from_vrep(n, [(F(0),) * n] + _points(rng, n, 3, -2, 2))
        A = {e: minkowski_sum(core, scale_set(blob, rational_sqrt(e))) for e in SQUARE_GRID}
        lam = {e: lambda_interval(e) for e in SQUARE_GRID}
        LA = {e: closed_conv_union([scale_set(A[e], l) for l in lam[e]], n) for e in SQUARE_GRID}
        inter_a = intersect_all(list(A.values()), n)
        inter_la = intersect_all(list(LA.values()), n)
        e_min = SQUARE_GRID[-1]
        ok = same_set(inter_a, A[e_min]) and contains_set(inter_la, inter_a) and contains_set(LA[e_min], inter_la)
        prefix = [intersect_all([LA[e] for e in SQUARE_GRID[:j]], n) for j in range(1, len(SQUARE_GRID) + 1)]
        ok &= all(contains_set(a, b) for a, b in zip(prefix, prefix[1:]))
        u = lam[e_min][1]
        dirs = [unit(n, i) for i in range(n)] + [tuple(-c for c in unit(n, i)) for i in range(n)]
        dirs += [a for a, _ in inter_a.hrep.inequalities]
        for d in dirs:
            sa, sl = support(inter_a, d), support(inter_la, d)
            if isinstance(sa, float) or isinstance(sl, float):
                ok &= sa == sl
            else:
                ok &= sa <= sl <= sa + (u - 1) * abs(sa)
        if s % 5 == 0:
            ok &= same_set(inter_la, inter_a)
        if not ok:
            bad.append(f"case {s}")
    return cases, bad


def subspace_sum(cases=100):
    """A + L-perp contains A, and the intersection over a family containing
    the whole space gives back A."""
    bad = []
    for s in range(cases):
        rng = random.Random(f"subspace_sum:{s}")
        n = rng.randint(2, 3)
        pts = _points(rng, n, rng.randint(1, 4))
        rays = [r for r in _points(rng, n, rng.randint(0, 2), -1, 1) if any(r)]
        A = Polyhedron.from_vrep(n, pts, rays)
        subspaces = [Subspace.coordinate(n, rng.sample(range(n), rng.randint(1, n - 1))) for _ in range(3)]
        sums = [minkowski_sum(A, L.orthogonal_complement().as_polyhedron()) for L in subspaces]
        ok = all(contains_set(S, A) for S in sums)
        ok &= contains_set(intersect_all(sums, n), A)
        full = minkowski_sum(A, Subspace.coordinate(n, range(n)).orthogonal_complement().as_polyhedron())
        ok &= same_set(intersect_all(sums + [full], n), A)
        # a set already invariant along L-perp is unchanged
        Lp = subspaces[0].orthogonal_complement().as_polyhedron()
        ok &= same_set(minkowski_sum(sums[0], Lp), sums[0])
        if not ok:
            bad.append(f"case {s}")
    return cases, bad


def subspace_restriction(cases=100):
    """Over coordinate subspaces L through x, the subdifferentials of f + I_L
    intersect to the subdifferential of f; for finite f each is that plus L-perp."""
    bad = []
    for s in range(cases):
        rng = random.Random(f"restriction:{s}")
        n = rng.choice((2, 3))
        kind = GenKind.WITH_INDICATOR if s % 3 == 0 else GenKind.FULL_DOMAIN
        inst = gen_random_instance(n, rng.randint(2, 5), s, kind)
        f = sup_function(inst.family)
        x = inst.x
        D = subdifferential(f, x)
        supp = {i for i in range(n) if x[i] != 0}
        parts = []
        ok = True
        for size in range(len(supp), n + 1):
            for axes in itertools.combinations(range(n), size):
                if not supp <= set(axes):
                    continue
                L = Subspace.coordinate(n, axes)
                DL = subdifferential(restrict(f, L.as_polyhedron()), x)
                ok &= contains_set(DL, D)
                if kind is GenKind.FULL_DOMAIN:
                    ok &= same_set(DL, minkowski_sum(D, L.orthogonal_complement().as_polyhedron()))
                parts.append(DL)
        ok &= same_set(intersect_all(parts, n), D)
        if not ok:
            bad.append(inst.name)
    return cases, bad


def nesting(cases=100):
    bad = []
    for inst in random_instances(cases, 500):
        f = sup_function(inst.family)
        chain = [subdifferential(f, inst.x)] + [eps_subdifferential(f, inst.x, e) for e in reversed(SQUARE_GRID)]
        chain.append(eps_subdifferential(f, inst.x, F(1)))
        if not all(contains_set(b, a) for a, b in zip(chain, chain[1:])):
            bad.append(inst.name)
    return cases, bad


def enlargement_chain(cases=100):
    """BREVE inner generators are HAT members and 2eps-subgradients."""
    bad = []
    for i, inst in enumerate(random_instances(cases, 900)):
        eps = SQUARE_GRID[i % 3]
        for lbl, g in inst.family:
            s = enlargement(EnlargementQuery(g, inst.x, eps, Variant.BREVE))
            two = eps_subdifferential(g, inst.x, 2 * eps)
            hq = EnlargementQuery(g, inst.x, eps, Variant.HAT)
            for P in s.inner_parts:
                for y in _generators(P):
                    if not (enlargement_member(hq, y)[0] and member(two, y)):
                        bad.append(f"{inst.name}/{lbl}")
            if not contains_set(s.outer, s.inner):
                bad.append(f"{inst.name}/{lbl} inner not in outer")
    return cases, bad


def three_eps(cases=100, variant=Variant.BREVE):
    """Inner generators of the enlargements of active members lie in the 3eps-subdifferential."""
    bad = []
    for i, inst in enumerate(random_instances(cases, 1300 if variant is Variant.BREVE else 1700)):
        eps = SQUARE_GRID[i % 3]
        f = sup_function(inst.family)
        big = eps_subdifferential(f, inst.x, 3 * eps)
        for lbl in active_set(inst.family, inst.x, eps):
            s = enlargement(EnlargementQuery(inst.family[lbl], inst.x, eps, variant))
            for P in s.inner_parts:
                if not all(member(big, y) for y in _generators(P)):
                    bad.append(f"{inst.name}/{lbl}")
    return cases, bad


SUITES = {
    "scaled hull of a convex set": scaling_hull,
    "scaled shrinking sets": shrinking_scaled_sets,
    "sum with a complement subspace": subspace_sum,
    "restriction to coordinate subspaces": subspace_restriction,
    "eps-subdifferential nesting": nesting,
    "BREVE in HAT in 2eps": enlargement_chain,
    "breve of active members in 3eps": lambda cases=100: three_eps(cases, Variant.BREVE),
    "hat of active members in 3eps": lambda cases=100: three_eps(cases, Variant.HAT),
}
