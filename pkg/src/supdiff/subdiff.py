"""Exact subdifferential calculus for max-affine and catalog functions.

Covers the Fenchel subdifferential, the eps-subdifferential, normal and
eps-normal sets, the nearby-point enlargements (with their membership oracle)
and Brondsted-Rockafellar witnesses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import inf
from typing import Optional, Sequence

from .convfun import (
    Analytic1D,
    MaxAffineFunction,
    SupHandle,
    evaluate,
    is_inf,
    lsc_envelope,
)
from .errors import NoSqrtError, NotEpsSubgradientError, UnsupportedFamilyError
from .polyrat import (
    Polyhedron,
    closed_conv_union,
    contains_set,
    intersect,
    maximize,
    member,
    same_set,
    support,
    vec,
)
from .polyrat.linalg import add, as_fraction, dot, norm_1, norm_inf, scale, sub, unit, zero
from .polyrat.polyhedron import GeneratorSystem, _canon_hrep, _canon_vrep
from .surd import rational_sqrt


class Variant(enum.Enum):
    BREVE = "breve"  # nearby points in the eps-ball with the pairing condition
    HAT = "hat"  # nearby points, subgradient also a 2eps-subgradient at x
    SMALLFROWN = "smallfrown"  # no ball constraint

    @classmethod
    def parse(cls, name) -> "Variant":
        if isinstance(name, cls):
            return name
        return cls[str(name).upper()]


INF_NORM = "INF_NORM"


def _neg(v):
    return tuple(-a for a in v)


def _point(n: int):
    return (Fraction(0),) * n


def _require_sqrt(q: Fraction, what: str = "eps") -> Fraction:
    r = rational_sqrt(q)
    if r is None:
        raise NoSqrtError(f"{what} = {q} is not the square of a rational")
    return r


# --------------------------------------------------------------------------
# normal sets


def _tight_rows(P: Polyhedron, x):
    h = P.hrep
    return [a for a, b in h.inequalities if dot(a, x) == b], [a for a, _ in h.equalities]


def normal_cone(A: Polyhedron, x, eps=0) -> Polyhedron:
    """``N^eps_A(x) = {x* : <x*, y - x> <= eps for all y in A}``; empty if ``x`` not in ``A``."""
    x = vec(x)
    eps = as_fraction(eps)
    n = A.dim
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if not member(A, x):
        return Polyhedron.empty(n)
    if eps == 0:
        tight, eqs = _tight_rows(A, x)
        rays = list(tight) + list(eqs) + [_neg(e) for e in eqs]
        return Polyhedron(n, vrep=_canon_vrep(n, [_point(n)], rays), empty=False)
    v = A.vrep
    rows = [(sub(p, x), eps) for p in v.vertices] + [(r, Fraction(0)) for r in v.rays]
    rows = [(a, b) for a, b in rows if any(a)]
    return Polyhedron(n, hrep=_canon_hrep(n, rows, []), empty=False)


# --------------------------------------------------------------------------
# subdifferentials


def _override_gap(f: MaxAffineFunction, x) -> Fraction:
    for p, v in f.overrides:
        if p == x:
            return v - f.base_value(x)
    return Fraction(0)


def subdifferential(f, x) -> Polyhedron:
    """Exact ``∂f(x)`` (empty outside the domain and at non-lsc points)."""
    x = vec(x)
    if isinstance(f, MaxAffineFunction):
        n = f.dim
        if not member(f.domain, x) or _override_gap(f, x) > 0:
            return Polyhedron.empty(n)
        fx = f.base_value(x)
        active = [a for a, b in f.pieces if dot(a, x) + b == fx]
        tight, eqs = _tight_rows(f.domain, x)
        rays = list(tight) + list(eqs) + [_neg(e) for e in eqs]
        return Polyhedron(n, vrep=_canon_vrep(n, active, rays), empty=False)
    if isinstance(f, Analytic1D):
        u = f.radicand(x)
        if u <= 0:
            return Polyhedron.empty(1)
        r = _require_sqrt(u, "radicand")
        return Polyhedron.point([f.sigma * (-f.scale / (2 * r))])
    if isinstance(f, SupHandle):
        raise UnsupportedFamilyError("subdifferential of a supremum without closed form")
    raise TypeError(f"not a convex function: {f!r}")


def _eps_sub_cl(f: MaxAffineFunction, x, eps: Fraction) -> Polyhedron:
    """``∂_eps(cl f)(x)`` for ``x`` in the domain, from the dual description.

    ``y*`` is an eps-subgradient iff ``y* = sum l_i a_i + sum m_j c_j + E^T nu`` with
    ``l`` in the simplex, ``m >= 0`` and ``sum l_i gap_i + sum m_j slack_j <= eps``,
    where ``gap_i = f(x) - l_i(x)`` and ``slack_j`` is the slack of facet ``j`` at
    ``x``. That lifted set has vertices with at most two nonzero weights, so its
    image is enumerated directly.
    """
    n = f.dim
    fx = f.base_value(x)
    gaps = [(a, fx - dot(a, x) - b) for a, b in f.pieces]
    h = f.domain.hrep
    facets = [(c, d - dot(c, x)) for c, d in h.inequalities]
    verts, rays = [], []
    for a, g in gaps:
        if g <= eps:
            verts.append(a)
            for c, s in facets:
                if s > 0:
                    verts.append(add(a, scale((eps - g) / s, c)))
        for a2, g2 in gaps:
            if g <= eps < g2:
                th = (g2 - eps) / (g2 - g)
                verts.append(add(scale(th, a), scale(1 - th, a2)))
    for c, s in facets:
        if s == 0:
            rays.append(c)
    for e, _ in h.equalities:
        rays.append(e)
        rays.append(_neg(e))
    return Polyhedron(n, vrep=_canon_vrep(n, verts, rays), empty=False)


def eps_subdifferential(f, x, eps) -> Polyhedron:
    """Exact ``∂_eps f(x)``; empty when ``f(x) = +inf``."""
    x = vec(x)
    eps = as_fraction(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if isinstance(f, MaxAffineFunction):
        if not member(f.domain, x):
            return Polyhedron.empty(f.dim)
        g = _override_gap(f, x)
        if g > eps:
            return Polyhedron.empty(f.dim)
        return _eps_sub_cl(f, x, eps - g)
    if isinstance(f, Analytic1D):
        u0 = f.radicand(x)
        if u0 < 0:
            return Polyhedron.empty(1)
        s = f.scale
        if eps == 0:
            return subdifferential(f, x)
        if u0 == 0:
            hi = -s * s / (4 * eps)
            lo_m, hi_m = None, hi
        else:
            r0 = _require_sqrt(u0, "radicand")
            k = s * r0 + eps
            disc = _require_sqrt(eps * eps + 2 * eps * s * r0, "discriminant")
            p_lo, p_hi = (k - disc) / (2 * u0), (k + disc) / (2 * u0)
            lo_m, hi_m = -p_hi, -p_lo
        return _mirror_interval(lo_m, hi_m, f.sigma)
    if isinstance(f, SupHandle):
        raise UnsupportedFamilyError("eps-subdifferential of a supremum without closed form")
    raise TypeError(f"not a convex function: {f!r}")


def _mirror_interval(lo, hi, sigma) -> Polyhedron:
    """Interval ``[lo, hi]`` (``None`` = unbounded) mapped by ``m -> sigma * m``."""
    if sigma < 0:
        lo, hi = (None if hi is None else -hi), (None if lo is None else -lo)
    return Polyhedron.interval(lo, hi)


# --------------------------------------------------------------------------
# enlargements


@dataclass(frozen=True)
class EnlargementQuery:
    f: object
    x: tuple
    eps: Fraction
    variant: Variant = Variant.BREVE
    norm: str = INF_NORM

    def __post_init__(self):
        object.__setattr__(self, "x", vec(self.x))
        object.__setattr__(self, "eps", as_fraction(self.eps))
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        if self.eps <= 0:
            raise ValueError("enlargements need eps > 0")
        if self.norm != INF_NORM:
            raise ValueError(f"unsupported norm {self.norm!r}")
        if len(self.x) != self.f.dim:
            raise ValueError("point has wrong dimension")


@dataclass(frozen=True)
class EnlargementSandwich:
    """Inner and outer lists of polyhedra around an enlargement set.

    ``inner_parts`` are subsets of the true set and ``outer_parts`` cover it.
    The hulls ``inner``/``outer`` are what the formulas consume.
    """

    query: EnlargementQuery
    inner_parts: tuple
    outer_parts: tuple
    witnesses: tuple = ()
    inner: Polyhedron = field(init=False, repr=False)
    outer: Polyhedron = field(init=False, repr=False)

    def __post_init__(self):
        n = self.query.f.dim
        object.__setattr__(self, "inner", closed_conv_union(list(self.inner_parts), n))
        object.__setattr__(self, "outer", closed_conv_union(list(self.outer_parts), n))

    @property
    def exact(self) -> bool:
        return same_set(self.inner, self.outer)


def _ball_rows(x, r):
    n = len(x)
    rows = []
    for i in range(n):
        e = unit(n, i)
        rows.append((e, x[i] + r))
        rows.append((_neg(e), r - x[i]))
    return rows


def _cell_regions(f: MaxAffineFunction, x, eps: Fraction, variant: Variant, c, band: bool = True):
    """Per piece ``s``: ``{y in dom : l_s is maximal, ball, |l_s(y) - c| <= eps}``."""
    n = f.dim
    h = f.domain.hrep
    out = []
    for s, (as_, bs) in enumerate(f.pieces):
        rows = list(h.inequalities)
        for i, (a, b) in enumerate(f.pieces):
            if i != s and a != as_:
                rows.append((sub(a, as_), bs - b))
            elif i != s and b > bs:
                rows = None
                break
        if rows is None:
            continue
        if variant is not Variant.SMALLFROWN:
            rows += _ball_rows(x, eps)
        if not band:
            pass
        elif any(as_):
            rows.append((as_, c + eps - bs))
            rows.append((_neg(as_), eps - c + bs))
        elif abs(bs - c) > eps:
            continue
        Q = Polyhedron(n, hrep=_canon_hrep(n, rows, list(h.equalities)))
        if not Q.is_empty:
            out.append((s, Q))
    return out


def _is_affine(f) -> bool:
    return (isinstance(f, MaxAffineFunction) and len(f.pieces) == 1 and not f.overrides
            and not f.domain.hrep.inequalities and not f.domain.hrep.equalities)


@lru_cache(maxsize=8192)
def _enlarge_max_affine(q: EnlargementQuery) -> EnlargementSandwich:
    f, x, eps, var = q.f, q.x, q.eps, q.variant
    n = f.dim
    if _is_affine(f):
        pt = Polyhedron.point(f.pieces[0][0])
        return EnlargementSandwich(q, (pt,), (pt,), (x,))
    c = evaluate(f, x)
    excluded = {p for p, _ in f.overrides}
    eps2 = eps_subdifferential(f, x, 2 * eps) if var is Variant.HAT else None
    inner, outer, wit = [], [], []
    seen = set()
    candidates = []
    isolated, spread = set(), set()
    for _, Q in _cell_regions(f, x, eps, var, c):
        candidates.extend(Q.vertices)
        if len(Q.vertices) == 1 and not Q.rays:
            isolated.add(Q.vertices[0])
        else:
            spread.update(Q.vertices)
    # an overridden point contributes nothing; it is kept in the outer bound
    # unless its region is that single point, since nearby points of the
    # region have subgradients contained in ∂(cl f) there
    if _override_gap(f, x) == 0:
        candidates.append(x)
        spread.add(x)
    isolated -= spread
    for v in candidates:
        if v in seen:
            continue
        seen.add(v)
        D = subdifferential(lsc_envelope(f), v)
        if var is Variant.HAT:
            D = intersect(D, eps2)
        if v in excluded:
            if v not in isolated:
                outer.append(D)
            continue
        outer.append(D)
        if var is Variant.HAT:
            part = D
        else:
            d = sub(v, x)
            part = D if not any(d) else intersect(
                D, Polyhedron(n, hrep=_canon_hrep(n, [(d, eps), (_neg(d), eps)], [])))
        if not part.is_empty:
            inner.append(part)
            wit.append(v)
    return EnlargementSandwich(q, tuple(inner), tuple(outer), tuple(wit))


def ball_subdifferential_parts(f, x, eps) -> list:
    """Exact list of sets whose union is ``∪ {∂f(y) : |y - x|_inf <= eps}``."""
    x, eps = vec(x), as_fraction(eps)
    if isinstance(f, MaxAffineFunction):
        excluded = {p for p, v in f.overrides}
        pts = []
        for _, Q in _cell_regions(f, x, eps, Variant.BREVE, None, band=False):
            pts.extend(v for v in Q.vertices if v not in pts and v not in excluded)
        return [subdifferential(f, v) for v in pts]
    if isinstance(f, Analytic1D):
        u0 = f.radicand(x)
        s = f.scale
        hi_u = u0 + eps
        if hi_u <= 0:
            return []
        hi = -s / (2 * _require_sqrt(hi_u, "radicand"))
        lo_u = u0 - eps
        lo = None if lo_u <= 0 else -s / (2 * _require_sqrt(lo_u, "radicand"))
        return [_mirror_interval(lo, hi, f.sigma)]
    raise UnsupportedFamilyError(f"no ball subdifferential for {f!r}")


def _analytic_enlargement(q: EnlargementQuery) -> EnlargementSandwich:
    f, eps, var = q.f, q.eps, q.variant
    u0 = f.radicand(q.x)
    if u0 < 0:
        return EnlargementSandwich(q, (), ())
    if u0 != 0:
        raise UnsupportedFamilyError("analytic enlargements are implemented at the domain endpoint only")
    s = f.scale
    if var is Variant.SMALLFROWN:
        hi = -s * s / (2 * eps)
    else:
        umax = min(eps, eps * eps / (s * s))
        hi = -s / (2 * _require_sqrt(umax, "ball radius"))
        if var is Variant.HAT:
            hi = min(hi, -s * s / (8 * eps))
    P = _mirror_interval(None, hi, f.sigma)
    return EnlargementSandwich(q, (P,), (P,))


def enlargement(q: EnlargementQuery) -> EnlargementSandwich:
    """Inner/outer sandwich of the enlargement selected by ``q.variant``."""
    f = q.f
    if is_inf(evaluate(f, q.x)):
        return EnlargementSandwich(q, (), ())
    if isinstance(f, MaxAffineFunction):
        return _enlarge_max_affine(q)
    if isinstance(f, Analytic1D):
        return _analytic_enlargement(q)
    raise UnsupportedFamilyError(f"no enlargement for {f!r}")


def conjugate_value(f: MaxAffineFunction, ystar):
    """``f*(y*)`` together with a maximizer of ``<y*, y> - cl f(y)``."""
    n = f.dim
    h = f.domain.hrep
    rows = [(tuple(a) + (Fraction(0),), b) for a, b in h.inequalities]
    eqs = [(tuple(a) + (Fraction(0),), b) for a, b in h.equalities]
    rows += [(tuple(a) + (Fraction(-1),), -b) for a, b in f.pieces]
    epi = Polyhedron(n + 1, hrep=_canon_hrep(n + 1, rows, eqs))
    val, arg = maximize(epi, tuple(ystar) + (Fraction(-1),))
    return val, (arg[:n] if arg is not None else None)


def _pick_point(P: Polyhedron, excluded) -> Optional[tuple]:
    if P.is_empty:
        return None
    v = P.vrep
    for p in v.vertices:
        if p not in excluded:
            return p
    if len(v.vertices) > 1:
        return tuple((a + b) / 2 for a, b in zip(v.vertices[0], v.vertices[1]))
    if v.rays:
        return add(v.vertices[0], v.rays[0])
    return None


def enlargement_member(q: EnlargementQuery, ystar) -> tuple:
    """Decide ``y* ∈`` enlargement exactly; returns ``(bool, witness point or None)``."""
    ystar = vec(ystar)
    f, x, eps, var = q.f, q.x, q.eps, q.variant
    fx = evaluate(f, x)
    if is_inf(fx):
        return False, None
    if isinstance(f, Analytic1D):
        P = _analytic_enlargement(q).inner
        if not member(P, ystar):
            return False, None
        m = f.sigma * ystar[0]
        u = f.scale * f.scale / (4 * m * m)
        return True, (f.shift + f.sigma * u,)
    if not isinstance(f, MaxAffineFunction):
        raise UnsupportedFamilyError(f"no membership oracle for {f!r}")
    n = f.dim
    F, _ = conjugate_value(f, ystar)
    if is_inf(F):
        return False, None
    h = f.domain.hrep
    rows = list(h.inequalities)
    rows += [(sub(a, ystar), -F - b) for a, b in f.pieces]  # cl f(y) <= <y*, y> - F
    if var is not Variant.SMALLFROWN:
        rows += _ball_rows(x, eps)
    # on this set f(y) = <y*, y> - F
    rows.append((ystar, fx + eps + F))
    rows.append((_neg(ystar), eps - fx - F))
    if var is Variant.HAT:
        if fx + F - dot(ystar, x) > 2 * eps:
            return False, None
    else:
        rows.append((ystar, eps + dot(ystar, x)))
        rows.append((_neg(ystar), eps - dot(ystar, x)))
    rows = [(a, b) for a, b in rows if any(a) or b < 0]
    if any(not any(a) for a, _ in rows):
        return False, None
    S = Polyhedron(n, hrep=_canon_hrep(n, rows, list(h.equalities)))
    y = _pick_point(S, {p for p, _ in f.overrides})
    return (y is not None), y


# --------------------------------------------------------------------------
# Brondsted-Rockafellar


@dataclass(frozen=True)
class BRWitness:
    x_eps: tuple
    xstar_eps: tuple
    lambda_eps: Fraction
    ystar_eps: tuple
    checks: dict = field(default_factory=dict, compare=False)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _sign_set(t: Fraction):
    return (Fraction(1), Fraction(1)) if t > 0 else (Fraction(-1), Fraction(-1)) if t < 0 else (Fraction(-1), Fraction(1))


def br_witness(f, x, xstar, eps) -> BRWitness:
    """Nearby exact subgradient for an eps-subgradient, with exact bound checks.

    Minimizes ``f(y) - <x*, y> + sqrt(eps) * (|y - x|_1 + |<x*, y - x>|)`` exactly
    and reads ``x*_eps`` off the optimality condition. The primal norm is the
    1-norm, so ``y*_eps`` lives in the dual unit ball of the max-norm.
    """
    x, xstar, eps = vec(x), vec(xstar), as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    f = lsc_envelope(f)
    if not isinstance(f, MaxAffineFunction):
        raise UnsupportedFamilyError("Brondsted-Rockafellar witnesses need a max-affine function")
    r = _require_sqrt(eps)
    n = f.dim
    if not member(eps_subdifferential(f, x, eps), xstar):
        raise NotEpsSubgradientError(f"{xstar} is not an eps-subgradient at {x}")

    # variables (y, tau, s_1..s_n, m)
    d = 2 * n + 2
    h = f.domain.hrep

    def row(y=None, tau=0, s=None, m=0):
        out = [Fraction(0)] * d
        if y is not None:
            out[:n] = y
        out[n] = Fraction(tau)
        if s is not None:
            out[n + 1:2 * n + 1] = s
        out[2 * n + 1] = Fraction(m)
        return tuple(out)

    rows = [(row(y=a), b) for a, b in h.inequalities]
    eqs = [(row(y=a), b) for a, b in h.equalities]
    rows += [(row(y=a, tau=-1), -b) for a, b in f.pieces]
    for i in range(n):
        e = unit(n, i)
        rows.append((row(y=e, s=_neg(e)), x[i]))
        rows.append((row(y=_neg(e), s=_neg(e)), -x[i]))
    rows.append((row(y=xstar, m=-1), dot(xstar, x)))
    rows.append((row(y=_neg(xstar), m=-1), -dot(xstar, x)))
    P = Polyhedron(d, hrep=_canon_hrep(d, rows, eqs))
    obj = row(y=xstar, tau=-1, s=[-r] * n, m=-r)
    _, arg = maximize(P, obj)
    x_eps = tuple(arg[:n])
    delta = sub(x_eps, x)

    # x*_eps in ∂f(x_eps) ∩ (x* - r (W + M x*))
    w_ranges = [_sign_set(t) for t in delta]
    m_lo, m_hi = _sign_set(dot(xstar, delta))
    lifted_rows = []
    for i, (lo, hi) in enumerate(w_ranges):
        e = unit(n + 1, i)
        lifted_rows.append((e, hi))
        lifted_rows.append((_neg(e), -lo))
    em = unit(n + 1, n)
    lifted_rows.append((em, m_hi))
    lifted_rows.append((_neg(em), -m_lo))
    WM = Polyhedron(n + 1, hrep=_canon_hrep(n + 1, lifted_rows, []))
    D = subdifferential(f, x_eps)
    # z = x* - r (w + mu x*) must lie in D: pull D's description back to (w, mu)
    zrows, zeqs = [], []
    for a, b in D.hrep.inequalities:
        # <a, x*> - r <a, w> - r mu <a, x*> <= b
        zrows.append((tuple(-r * c for c in a) + (-r * dot(a, xstar),), b - dot(a, xstar)))
    for a, b in D.hrep.equalities:
        zeqs.append((tuple(-r * c for c in a) + (-r * dot(a, xstar),), b - dot(a, xstar)))
    zrows = [(a, b) for a, b in zrows if any(a) or b < 0]
    zeqs = [(a, b) for a, b in zeqs if any(a) or b != 0]
    feas = intersect(WM, Polyhedron(n + 1, hrep=_canon_hrep(n + 1, zrows, zeqs)))
    origin = zero(n + 1)
    wm = origin if member(feas, origin) else feas.vertices[0]  # no correction when x* already works
    w, mu = wm[:n], wm[n]
    ystar_eps = _neg(w)
    lam = -mu
    xstar_eps = tuple(xs + r * (ys + lam * xs) for xs, ys in zip(xstar, ystar_eps))

    fx, fxe = evaluate(f, x), evaluate(f, x_eps)
    pair = dot(xstar_eps, delta)
    checks = {
        "distance": norm_1(delta) <= r,
        "exact_subgradient": member(subdifferential(f, x_eps), xstar_eps),
        "pairing": abs(pair) <= eps + r,
        "value_gap": abs(fxe - fx) <= eps + r,
        "in_2eps_subdifferential": member(eps_subdifferential(f, x, 2 * eps), xstar_eps),
        "dual_ball": norm_inf(ystar_eps) <= 1 and -1 <= lam <= 1,
    }
    return BRWitness(x_eps, xstar_eps, lam, ystar_eps, checks)
