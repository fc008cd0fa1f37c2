"""Data functions ``f_t``, their supremum, lsc envelopes and active index sets.

Values are ``Fraction`` for rational results, ``Surd`` for the square-root
catalog, and ``math.inf`` for points outside the domain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import inf
from typing import Optional, Sequence, Union

from .errors import ImproperFunctionError, UnsupportedFamilyError
from .polyrat import Polyhedron, intersect, member, vec
from .polyrat.linalg import as_fraction, dot, rank, sub
from .surd import Surd, rational_sqrt

NEG_SQRT = "neg_sqrt"
ANALYTIC_CATALOG = (NEG_SQRT,)


def is_inf(v) -> bool:
    return isinstance(v, float) and v == inf


def value_ge(u, v) -> bool:
    """``u >= v`` for values that may be ``+inf``, ``-inf``, Fraction or Surd."""
    uf, vf = isinstance(u, float), isinstance(v, float)
    if uf and vf:
        return u >= v
    if uf:
        return u > 0
    if vf:
        return v < 0
    return u >= v


def value_eq(u, v) -> bool:
    if isinstance(u, float) or isinstance(v, float):
        return isinstance(u, float) and isinstance(v, float) and u == v
    return u == v


def value_max(values):
    best = None
    for v in values:
        if best is None or not value_ge(best, v):
            best = v
    return best


def value_sub(u, e):
    """``u - e`` for a rational ``e``; infinities are absorbing."""
    if isinstance(u, float):
        return u
    return u - e


@dataclass(frozen=True)
class MaxAffineFunction:
    """``y -> max_i <a_i, y> + b_i`` on a polyhedral domain, ``+inf`` elsewhere.

    ``overrides`` raise the value at finitely many extreme points of the
    domain; this is how non-lsc functions are represented. Every override must
    be finite, lie at an extreme point of the domain and not lower the base
    value, which keeps the function convex.
    """

    pieces: tuple
    domain: Polyhedron
    overrides: tuple = ()
    dim: int = field(default=0)

    def __init__(self, pieces, domain: Optional[Polyhedron] = None, overrides=(), dim: Optional[int] = None):
        pieces = tuple((vec(a), as_fraction(b)) for a, b in pieces)
        if not pieces:
            raise ValueError("a max-affine function needs at least one piece")
        n = len(pieces[0][0]) if dim is None else dim
        if any(len(a) != n for a, _ in pieces):
            raise ValueError("pieces have inconsistent dimension")
        if domain is None:
            domain = Polyhedron.universe(n)
        if domain.dim != n:
            raise ValueError("domain dimension does not match the pieces")
        if domain.is_empty:
            raise ImproperFunctionError("max-affine function with empty domain")
        ovs = []
        seen = set()
        for p, v in overrides:
            p = vec(p)
            if v == inf or (isinstance(v, str) and v.strip() in ("inf", "+inf")):
                raise ValueError("infinite overrides are not supported (the domain would not be closed)")
            v = as_fraction(v)
            if p in seen:
                raise ValueError(f"duplicate override at {p}")
            seen.add(p)
            if len(p) != n or not member(domain, p):
                raise ValueError(f"override point {p} is not in the domain")
            if not _is_extreme(domain, p):
                raise ValueError(f"override point {p} is not an extreme point of the domain")
            base = max(dot(a, p) + b for a, b in pieces)
            if v < base:
                raise ValueError(f"override value {v} is below the affine value {base} at {p}")
            if v > base:
                ovs.append((p, v))
        # A singleton domain carries its value in the pieces themselves.
        verts = domain.vertices
        if ovs and len(verts) == 1 and not domain.rays:
            pieces = ((tuple(Fraction(0) for _ in range(n)), ovs[0][1]),)
            ovs = []
        object.__setattr__(self, "pieces", _dedup_pieces(pieces))
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "overrides", tuple(sorted(ovs)))
        object.__setattr__(self, "dim", n)

    def base_value(self, y):
        return max(dot(a, y) + b for a, b in self.pieces)

    def __repr__(self):
        return f"MaxAffineFunction(pieces={len(self.pieces)}, domain={self.domain!r}, overrides={len(self.overrides)})"


def _dedup_pieces(pieces):
    out = []
    for p in pieces:
        if p not in out:
            out.append(p)
    return tuple(out)


def _is_extreme(domain: Polyhedron, p) -> bool:
    h = domain.hrep
    tight = [a for a, b in h.inequalities if dot(a, p) == b] + [a for a, _ in h.equalities]
    return rank(tight, domain.dim) == domain.dim


@dataclass(frozen=True)
class Analytic1D:
    """Catalog function on the real line.

    ``neg_sqrt``: ``y -> -scale * sqrt(s * (y - shift))`` where ``s = -1`` if
    ``reflect`` else ``1``, and ``+inf`` where the radicand is negative.
    """

    kind: str = NEG_SQRT
    reflect: bool = False
    shift: Fraction = Fraction(0)
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in ANALYTIC_CATALOG:
            raise ValueError(f"unknown analytic kind {self.kind!r}")
        object.__setattr__(self, "shift", as_fraction(self.shift))
        object.__setattr__(self, "scale", as_fraction(self.scale))
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    dim = 1

    @property
    def sigma(self) -> int:
        return -1 if self.reflect else 1

    def radicand(self, y) -> Fraction:
        y0 = y[0] if isinstance(y, (tuple, list)) else y
        return self.sigma * (as_fraction(y0) - self.shift)


ConvexFunction = Union[MaxAffineFunction, Analytic1D]


@dataclass(frozen=True)
class SupHandle:
    """Pointwise supremum kept as a list of members (no closed form)."""

    members: tuple
    dim: int


@dataclass(frozen=True)
class FunctionFamily:
    """Finite indexed family ``{f_t : t in T}``."""

    entries: tuple
    dim: int

    def __init__(self, entries, dim: Optional[int] = None):
        entries = tuple((str(lbl), f) for lbl, f in entries)
        if not entries:
            raise ValueError("a family needs at least one member")
        n = entries[0][1].dim if dim is None else dim
        if any(f.dim != n for _, f in entries):
            raise ValueError("family members have different dimensions")
        if len({lbl for lbl, _ in entries}) != len(entries):
            raise ValueError("duplicate index labels")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "dim", n)

    @property
    def labels(self):
        return [lbl for lbl, _ in self.entries]

    def __getitem__(self, label):
        for lbl, f in self.entries:
            if lbl == label:
                return f
        raise KeyError(label)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def evaluate(f, y):
    """Exact value ``f(y)``: Fraction, Surd, or ``math.inf``."""
    y = vec(y)
    if isinstance(f, MaxAffineFunction):
        if len(y) != f.dim:
            raise ValueError("point has wrong dimension")
        if not member(f.domain, y):
            return inf
        for p, v in f.overrides:
            if p == y:
                return v
        return f.base_value(y)
    if isinstance(f, Analytic1D):
        if len(y) != 1:
            raise ValueError("analytic catalog functions are one-dimensional")
        u = f.radicand(y)
        if u < 0:
            return inf
        r = rational_sqrt(u)
        if r is not None:
            return -f.scale * r
        return Surd.sqrt(u, -f.scale)
    if isinstance(f, SupHandle):
        return value_max(evaluate(g, y) for g in f.members)
    if isinstance(f, FunctionFamily):
        return value_max(evaluate(g, y) for _, g in f.entries)
    raise TypeError(f"not a convex function: {f!r}")


def lsc_envelope(f):
    """Closure ``cl f``; drops the overrides of a max-affine function."""
    if isinstance(f, MaxAffineFunction):
        if not f.overrides:
            return f
        return MaxAffineFunction(f.pieces, f.domain, (), f.dim)
    if isinstance(f, Analytic1D):
        return f
    if isinstance(f, FunctionFamily):
        return FunctionFamily([(lbl, lsc_envelope(g)) for lbl, g in f.entries], f.dim)
    raise UnsupportedFamilyError(f"no lsc envelope for {f!r}")


def domain(f) -> Polyhedron:
    """Effective domain (override points included, they lie in the base domain)."""
    if isinstance(f, MaxAffineFunction):
        return f.domain
    if isinstance(f, Analytic1D):
        if f.reflect:
            return Polyhedron.interval(None, f.shift)
        return Polyhedron.interval(f.shift, None)
    if isinstance(f, SupHandle):
        out = Polyhedron.universe(f.dim)
        for g in f.members:
            out = intersect(out, domain(g))
        return out
    if isinstance(f, FunctionFamily):
        return domain(sup_function(f))
    raise TypeError(f"not a convex function: {f!r}")


def sup_function(fam: FunctionFamily):
    """``f = sup_t f_t`` as a max-affine function when possible, else a SupHandle."""
    members = [f for _, f in fam.entries]
    n = fam.dim
    dom = Polyhedron.universe(n)
    for g in members:
        dom = intersect(dom, domain(g))
    if dom.is_empty:
        raise ImproperFunctionError("the supremum has empty domain")
    if all(isinstance(g, MaxAffineFunction) for g in members):
        pieces = [pc for g in members for pc in g.pieces]
        ovs = {}
        for g in members:
            for p, _ in g.overrides:
                if member(dom, p):
                    ovs[p] = evaluate(FunctionFamily(fam.entries, n), p)
        return MaxAffineFunction(pieces, dom, sorted(ovs.items()), n)
    verts = dom.vertices
    if len(verts) == 1 and not dom.rays:
        v = evaluate(SupHandle(tuple(members), n), verts[0])
        if isinstance(v, Fraction):
            return MaxAffineFunction([(tuple(Fraction(0) for _ in range(n)), v)], dom, (), n)
    return SupHandle(tuple(members), n)


def restrict(f, P: Polyhedron):
    """``f + I_P``."""
    if isinstance(f, MaxAffineFunction):
        dom = intersect(f.domain, P)
        if dom.is_empty:
            raise ImproperFunctionError("restriction has empty domain")
        ovs = [(p, v) for p, v in f.overrides if member(dom, p)]
        return MaxAffineFunction(f.pieces, dom, ovs, f.dim)
    if isinstance(f, Analytic1D):
        dom = intersect(domain(f), P)
        if dom.is_empty:
            raise ImproperFunctionError("restriction has empty domain")
        if len(dom.vertices) == 1 and not dom.rays:
            v = evaluate(f, dom.vertices[0])
            if isinstance(v, Fraction):
                return MaxAffineFunction([((Fraction(0),), v)], dom, (), 1)
        from .polyrat import contains_set

        if contains_set(P, domain(f)):
            return f
        raise UnsupportedFamilyError("restriction of an analytic function to a proper subinterval")
    raise UnsupportedFamilyError(f"cannot restrict {f!r}")


def active_set(fam: FunctionFamily, x, eps, use_cl: bool = False) -> set:
    """``T_eps(x) = {t : f_t(x) >= f(x) - eps}``; with ``use_cl`` compare ``cl f_t``.

    When ``f(x) = +inf`` the set is ``{t : f_t(x) = +inf}`` (resp. ``cl f_t``).
    """
    x = vec(x)
    eps = as_fraction(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    fx = evaluate(fam, x)
    out = set()
    for lbl, g in fam.entries:
        gx = evaluate(lsc_envelope(g) if use_cl else g, x)
        if is_inf(fx):
            if is_inf(gx):
                out.add(lbl)
        elif not is_inf(gx) and gx >= fx - eps:
            out.add(lbl)
    return out


def interior_contains(P: Polyhedron, x) -> bool:
    if P.is_empty:
        return False
    h = P.hrep
    if h.equalities:
        return False
    return all(dot(a, x) < b for a, b in h.inequalities)


def has_interior(P: Polyhedron) -> bool:
    if P.is_empty:
        return False
    v = P.vrep
    base = v.vertices[0]
    dirs = [sub(p, base) for p in v.vertices[1:]] + list(v.rays)
    return rank(dirs, P.dim) == P.dim


def continuous_at(fam_or_f, x) -> bool:
    """A proper convex function on R^n is continuous exactly on ``int dom f``."""
    return interior_contains(domain(fam_or_f), vec(x))


def continuous_somewhere(fam_or_f) -> bool:
    return has_interior(domain(fam_or_f))


def is_lsc(f) -> bool:
    if isinstance(f, FunctionFamily):
        return all(is_lsc(g) for _, g in f.entries)
    if isinstance(f, MaxAffineFunction):
        return not f.overrides
    return True
