"""Exact rational polyhedra with synchronized H- and V-representations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Iterable, Optional, Sequence

from . import dd, fme
from .linalg import (
    Vec,
    as_fraction,
    dot,
    is_zero,
    nullspace,
    primitive_direction,
    rank,
    to_int_row,
    unit,
    vec,
)


@dataclass(frozen=True)
class HalfspaceSystem:
    """``<normal, y> <= offset`` rows plus ``<normal, y> = offset`` rows."""

    dim: int
    inequalities: tuple = ()
    equalities: tuple = ()

    @property
    def infeasible_marker(self) -> bool:
        return any(is_zero(a) and b < 0 for a, b in self.inequalities)


@dataclass(frozen=True)
class GeneratorSystem:
    """``conv(vertices) + cone(rays)``; lines appear as a pair of opposite rays."""

    dim: int
    vertices: tuple = ()
    rays: tuple = ()


def _canon_row(a: Sequence[Fraction], b: Fraction, equality: bool):
    ints = to_int_row(list(a) + [b])
    if equality:
        first = next(x for x in ints if x != 0)
        if first < 0:
            ints = tuple(-x for x in ints)
    return tuple(Fraction(x) for x in ints[:-1]), Fraction(ints[-1])


def _canon_hrep(dim, ineqs, eqs) -> HalfspaceSystem:
    out_i, out_e = set(), set()
    for a, b in eqs:
        if is_zero(a):
            if b != 0:
                return _empty_hrep(dim)
            continue
        out_e.add(_canon_row(a, b, True))
    best: dict = {}
    for a, b in ineqs:
        if is_zero(a):
            if b < 0:
                return _empty_hrep(dim)
            continue
        na, nb = _canon_row(a, b, False)
        if na not in best or nb < best[na]:
            best[na] = nb
    out_i = set(best.items())
    return HalfspaceSystem(dim, tuple(sorted(out_i)), tuple(sorted(out_e)))


def _empty_hrep(dim) -> HalfspaceSystem:
    return HalfspaceSystem(dim, ((tuple(Fraction(0) for _ in range(dim)), Fraction(-1)),), ())


def _canon_vrep(dim, vertices, rays) -> GeneratorSystem:
    vs = sorted(set(tuple(v) for v in vertices))
    rs = sorted({primitive_direction(r) for r in rays if not is_zero(r)})
    return GeneratorSystem(dim, tuple(vs), tuple(rs))


def hrep_to_vrep(h: HalfspaceSystem) -> GeneratorSystem:
    """Vertices and rays of ``{y : A y <= b, E y = e}`` (empty system if infeasible)."""
    n = h.dim
    t_ge_0 = tuple([0] * n + [-1])
    ineq_rows = sorted(to_int_row(list(a) + [-b]) for a, b in h.inequalities)
    eq_rows = [to_int_row(list(a) + [-b]) for a, b in h.equalities]
    lin, rays = dd.cone_generators([t_ge_0] + ineq_rows, eq_rows, n + 1)
    points, dirs = [], []
    for r in rays:
        t = r[n]
        if t > 0:
            points.append(tuple(Fraction(x, t) for x in r[:n]))
        else:
            dirs.append(tuple(Fraction(x) for x in r[:n]))
    if not points:
        return GeneratorSystem(n)
    for l in lin:
        d = tuple(Fraction(x) for x in l[:n])
        dirs.append(d)
        dirs.append(tuple(-x for x in d))
    return _canon_vrep(n, points, dirs)


def vrep_to_hrep(v: GeneratorSystem) -> HalfspaceSystem:
    """Irredundant inequalities and equalities cutting out ``conv(V) + cone(R)``."""
    n = v.dim
    if not v.vertices:
        return _empty_hrep(n)
    rows = [to_int_row(list(p) + [Fraction(1)]) for p in v.vertices]
    rows += [to_int_row(list(r) + [Fraction(0)]) for r in v.rays]
    lin, rays = dd.cone_generators(rows, [], n + 1)
    ineqs, eqs = [], []
    for r in rays:
        a = tuple(Fraction(x) for x in r[:n])
        if is_zero(a):
            continue
        ineqs.append((a, Fraction(-r[n])))
    for l in lin:
        a = tuple(Fraction(x) for x in l[:n])
        if is_zero(a):
            continue
        eqs.append((a, Fraction(-l[n])))
    return _canon_hrep(n, ineqs, eqs)


class Polyhedron:
    """Closed convex polyhedron in Q^n.

    Either representation may be supplied; the other is computed on first use
    and cached. Caches are filled idempotently, so instances can be shared
    between threads. Emptiness is carried as an explicit flag once known.
    """

    __slots__ = ("dim", "_h", "_v", "_empty")

    def __init__(self, dim: int, *, hrep: Optional[HalfspaceSystem] = None,
                 vrep: Optional[GeneratorSystem] = None, empty: Optional[bool] = None):
        if hrep is None and vrep is None:
            raise ValueError("a polyhedron needs at least one representation")
        self.dim = dim
        self._h = hrep
        self._v = vrep
        if empty is None and vrep is not None:
            empty = not vrep.vertices
        if empty is None and hrep is not None and hrep.infeasible_marker:
            empty = True
        self._empty = empty

    # construction -------------------------------------------------------
    @classmethod
    def from_hrep(cls, dim: int, inequalities: Iterable = (), equalities: Iterable = ()):
        ineqs = [(vec(a), as_fraction(b)) for a, b in inequalities]
        eqs = [(vec(a), as_fraction(b)) for a, b in equalities]
        for a, _ in ineqs + eqs:
            if len(a) != dim:
                raise ValueError(f"normal {a} has wrong dimension (expected {dim})")
            if is_zero(a):
                raise ValueError("zero normal vector in halfspace system")
        return cls(dim, hrep=_canon_hrep(dim, ineqs, eqs))

    @classmethod
    def from_vrep(cls, dim: int, vertices: Iterable = (), rays: Iterable = ()):
        vs = [vec(p) for p in vertices]
        rs = [vec(r) for r in rays]
        for p in vs + rs:
            if len(p) != dim:
                raise ValueError(f"generator {p} has wrong dimension (expected {dim})")
        if rs and not vs:
            raise ValueError("rays without a vertex do not describe a polyhedron")
        return cls(dim, vrep=_canon_vrep(dim, vs, rs))

    @classmethod
    def empty(cls, dim: int) -> "Polyhedron":
        return cls(dim, hrep=_empty_hrep(dim), vrep=GeneratorSystem(dim), empty=True)

    @classmethod
    def universe(cls, dim: int) -> "Polyhedron":
        rays = [unit(dim, i) for i in range(dim)] + [tuple(-x for x in unit(dim, i)) for i in range(dim)]
        return cls(dim, hrep=HalfspaceSystem(dim), vrep=_canon_vrep(dim, [(Fraction(0),) * dim], rays),
                   empty=False)

    @classmethod
    def point(cls, p: Sequence) -> "Polyhedron":
        p = vec(p)
        return cls.from_vrep(len(p), [p])

    @classmethod
    def box(cls, lower: Sequence, upper: Sequence) -> "Polyhedron":
        """Axis box; ``None`` bounds are omitted."""
        n = len(lower)
        rows = []
        for i, (lo, hi) in enumerate(zip(lower, upper)):
            e = unit(n, i)
            if lo is not None:
                rows.append((tuple(-x for x in e), -as_fraction(lo)))
            if hi is not None:
                rows.append((e, as_fraction(hi)))
        return cls.from_hrep(n, rows)

    @classmethod
    def interval(cls, lo=None, hi=None) -> "Polyhedron":
        return cls.box([lo], [hi])

    # representations ----------------------------------------------------
    @property
    def hrep(self) -> HalfspaceSystem:
        if self._h is None:
            self._h = vrep_to_hrep(self._v)
        return self._h

    @property
    def vrep(self) -> GeneratorSystem:
        if self._v is None:
            self._v = hrep_to_vrep(self._h)
            self._empty = not self._v.vertices
        return self._v

    @property
    def is_empty(self) -> bool:
        if self._empty is None:
            self._empty = not self.vrep.vertices
        return self._empty

    @property
    def vertices(self):
        return self.vrep.vertices

    @property
    def rays(self):
        return self.vrep.rays

    @property
    def is_bounded(self) -> bool:
        return not self.vrep.rays

    def canonical(self) -> "Polyhedron":
        """Same set with both representations minimal."""
        if self.is_empty:
            return Polyhedron.empty(self.dim)
        h = vrep_to_hrep(self.vrep)
        return Polyhedron(self.dim, hrep=h, vrep=hrep_to_vrep(h), empty=False)

    def __repr__(self) -> str:
        if self._v is not None or self._h is None:
            v = self.vrep
            if not v.vertices:
                return f"Polyhedron(dim={self.dim}, empty)"
            return f"Polyhedron(dim={self.dim}, vertices={_fmt(v.vertices)}, rays={_fmt(v.rays)})"
        return f"Polyhedron(dim={self.dim}, ineqs={len(self._h.inequalities)}, eqs={len(self._h.equalities)})"

    def describe(self) -> str:
        """Human-readable exact description (intervals in dimension one)."""
        if self.is_empty:
            return "∅"
        if self.dim == 1:
            lo = support(self, (Fraction(-1),))
            hi = support(self, (Fraction(1),))
            lo_s = "-∞" if lo == inf else str(-lo)
            hi_s = "+∞" if hi == inf else str(hi)
            if lo == inf and hi == inf:
                return "ℝ"
            if lo_s == hi_s:
                return "{" + lo_s + "}"
            return ("]" if lo == inf else "[") + f"{lo_s}, {hi_s}" + ("[" if hi == inf else "]")
        v = self.vrep
        if not v.rays:
            return f"conv{_fmt(v.vertices)}"
        return f"conv{_fmt(v.vertices)} + cone{_fmt(v.rays)}"


def _fmt(points) -> str:
    return "[" + ", ".join("(" + ", ".join(str(x) for x in p) + ")" for p in points) + "]"


def _check_dim(p: Polyhedron, q: Polyhedron):
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")


def intersect(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    _check_dim(p, q)
    if p._empty or q._empty:
        return Polyhedron.empty(p.dim)
    hp, hq = p.hrep, q.hrep
    h = _canon_hrep(p.dim, list(hp.inequalities) + list(hq.inequalities),
                    list(hp.equalities) + list(hq.equalities))
    return Polyhedron(p.dim, hrep=h)


def intersect_all(parts: Sequence[Polyhedron], dim: int) -> Polyhedron:
    out = Polyhedron.universe(dim)
    for p in parts:
        out = intersect(out, p)
    return out


def minkowski_sum(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    """``P + Q``, with ``P + ∅ = ∅``."""
    _check_dim(p, q)
    if p.is_empty or q.is_empty:
        return Polyhedron.empty(p.dim)
    vp, vq = p.vrep, q.vrep
    verts = [tuple(a + b for a, b in zip(u, w)) for u in vp.vertices for w in vq.vertices]
    return Polyhedron(p.dim, vrep=_canon_vrep(p.dim, verts, list(vp.rays) + list(vq.rays)), empty=False)


def closed_conv_union(parts: Sequence[Polyhedron], dim: Optional[int] = None) -> Polyhedron:
    """Closed convex hull of a union of polyhedra (empty parts are ignored)."""
    if dim is None:
        if not parts:
            raise ValueError("dimension required for an empty list of parts")
        dim = parts[0].dim
    verts, rays = [], []
    for p in parts:
        if p.dim != dim:
            raise ValueError("dimension mismatch in closed_conv_union")
        if p.is_empty:
            continue
        verts.extend(p.vrep.vertices)
        rays.extend(p.vrep.rays)
    if not verts:
        return Polyhedron.empty(dim)
    return Polyhedron(dim, vrep=_canon_vrep(dim, verts, rays), empty=False)


def support(p: Polyhedron, d: Sequence):
    """``sup{<d, a> : a in P}`` as a Fraction, ``math.inf`` or ``-math.inf``."""
    if len(d) != p.dim:
        raise ValueError("direction has wrong dimension")
    if p.is_empty:
        return -inf
    v = p.vrep
    if any(dot(d, r) > 0 for r in v.rays):
        return inf
    return max(dot(d, x) for x in v.vertices)


def maximize(p: Polyhedron, c: Sequence):
    """Exact LP ``max <c, y>`` over ``P``: returns ``(value, argmax)``.

    ``argmax`` is the first optimal vertex in canonical order, or ``None`` when
    the problem is infeasible or unbounded.
    """
    if p.is_empty:
        return -inf, None
    v = p.vrep
    if any(dot(c, r) > 0 for r in v.rays):
        return inf, None
    best, arg = None, None
    for x in v.vertices:
        val = dot(c, x)
        if best is None or val > best:
            best, arg = val, x
    return best, arg


def member(p: Polyhedron, y: Sequence) -> bool:
    if len(y) != p.dim:
        raise ValueError("point has wrong dimension")
    if p._empty:
        return False
    h = p.hrep
    if h.infeasible_marker:
        return False
    return all(dot(a, y) <= b for a, b in h.inequalities) and all(dot(a, y) == b for a, b in h.equalities)


def in_recession_cone(p: Polyhedron, r: Sequence) -> bool:
    h = p.hrep
    return all(dot(a, r) <= 0 for a, _ in h.inequalities) and all(dot(a, r) == 0 for a, _ in h.equalities)


def contains_set(outer: Polyhedron, inner: Polyhedron) -> bool:
    """``inner ⊆ outer``."""
    _check_dim(outer, inner)
    if inner.is_empty:
        return True
    if outer.is_empty:
        return False
    v = inner.vrep
    return all(member(outer, x) for x in v.vertices) and all(in_recession_cone(outer, r) for r in v.rays)


def same_set(p: Polyhedron, q: Polyhedron) -> bool:
    return contains_set(p, q) and contains_set(q, p)


def linear_image(p: Polyhedron, m: Sequence[Sequence]) -> Polyhedron:
    """Image ``{M y : y in P}`` for a rational matrix given as a list of rows."""
    rows = [vec(r) for r in m]
    if any(len(r) != p.dim for r in rows):
        raise ValueError("matrix column count must equal the polyhedron dimension")
    out = len(rows)
    if p.is_empty:
        return Polyhedron.empty(out)
    v = p.vrep
    verts = [tuple(dot(r, x) for r in rows) for x in v.vertices]
    rays = [tuple(dot(r, d) for r in rows) for d in v.rays]
    return Polyhedron(out, vrep=_canon_vrep(out, verts, rays), empty=False)


def scale_set(p: Polyhedron, c) -> Polyhedron:
    c = as_fraction(c)
    n = p.dim
    return linear_image(p, [[c if i == j else 0 for j in range(n)] for i in range(n)])


def translate(p: Polyhedron, t: Sequence) -> Polyhedron:
    return minkowski_sum(p, Polyhedron.point(t))


def project(p: Polyhedron, keep: Sequence[int]) -> Polyhedron:
    """Orthogonal projection onto the coordinates in ``keep`` (Fourier-Motzkin)."""
    keep = list(keep)
    if not keep or len(set(keep)) != len(keep) or any(not 0 <= k < p.dim for k in keep):
        raise ValueError("keep must be a nonempty set of distinct coordinate indices")
    if p._empty:
        return Polyhedron.empty(len(keep))
    order = sorted(keep)
    h = p.hrep
    ineqs = [tuple(a) + (b,) for a, b in h.inequalities]
    eqs = [tuple(a) + (b,) for a, b in h.equalities]
    drop = [k for k in range(p.dim) if k not in keep]
    out_i, out_e = fme.eliminate(ineqs, eqs, p.dim, drop)
    perm = [order.index(k) for k in keep]
    hi = [(tuple(r[i] for i in perm), r[-1]) for r in out_i]
    he = [(tuple(r[i] for i in perm), r[-1]) for r in out_e]
    return Polyhedron(len(keep), hrep=_canon_hrep(len(keep), hi, he))


class Subspace:
    """Linear subspace of Q^n spanned by independent rational vectors."""

    def __init__(self, dim: int, basis: Iterable = ()):
        self.dim = dim
        self.basis = tuple(vec(b) for b in basis)
        if any(len(b) != dim for b in self.basis):
            raise ValueError("basis vector has wrong dimension")
        if rank(self.basis, dim) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")

    @classmethod
    def coordinate(cls, dim: int, axes: Iterable[int]) -> "Subspace":
        return cls(dim, [unit(dim, i) for i in sorted(set(axes))])

    def orthogonal_complement(self) -> "Subspace":
        return Subspace(self.dim, nullspace(self.basis, self.dim))

    def contains(self, y: Sequence) -> bool:
        return rank(list(self.basis) + [vec(y)], self.dim) == len(self.basis)

    def as_polyhedron(self) -> Polyhedron:
        """The subspace as a polyhedron (equalities from the complement)."""
        comp = nullspace(self.basis, self.dim) if self.basis else [unit(self.dim, i) for i in range(self.dim)]
        eqs = [(c, Fraction(0)) for c in comp]
        rays = list(self.basis) + [tuple(-x for x in b) for b in self.basis]
        return Polyhedron(self.dim, hrep=_canon_hrep(self.dim, [], eqs),
                          vrep=_canon_vrep(self.dim, [(Fraction(0),) * self.dim], rays), empty=False)
