from __future__ import annotations

import itertools
import random
from fractions import Fraction as F
from math import inf

import pytest
from hypothesis import given, settings, strategies as st

from supdiff.polyrat import (
    GeneratorSystem,
    HalfspaceSystem,
    Polyhedron,
    Subspace,
    closed_conv_union,
    contains_set,
    hrep_to_vrep,
    intersect,
    linear_image,
    maximize,
    member,
    minkowski_sum,
    project,
    same_set,
    scale_set,
    support,
    translate,
    vrep_to_hrep,
)
from supdiff.polyrat.fme import MAX_FME_DIM, DimensionCapError, eliminate
from supdiff.polyrat.linalg import nullspace, rank, solve_unique

from conftest import rand_polyhedron, rand_polytope


def _h(dim, ineqs, eqs=()):
    return HalfspaceSystem(dim, tuple((tuple(map(F, a)), F(b)) for a, b in ineqs),
                           tuple((tuple(map(F, a)), F(b)) for a, b in eqs))


def _pts(*ps):
    return {tuple(F(c) for c in p) for p in ps}


# -- conversions ------------------------------------------------------------

def test_interval_vertices():
    v = hrep_to_vrep(_h(1, [((1,), 1), ((-1,), 0)]))
    assert set(v.vertices) == _pts((0,), (1,))
    assert v.rays == ()


def test_halfline_vertex_and_ray():
    v = hrep_to_vrep(_h(1, [((-1,), 0)]))
    assert set(v.vertices) == _pts((0,))
    assert set(v.rays) == _pts((1,))


def test_inf_ball_vertices_match_brute_force():
    h = _h(2, [((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)])
    # brute force: every sign pattern of the four corners
    expected = {(F(a), F(b)) for a, b in itertools.product((-1, 1), repeat=2)}
    assert set(hrep_to_vrep(h).vertices) == expected


def test_empty_system_is_whole_space():
    v = hrep_to_vrep(_h(2, []))
    P = Polyhedron.from_vrep(2, v.vertices, v.rays)
    assert same_set(P, Polyhedron.universe(2))


def test_infeasible_system_is_empty():
    P = Polyhedron.from_hrep(1, [((1,), 0), ((-1,), -1)])
    assert P.is_empty
    assert support(P, (1,)) == -inf


def test_simplex_facets():
    h = vrep_to_hrep(GeneratorSystem(2, _pts((0, 0), (1, 0), (0, 1)), ()))
    assert len(h.inequalities) == 3 and not h.equalities
    P = Polyhedron.from_hrep(2, h.inequalities)
    assert member(P, (F(1, 3), F(1, 3)))
    assert not member(P, (F(2, 3), F(2, 3)))


def test_halfline_facet():
    h = vrep_to_hrep(GeneratorSystem(1, _pts((0,)), _pts((1,))))
    assert h.inequalities == (((F(-1),), F(0)),)


def test_inf_ball_facets_are_dual():
    h = vrep_to_hrep(GeneratorSystem(2, _pts((1, 1), (1, -1), (-1, 1), (-1, -1)), ()))
    rows = {(a, b) for a, b in h.inequalities}
    assert rows == {((F(1), F(0)), F(1)), ((F(-1), F(0)), F(1)),
                    ((F(0), F(1)), F(1)), ((F(0), F(-1)), F(1))}


def test_zero_normal_rejected():
    with pytest.raises(ValueError):
        Polyhedron.from_hrep(1, [((0,), 1)])


def test_redundant_rows_are_dropped():
    P = Polyhedron.from_hrep(1, [((1,), 1), ((2,), 2), ((1,), 3), ((-1,), 0)])
    assert len(P.canonical().hrep.inequalities) == 2


@pytest.mark.parametrize("seed", range(40))
def test_round_trip(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    rows = [(tuple(F(rng.randint(-3, 3)) for _ in range(n)), F(rng.randint(-2, 4))) for _ in range(rng.randint(1, 6))]
    rows = [(a, b) for a, b in rows if any(a)]
    P = Polyhedron.from_hrep(n, rows)
    Q = Polyhedron(n, hrep=vrep_to_hrep(hrep_to_vrep(P.hrep)))
    assert contains_set(P, Q) and contains_set(Q, P)


@pytest.mark.parametrize("seed", range(20))
def test_vertices_against_brute_force(seed):
    # oracle: every n-subset of tight rows with a unique feasible solution
    rng = random.Random(1000 + seed)
    n = 2
    rows = [(tuple(F(rng.randint(-3, 3)) for _ in range(n)), F(rng.randint(0, 4))) for _ in range(5)]
    rows = [(a, b) for a, b in rows if any(a)]
    rows += [((F(1), F(0)), F(5)), ((F(-1), F(0)), F(5)), ((F(0), F(1)), F(5)), ((F(0), F(-1)), F(5))]
    brute = set()
    for sub in itertools.combinations(rows, n):
        sol = solve_unique([list(a) for a, _ in sub], [b for _, b in sub], n)
        if sol is not None and all(sum(x * y for x, y in zip(a, sol)) <= b for a, b in rows):
            brute.add(tuple(sol))
    assert set(Polyhedron.from_hrep(n, rows).vertices) == brute


# -- set algebra -------------------------------------------------------------

def test_intersect_examples():
    assert same_set(intersect(Polyhedron.interval(-1, 1), Polyhedron.interval(0, 2)), Polyhedron.interval(0, 1))
    P = rand_polytope(random.Random(3), 2)
    assert same_set(intersect(P, Polyhedron.universe(2)), P)
    assert intersect(Polyhedron.box([0, 0], [1, 1]), Polyhedron.box([2, 2], [3, 3])).is_empty


def test_minkowski_examples():
    assert same_set(minkowski_sum(Polyhedron.interval(0, 1), Polyhedron.interval(0, 2)), Polyhedron.interval(0, 3))
    assert minkowski_sum(Polyhedron.empty(2), Polyhedron.universe(2)).is_empty
    shifted = minkowski_sum(Polyhedron.point((2,)), Polyhedron.interval(0, None))
    assert same_set(shifted, Polyhedron.interval(2, None))


def test_closed_conv_union_examples():
    assert same_set(closed_conv_union([Polyhedron.interval(-2, -1), Polyhedron.interval(1, 2)]),
                    Polyhedron.interval(-2, 2))
    assert same_set(closed_conv_union([Polyhedron.interval(None, -2), Polyhedron.interval(2, None)]),
                    Polyhedron.universe(1))
    assert closed_conv_union([Polyhedron.empty(1)]).is_empty
    assert closed_conv_union([], 2).is_empty


def test_support_examples():
    assert support(Polyhedron.interval(-1, 1), (1,)) == 1
    assert support(Polyhedron.empty(1), (1,)) == -inf
    assert support(Polyhedron.interval(0, None), (1,)) == inf


def test_maximize_returns_argmax():
    val, arg = maximize(Polyhedron.box([0, 0], [1, 2]), (1, 1))
    assert val == 3 and arg == (1, 2)


def test_member_and_contains_examples():
    I = Polyhedron.interval(-1, 1)
    assert member(I, (0,)) and member(I, (1,)) and not member(I, (2,))
    assert contains_set(Polyhedron.interval(-1, 2), Polyhedron.interval(0, 1))
    assert not contains_set(Polyhedron.interval(0, 1), Polyhedron.universe(1))
    assert contains_set(Polyhedron.interval(0, 1), Polyhedron.empty(1))


def test_projection_examples():
    tri = Polyhedron.from_vrep(2, [(0, 0), (3, 1), (1, 2)])
    assert same_set(project(tri, [0]), Polyhedron.interval(0, 3))
    assert same_set(project(Polyhedron.box([0, -1, 2], [1, 1, 5]), [0, 2]), Polyhedron.box([0, 2], [1, 5]))
    assert project(Polyhedron.empty(3), [1]).is_empty


def test_linear_image_examples():
    P = rand_polytope(random.Random(5), 2)
    assert same_set(linear_image(P, [[1, 0], [0, 1]]), P)
    simplex = Polyhedron.from_vrep(2, [(1, 0), (0, 1)])
    seg = linear_image(simplex, [[2, -1], [0, 3]])  # columns a1 = (2, 0), a2 = (-1, 3)
    assert same_set(seg, Polyhedron.from_vrep(2, [(2, 0), (-1, 3)]))


def test_describe_1d():
    assert Polyhedron.interval(None, -2).describe() == "]-∞, -2]"
    assert Polyhedron.universe(1).describe() == "ℝ"
    assert Polyhedron.empty(1).describe() == "∅"
    assert Polyhedron.point((0,)).describe() == "{0}"


def test_subspace_complement():
    L = Subspace.coordinate(3, [0, 2])
    assert L.contains((1, 0, -4)) and not L.contains((0, 1, 0))
    assert L.orthogonal_complement().contains((0, 5, 0))


def test_linalg_helpers():
    assert rank([[F(1), F(2)], [F(2), F(4)]], 2) == 1
    ns = nullspace([[F(1), F(1), F(0)]], 3)
    assert len(ns) == 2
    assert all(v[0] + v[1] == 0 for v in ns)
    assert solve_unique([[F(2), F(4)], [F(1), F(3)]], [F(2), F(1)], 2) == (F(1), F(0))


# -- Fourier-Motzkin ----------------------------------------------------------

@pytest.mark.parametrize("seed", range(30))
def test_fme_matches_linear_image(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    P = rand_polyhedron(rng, n)
    keep = sorted(rng.sample(range(n), rng.randint(1, n - 1)))
    M = [[F(int(i == k)) for i in range(n)] for k in keep]
    assert same_set(project(P, keep), linear_image(P, M))


def test_fme_dimension_cap():
    with pytest.raises(DimensionCapError):
        eliminate([], [], MAX_FME_DIM + 1, [0])
    assert DimensionCapError("x").code == "DIMENSION_CAP"


# -- properties ----------------------------------------------------------------

small = st.integers(-3, 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.lists(st.tuples(small, small), min_size=1, max_size=3))
def test_minkowski_support_additivity(seed, dirs):
    rng = random.Random(seed)
    P, Q = rand_polyhedron(rng, 2), rand_polyhedron(rng, 2)
    S = minkowski_sum(P, Q)
    for d in dirs:
        sp, sq = support(P, d), support(Q, d)
        expected = inf if inf in (sp, sq) else sp + sq
        assert support(S, d) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.tuples(small, small))
def test_support_member_consistency(seed, y):
    P = rand_polytope(random.Random(seed), 2)
    y = tuple(F(c) for c in y)
    normals = [a for a, _ in P.hrep.inequalities] + [a for a, _ in P.hrep.equalities]
    normals += [tuple(-c for c in a) for a, _ in P.hrep.equalities]
    by_support = all(sum(a * b for a, b in zip(d, y)) <= support(P, d) for d in normals)
    assert member(P, y) == by_support


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.fractions(-3, 3, max_denominator=4))
def test_scale_and_translate(seed, c):
    P = rand_polytope(random.Random(seed), 2)
    Q = translate(scale_set(P, c), (1, -1))
    for v in P.vertices:
        assert member(Q, (c * v[0] + 1, c * v[1] - 1))
