from __future__ import annotations

import itertools
import random
from fractions import Fraction as F
from math import inf

import pytest

from supdiff.convfun import Analytic1D, FunctionFamily, MaxAffineFunction, evaluate, sup_function
from supdiff.errors import NoSqrtError, NotEpsSubgradientError
from supdiff.polyrat import Polyhedron, contains_set, member, same_set, support
from supdiff.subdiff import (
    EnlargementQuery,
    Variant,
    br_witness,
    conjugate_value,
    enlargement,
    enlargement_member,
    eps_subdifferential,
    normal_cone,
    subdifferential,
)

from conftest import rand_max_affine

Q = F(1, 4)


def _q(f, eps, variant=Variant.BREVE, x=(0,)):
    return EnlargementQuery(f, x, eps, variant)


def brute_eps_member_1d(f: MaxAffineFunction, x, ystar, eps) -> bool:
    """y* is an eps-subgradient of a full-domain 1-D max-affine f at x.

    The gap z -> f(z) - f(x) - y*(z - x) is piecewise linear, so it is enough to
    look at the breakpoints and at the slopes at both ends.
    """
    slopes = [a[0] for a, _ in f.pieces]
    if not min(slopes) <= ystar <= max(slopes):
        return False
    pts = {x}
    for (a1, b1), (a2, b2) in itertools.combinations(f.pieces, 2):
        if a1[0] != a2[0]:
            pts.add((b2 - b1) / (a1[0] - a2[0]))
    fx = evaluate(f, (x,))
    return all(evaluate(f, (z,)) - fx - ystar * (z - x) >= -eps for z in pts)


# -- exact subdifferentials ---------------------------------------------------

def test_subdifferential_examples(abs_fn):
    assert same_set(subdifferential(abs_fn, (0,)), Polyhedron.interval(-1, 1))
    assert subdifferential(Analytic1D(), (0,)).is_empty
    ind0 = MaxAffineFunction([((0,), 0)], Polyhedron.point((0,)))
    assert same_set(subdifferential(ind0, (0,)), Polyhedron.universe(1))


def test_subdifferential_analytic_interior():
    # d/dy of -sqrt(y) at 1/4 is -1
    assert same_set(subdifferential(Analytic1D(), (Q,)), Polyhedron.point((-1,)))


def test_subdifferential_at_override_is_empty():
    f = MaxAffineFunction([((1,), 0)], Polyhedron.interval(0, None), [((0,), 1)])
    assert subdifferential(f, (0,)).is_empty


@pytest.mark.parametrize("eps", [F(1, 16), Q, F(1, 2), F(1)])
def test_eps_subdifferential_hinge(eps):
    f = MaxAffineFunction([((0,), 0), ((1,), -1)])
    assert same_set(eps_subdifferential(f, (0,), eps), Polyhedron.interval(0, eps))


@pytest.mark.parametrize("eps", [F(1, 16), Q, F(3)])
def test_eps_subdifferential_affine_and_abs(eps, abs_fn):
    aff = MaxAffineFunction([((2, -1), 5)])
    assert same_set(eps_subdifferential(aff, (1, 1), eps), Polyhedron.point((2, -1)))
    assert same_set(eps_subdifferential(abs_fn, (0,), eps), Polyhedron.interval(-1, 1))


def test_eps_subdifferential_analytic_endpoint():
    assert same_set(eps_subdifferential(Analytic1D(), (0,), Q), Polyhedron.interval(None, -1))
    assert same_set(eps_subdifferential(Analytic1D(reflect=True), (0,), Q), Polyhedron.interval(1, None))


@pytest.mark.parametrize("seed", range(25))
def test_eps_subdifferential_matches_brute_force_1d(seed):
    rng = random.Random(seed)
    f = rand_max_affine(rng, 1, rng.randint(2, 4))
    x = F(rng.randint(-2, 2))
    eps = F(rng.randint(1, 8), 4)
    P = eps_subdifferential(f, (x,), eps)
    for k in range(-20, 21):
        y = F(k, 8)
        assert member(P, (y,)) == brute_eps_member_1d(f, x, y, eps)


def test_normal_cone_examples():
    assert same_set(normal_cone(Polyhedron.point((0,)), (0,)), Polyhedron.universe(1))
    assert same_set(normal_cone(Polyhedron.interval(0, None), (0,)), Polyhedron.interval(None, 0))
    assert normal_cone(Polyhedron.interval(0, 1), (2,)).is_empty


def test_eps_normal_set():
    # {y* : <y*, a - x> <= eps for a in [0, 1]} at x = 0
    assert same_set(normal_cone(Polyhedron.interval(0, 1), (0,), Q), Polyhedron.interval(None, Q))


def test_conjugate_value():
    f = MaxAffineFunction([((0,), 0), ((1,), -1)])
    assert conjugate_value(f, (F(1, 2),))[0] == F(1, 2)
    assert conjugate_value(f, (2,))[0] == inf


# -- enlargements ---------------------------------------------------------------

def test_sqrt_enlargement_endpoints():
    for eps in (Q, F(1, 16)):
        s = enlargement(_q(Analytic1D(), eps))
        assert s.exact
        assert same_set(s.outer, Polyhedron.interval(None, -1 / (2 * eps)))
        assert s.outer.vertices == ((-1 / (2 * eps),),) and s.outer.rays == ((F(-1),),)
        r = enlargement(_q(Analytic1D(reflect=True), eps))
        assert same_set(r.outer, Polyhedron.interval(1 / (2 * eps), None))


def test_sqrt_enlargement_other_variants():
    assert same_set(enlargement(_q(Analytic1D(), F(1, 16), Variant.SMALLFROWN)).outer,
                    Polyhedron.interval(None, -8))
    # hat at eps = 4: breve endpoint -1/4, the 2eps-subdifferential cuts at -1/32
    assert same_set(enlargement(_q(Analytic1D(), F(4), Variant.HAT)).outer, Polyhedron.interval(None, F(-1, 4)))


def test_non_lsc_enlargement_is_empty():
    f1 = MaxAffineFunction([((1,), 0)], Polyhedron.interval(0, None), [((0,), 1)])
    for eps in (F(1, 8), F(1, 4), F(3, 8)):
        s = enlargement(_q(f1, eps))
        assert s.inner.is_empty and s.outer.is_empty


def test_abs_enlargement_exact(abs_fn):
    s = enlargement(_q(abs_fn, F(1, 8)))
    assert s.exact and same_set(s.inner, Polyhedron.interval(-1, 1))


def test_enlargement_member_examples():
    ok, y = enlargement_member(_q(Analytic1D(), Q), (-2,))
    assert ok and y == (F(1, 16),)
    assert enlargement_member(_q(Analytic1D(), Q), (-1,)) == (False, None)
    aff = MaxAffineFunction([((3,), 1)])
    ok, y = enlargement_member(_q(aff, Q, x=(2,)), (3,))
    assert ok and y is not None
    assert not enlargement_member(_q(aff, Q, x=(2,)), (F(5, 2),))[0]


@pytest.mark.parametrize("variant", list(Variant))
@pytest.mark.parametrize("seed", range(12))
def test_member_oracle_agrees_with_sandwich(seed, variant):
    rng = random.Random(seed)
    f = rand_max_affine(rng, 1, rng.randint(2, 4), boxed=rng.random() < 0.4)
    x = (F(rng.randint(-1, 1)),)
    if evaluate(f, x) == inf:
        x = f.domain.vertices[0]
    eps = F(1, rng.choice([2, 4, 8]))
    q = _q(f, eps, variant, x)
    s = enlargement(q)
    assert contains_set(s.outer, s.inner)
    # the enlargement need not be convex: compare with the unions, not the hulls
    for k in range(-24, 25):
        y = (F(k, 8),)
        got = enlargement_member(q, y)[0]
        in_inner = any(member(P, y) for P in s.inner_parts)
        if in_inner:
            assert got
        if got:
            assert any(member(P, y) for P in s.outer_parts)
        if variant is not Variant.SMALLFROWN:
            assert got == in_inner


# -- Brondsted-Rockafellar --------------------------------------------------------

def test_br_hinge_example():
    f = MaxAffineFunction([((0,), 0), ((1,), -1)])
    w = br_witness(f, (0,), (F(1, 16),), F(1, 16))
    assert w.ok
    assert w.x_eps == (0,) and w.xstar_eps == (0,)


def test_br_abs_example(abs_fn):
    w = br_witness(abs_fn, (0,), (1,), Q)
    assert w.ok and w.x_eps == (0,) and w.xstar_eps == (1,)


def test_br_affine_identity():
    f = MaxAffineFunction([((1, -2), 3)])
    w = br_witness(f, (1, 1), (1, -2), Q)
    assert w.ok and w.lambda_eps == 0 and w.ystar_eps == (0, 0)


def test_br_errors(abs_fn):
    with pytest.raises(NotEpsSubgradientError):
        br_witness(abs_fn, (0,), (2,), Q)
    with pytest.raises(NoSqrtError):
        br_witness(abs_fn, (0,), (1,), F(1, 2))
