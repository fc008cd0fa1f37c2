from __future__ import annotations

import random
from fractions import Fraction

import pytest

from supdiff.convfun import FunctionFamily, MaxAffineFunction
from supdiff.polyrat import Polyhedron


def rand_polytope(rng: random.Random, n: int, npts: int = 5, lo: int = -3, hi: int = 3) -> Polyhedron:
    pts = [tuple(Fraction(rng.randint(lo, hi)) for _ in range(n)) for _ in range(npts)]
    return Polyhedron.from_vrep(n, pts)


def rand_polyhedron(rng: random.Random, n: int) -> Polyhedron:
    """Random nonempty polyhedron, sometimes unbounded."""
    pts = [tuple(Fraction(rng.randint(-3, 3)) for _ in range(n)) for _ in range(rng.randint(1, 4))]
    rays = [tuple(Fraction(rng.randint(-1, 1)) for _ in range(n)) for _ in range(rng.randint(0, 2))]
    rays = [r for r in rays if any(r)]
    return Polyhedron.from_vrep(n, pts, rays)


def rand_max_affine(rng: random.Random, n: int, k: int = 3, boxed: bool = False) -> MaxAffineFunction:
    pieces = [(tuple(Fraction(rng.randint(-2, 2)) for _ in range(n)), Fraction(rng.randint(-2, 2)))
              for _ in range(k)]
    dom = None
    if boxed:
        lo = [rng.randint(-2, 0) for _ in range(n)]
        dom = Polyhedron.box(lo, [l + rng.randint(1, 3) for l in lo])
    return MaxAffineFunction(pieces, dom, (), n)


@pytest.fixture
def abs_fn():
    return MaxAffineFunction([((1,), 0), ((-1,), 0)])


@pytest.fixture
def abs_fam():
    return FunctionFamily([("plus", MaxAffineFunction([((1,), 0)])),
                           ("minus", MaxAffineFunction([((-1,), 0)]))])


# acceptance criteria report one summary line each
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
