"""Seeded random max-affine instances."""

from __future__ import annotations

import enum
import random
from fractions import Fraction

from ..convfun import FunctionFamily, MaxAffineFunction
from ..formulas import Flags
from ..polyrat import Polyhedron
from .instances import Instance


class GenKind(enum.Enum):
    FULL_DOMAIN = "FULL_DOMAIN"
    WITH_INDICATOR = "WITH_INDICATOR"

    @classmethod
    def parse(cls, v) -> "GenKind":
        return v if isinstance(v, cls) else cls[str(v).upper()]


def gen_random_instance(n: int, k: int, seed: int, kind=GenKind.FULL_DOMAIN) -> Instance:
    """Family of ``k`` affine functions at an integer point ``x``.

    Values at ``x`` are ``f(x) - v_t`` with ``v_t`` in {0, 1, 2} and at least one
    zero, so every inactive index sits at least 1 below the supremum.
    ``WITH_INDICATOR`` adds one more member carrying an integer box domain;
    ``x`` lies on the box boundary and the member is inactive at ``x``.
    Coefficients stay within 8 in absolute value.
    """
    kind = GenKind.parse(kind)
    if not 1 <= n <= 3:
        raise ValueError("n must be in 1..3")
    if not 2 <= k <= 5:
        raise ValueError("k must be in 2..5")
    rng = random.Random(f"{seed}:{n}:{k}:{kind.value}")
    x = tuple(Fraction(rng.randint(-1, 1)) for _ in range(n))
    entries = []
    for t in range(k):
        a = tuple(Fraction(rng.randint(-2, 2)) for _ in range(n))
        v = 0 if t == 0 else -rng.randint(0, 2)
        b = v - sum(ai * xi for ai, xi in zip(a, x))
        entries.append((f"f{t + 1}", MaxAffineFunction([(a, b)], None, (), n)))
    if kind is GenKind.WITH_INDICATOR:
        lo, hi = [], []
        side = rng.randrange(n)
        for i in range(n):
            l = x[i] - rng.randint(0, 2)
            h = x[i] + rng.randint(0, 2)
            if i == side:
                if rng.random() < 0.5:
                    l = x[i]
                else:
                    h = x[i]
            if h <= l:
                h = l + 1 if l == x[i] else h
                l = h - 1 if h == x[i] else l
            lo.append(l)
            hi.append(h)
        a = tuple(Fraction(rng.randint(-2, 2)) for _ in range(n))
        b = -rng.randint(1, 2) - sum(ai * xi for ai, xi in zip(a, x))
        box = Polyhedron.box(lo, hi)
        entries.append(("dom", MaxAffineFunction([(a, b)], box, (), n)))
    fam = FunctionFamily(entries, n)
    name = f"random_n{n}_k{k}_s{seed}_{kind.value.lower()}"
    return Instance(name, fam, x, Flags.compute(fam, x))
