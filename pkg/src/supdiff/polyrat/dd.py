"""Double description method on integer cones.

The cone is ``{z : A z <= 0, E z = 0}``. Rows are processed one at a time,
starting from the whole space (all unit vectors as lineality). Extreme rays
carry a bitmask of the inequality rows they satisfy with equality, and
adjacency is decided by the combinatorial test.
"""

from __future__ import annotations

from typing import Sequence

from .linalg import primitive_int

IntVec = tuple  # tuple[int, ...]


def _dot(h: IntVec, v: IntVec) -> int:
    return sum(a * b for a, b in zip(h, v))


def _comb(a: int, u: IntVec, b: int, v: IntVec) -> IntVec:
    return primitive_int([a * x + b * y for x, y in zip(u, v)])


def cone_generators(
    ineqs: Sequence[IntVec], eqs: Sequence[IntVec], d: int
) -> tuple[list[IntVec], list[IntVec]]:
    """Return ``(lineality_basis, extreme_rays)`` of the cone."""
    lin: list[IntVec] = [tuple(1 if i == j else 0 for i in range(d)) for j in range(d)]
    rays: list[tuple[IntVec, int]] = []
    rows = [(tuple(h), True) for h in eqs] + [(tuple(h), False) for h in ineqs]

    for c, (h, is_eq) in enumerate(rows):
        if not any(h):
            continue
        bit = 1 << c
        prior = bit - 1

        piv = next((i for i, l in enumerate(lin) if _dot(h, l) != 0), None)
        if piv is not None:
            l0 = lin[piv]
            h0 = _dot(h, l0)
            if h0 > 0:
                l0 = tuple(-a for a in l0)
                h0 = -h0
            new_lin = []
            for i, l in enumerate(lin):
                if i == piv:
                    continue
                hl = _dot(h, l)
                new_lin.append(l if hl == 0 else _comb(-h0, l, hl, l0))
            new_rays = []
            for r, z in rays:
                hr = _dot(h, r)
                new_rays.append((r if hr == 0 else _comb(-h0, r, hr, l0), z | bit))
            if not is_eq:
                new_rays.append((l0, prior))
            lin, rays = new_lin, new_rays
            continue

        pos, zer, neg = [], [], []
        for r, z in rays:
            hr = _dot(h, r)
            if hr > 0:
                pos.append((r, z, hr))
            elif hr < 0:
                neg.append((r, z, hr))
            else:
                zer.append((r, z | bit))

        created = []
        if pos and neg:
            masks = [z for _, z in rays]
            for rp, zp, hp in pos:
                for rn, zn, hn in neg:
                    common = zp & zn
                    hits = 0
                    for z in masks:
                        if z & common == common:
                            hits += 1
                            if hits > 2:
                                break
                    if hits > 2:
                        continue
                    created.append((_comb(hp, rn, -hn, rp), common | bit))

        if is_eq:
            rays = zer + created
        else:
            rays = [(r, z) for r, z, _ in neg] + zer + created

    return lin, [r for r, _ in rays]
