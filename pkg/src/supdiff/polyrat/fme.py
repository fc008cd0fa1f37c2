"""Fourier-Motzkin projection with Chernikov pruning."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import to_int_row

MAX_FME_DIM = 6


class DimensionCapError(ValueError):
    """Raised when an elimination is requested above the supported dimension."""


def _normalize(row):
    # row = (coeffs..., rhs) meaning <coeffs, y> <= rhs
    return tuple(Fraction(v) for v in to_int_row(row))


def eliminate(ineqs, eqs, dim: int, drop: Sequence[int]):
    """Eliminate the coordinates in ``drop`` from ``A y <= b, E y = e``.

    Rows are tuples ``(a_0, ..., a_{n-1}, b)``. Returns the inequality and
    equality rows over the remaining coordinates (in their original order).
    """
    if dim > MAX_FME_DIM:
        raise DimensionCapError(f"Fourier-Motzkin is limited to dimension {MAX_FME_DIM}, got {dim}")
    drop = sorted(set(drop))
    ineqs = [tuple(map(Fraction, r)) for r in ineqs]
    eqs = [tuple(map(Fraction, r)) for r in eqs]

    # Equalities first: each one with a nonzero coefficient on a dropped
    # coordinate removes that coordinate by substitution.
    remaining = list(drop)
    for j in list(remaining):
        piv = next((e for e in eqs if e[j] != 0), None)
        if piv is None:
            continue
        eqs.remove(piv)
        c = piv[j]

        def sub(row):
            if row[j] == 0:
                return row
            f = row[j] / c
            return tuple(a - f * b for a, b in zip(row, piv))

        eqs = [sub(e) for e in eqs]
        ineqs = [sub(r) for r in ineqs]
        remaining.remove(j)

    # Inequalities carry the set of original rows they derive from.
    rows = {}
    for i, r in enumerate(ineqs):
        key = _normalize(r) if any(r[:-1]) else r
        rows.setdefault(key, frozenset([i]))
    for step, j in enumerate(remaining, start=1):
        pos, neg, out = [], [], {}
        for r, hist in rows.items():
            if r[j] > 0:
                pos.append((r, hist))
            elif r[j] < 0:
                neg.append((r, hist))
            else:
                out.setdefault(r, hist)
        for rp, hp in pos:
            for rn, hn in neg:
                hist = hp | hn
                if len(hist) > step + 1:
                    continue
                new = tuple(-rn[j] * a + rp[j] * b for a, b in zip(rp, rn))
                if any(new[:-1]):
                    new = _normalize(new)
                if new not in out or len(hist) < len(out[new]):
                    out[new] = hist
        rows = out

    keep = [k for k in range(dim) if k not in drop]
    out_i, out_e = [], []
    for r in rows:
        a = tuple(r[k] for k in keep)
        if not any(a):
            if r[-1] < 0:
                return [tuple([Fraction(0)] * len(keep) + [Fraction(-1)])], []
            continue
        out_i.append(a + (r[-1],))
    for e in eqs:
        a = tuple(e[k] for k in keep)
        if not any(a):
            if e[-1] != 0:
                return [tuple([Fraction(0)] * len(keep) + [Fraction(-1)])], []
            continue
        out_e.append(a + (e[-1],))
    return out_i, out_e
