"""Small exact linear-algebra helpers over the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vec = tuple  # tuple[Fraction, ...]


def as_fraction(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def vec(values: Iterable) -> Vec:
    return tuple(as_fraction(v) for v in values)


def zero(n: int) -> Vec:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vec:
    return tuple(c * a for a in u)


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def norm_inf(u: Sequence) -> Fraction:
    return max((abs(a) for a in u), default=Fraction(0))


def norm_1(u: Sequence) -> Fraction:
    return sum((abs(a) for a in u), Fraction(0))


def primitive_int(values: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for a in values:
        g = gcd(g, a)
    if g > 1:
        return tuple(a // g for a in values)
    return tuple(values)


def to_int_row(values: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rescaling of a rational row to a primitive integer row."""
    den = lcm(*(Fraction(v).denominator for v in values)) if values else 1
    return primitive_int([int(Fraction(v) * den) for v in values])


def primitive_direction(u: Sequence[Fraction]) -> Vec:
    """Canonical positive multiple of a nonzero direction (primitive integers)."""
    return tuple(Fraction(a) for a in to_int_row(u))


def rref(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [a / p for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vec]:
    """Basis of {v : row . v = 0 for every row}, with primitive integer entries."""
    if not rows:
        return [unit(ncols, i) for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(primitive_direction(v))
    return basis


def solve_unique(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], ncols: int):
    """Solve a square-or-overdetermined consistent system with a unique solution.

    Returns None when the system is inconsistent or underdetermined.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots or len(pivots) < ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return tuple(x)
