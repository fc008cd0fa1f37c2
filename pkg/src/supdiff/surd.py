"""Exact real numbers of the form ``r + c_1 sqrt(u_1) + c_2 sqrt(u_2)``.

Only what the analytic catalog needs: values of ``-s*sqrt(u)`` shifted by
rationals, and exact comparisons between them. Signs are decided by repeated
squaring, never by floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Optional


def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sign(q) -> int:
    return (q > 0) - (q < 0)


def _sign2(c: Fraction, d: Fraction, w: Fraction) -> int:
    """sign(c + d*sqrt(w)), w >= 0."""
    sc, sd = _sign(c), _sign(d) if w != 0 else 0
    if sd == 0:
        return sc
    if sc == 0 or sc == sd:
        return sd
    return sc * _sign(c * c - d * d * w)


def _sign3(p: Fraction, q: Fraction, u: Fraction, r: Fraction, v: Fraction) -> int:
    """sign(p + q*sqrt(u) + r*sqrt(v)), u, v >= 0."""
    sx = _sign2(Fraction(0), q, u) if r == 0 or v == 0 else None
    if sx is None:
        # sign of q sqrt(u) + r sqrt(v)
        sq, sr = _sign(q) if u else 0, _sign(r) if v else 0
        if sq == 0 or sr == 0 or sq == sr:
            sx = sq or sr
        else:
            sx = sq * _sign(q * q * u - r * r * v)
    sp = _sign(p)
    if sx == 0:
        return sp
    if sp == 0 or sp == sx:
        return sx
    # p and X have opposite signs: compare p^2 with X^2
    return sp * _sign2(p * p - q * q * u - r * r * v, -2 * q * r, u * v)


class Surd:
    """``rat + sum(coef * sqrt(rad))`` with at most two distinct radicands."""

    __slots__ = ("rat", "terms")

    def __init__(self, rat=0, terms=()):
        self.rat = Fraction(rat)
        acc: dict = {}
        for c, u in terms:
            c, u = Fraction(c), Fraction(u)
            if u < 0:
                raise ValueError("negative radicand")
            if c == 0 or u == 0:
                continue
            r = rational_sqrt(u)
            if r is not None:
                self.rat += c * r
                continue
            acc[u] = acc.get(u, Fraction(0)) + c
        self.terms = tuple(sorted((c, u) for u, c in acc.items() if c != 0))
        if len(self.terms) > 2:
            raise ValueError("at most two radicands are supported")

    @classmethod
    def sqrt(cls, u, coef=1) -> "Surd":
        return cls(0, [(coef, u)])

    def is_rational(self) -> bool:
        return not self.terms

    def as_fraction(self) -> Fraction:
        if self.terms:
            raise ValueError(f"{self} is irrational")
        return self.rat

    def __add__(self, other):
        if isinstance(other, Surd):
            return Surd(self.rat + other.rat, self.terms + other.terms)
        return Surd(self.rat + Fraction(other), self.terms)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.rat, [(-c, u) for c, u in self.terms])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Surd) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        k = Fraction(k)
        return Surd(self.rat * k, [(c * k, u) for c, u in self.terms])

    __rmul__ = __mul__

    def sign(self) -> int:
        t = self.terms
        if not t:
            return _sign(self.rat)
        if len(t) == 1:
            return _sign2(self.rat, t[0][0], t[0][1])
        return _sign3(self.rat, t[0][0], t[0][1], t[1][0], t[1][1])

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (Surd, Fraction, int)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.rat, self.terms))

    def __float__(self):
        return float(self.rat) + sum(float(c) * float(u) ** 0.5 for c, u in self.terms)

    def __repr__(self):
        return f"Surd({self})"

    def __str__(self):
        parts = [str(self.rat)] if self.rat or not self.terms else []
        for c, u in self.terms:
            parts.append(f"{c}*sqrt({u})")
        return " + ".join(parts)
