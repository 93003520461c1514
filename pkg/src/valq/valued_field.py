"""Exact rational arithmetic with p-adic valuations.

Field elements are plain :class:`fractions.Fraction` values, which already
carry the invariants we need (reduced, positive denominator).  A
:class:`Place` is a prime p standing for everything it induces: the
valuation ``val``, the local ring {v >= 0}, its maximal ideal {v >= 1} and
the residue field F_p.  Valuations take values in Z extended by a single
top element ``INFINITY`` for v(0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import gmpy2

from .errors import DuplicatePlace, NotIntegral

Rat = Fraction


class _Infinity:
    """v(0): compares above every integer and absorbs addition."""

    __slots__ = ()

    def __lt__(self, other):
        if isinstance(other, (int, _Infinity)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, _Infinity):
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, _Infinity):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, _Infinity)):
            return True
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, _Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __repr__(self):
        return "Infinity"


INFINITY = _Infinity()

ExtInt = Union[int, _Infinity]


@dataclass(frozen=True)
class Place:
    """A prime p, packaging the p-adic valuation on Q."""

    prime: int

    def __post_init__(self):
        if not isinstance(self.prime, int) or isinstance(self.prime, bool):
            raise ValueError("place prime must be an int")
        if self.prime < 2 or not gmpy2.is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")


@dataclass(frozen=True)
class MultiPlaceContext:
    """An ordered family of places; distinct primes keep the valuations independent."""

    places: tuple[Place, ...]

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(self.places))
        primes = [P.prime for P in self.places]
        if len(set(primes)) != len(primes):
            raise DuplicatePlace(f"places must carry distinct primes, got {primes}")


def _ord(n: int, p: int) -> int:
    # multiplicity of p in n, for n != 0
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def val(x, P: Place) -> ExtInt:
    """p-adic valuation of x.  INFINITY if and only if x == 0."""
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return _ord(abs(x.numerator), P.prime) - _ord(x.denominator, P.prime)


def residue(x, P: Place) -> int:
    """Image of x in F_p as an integer in [0, p).  Requires val(x, P) >= 0."""
    x = Fraction(x)
    p = P.prime
    if x == 0:
        return 0
    if _ord(x.denominator, p) > 0:
        raise NotIntegral(f"{x} has negative valuation at {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def truncate_digits(x, P: Place, precision: int) -> Fraction:
    """Truncated p-adic digit expansion of x below ``precision``.

    Returns the unique y = sum of a_i p^i over val(x) <= i < precision, with
    digits a_i in [0, p), such that val(x - y) >= precision.  Zero when
    val(x) >= precision.  This is the canonical representative of x modulo
    the fractional ideal {v >= precision}.
    """
    x = Fraction(x)
    v = val(x, P)
    if isinstance(v, _Infinity) or v >= precision:
        return Fraction(0)
    p = P.prime
    scale = Fraction(p) ** v
    unit = x / scale
    mod = p ** (precision - v)
    u = unit.numerator * pow(unit.denominator, -1, mod) % mod
    return u * scale


def code_finite_set(points: Iterable) -> tuple[Fraction, ...]:
    """Coefficients, leading one first, of the monic polynomial whose root set
    is ``points``.

    The tuple is a canonical code of the set: it does not depend on the
    iteration order, and distinct sets yield distinct tuples.
    """
    pts = [Fraction(a) for a in points]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be pairwise distinct")
    coeffs = [Fraction(1)]
    for a in pts:
        nxt = coeffs + [Fraction(0)]
        for i, c in enumerate(coeffs):
            nxt[i + 1] -= c * a
        coeffs = nxt
    return tuple(coeffs)
