"""Polynomials over prime fields, with irreducibility and splitting tests.

Coefficients are stored low degree first, reduced mod p, trailing zeros
trimmed; the empty tuple is the zero polynomial.  Irreducibility uses the
standard Frobenius criterion: f of degree d is irreducible over F_p iff
x^(p^d) = x mod f and gcd(x^(p^(d/q)) - x, f) = 1 for every prime q
dividing d.  A separable f splits over F_(p^d) iff f divides x^(p^d) - x,
which depends on the modulus only through its degree d.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from .errors import (
    ConstantPolynomial,
    NotIrreducibleModulus,
    NotSeparable,
    UnknownDegree,
)


@dataclass(frozen=True)
class FFPoly:
    """A polynomial over F_p: coefficients low degree first."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int) or isinstance(p, bool) or p < 2 or not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not prime")
        cs = [int(c) % p for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls, p: int) -> "FFPoly":
        return cls(p, (0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "FFPoly":
        if self.is_zero or self.is_monic:
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return FFPoly(self.p, tuple(c * inv for c in self.coeffs))

    def _same_field(self, other: "FFPoly") -> None:
        if not isinstance(other, FFPoly) or other.p != self.p:
            raise ValueError("polynomials over different prime fields")

    def __add__(self, other: "FFPoly") -> "FFPoly":
        self._same_field(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return FFPoly(self.p, tuple(c + (b[i] if i < len(b) else 0) for i, c in enumerate(a)))

    def __neg__(self) -> "FFPoly":
        return FFPoly(self.p, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "FFPoly") -> "FFPoly":
        return self + (-other)

    def __mul__(self, other: "FFPoly") -> "FFPoly":
        self._same_field(other)
        if self.is_zero or other.is_zero:
            return FFPoly(self.p, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FFPoly(self.p, tuple(out))

    def __divmod__(self, other: "FFPoly"):
        self._same_field(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        div = other.coeffs
        inv = pow(div[-1], -1, p)
        quo = [0] * max(0, len(rem) - len(div) + 1)
        for shift in range(len(rem) - len(div), -1, -1):
            c = rem[shift + len(div) - 1] * inv % p
            if c:
                quo[shift] = c
                for i, d in enumerate(div):
                    rem[shift + i] = (rem[shift + i] - c * d) % p
        return FFPoly(p, tuple(quo)), FFPoly(p, tuple(rem))

    def __mod__(self, other: "FFPoly") -> "FFPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "FFPoly") -> "FFPoly":
        return divmod(self, other)[0]

    def derivative(self) -> "FFPoly":
        return FFPoly(self.p, tuple(i * c for i, c in enumerate(self.coeffs[1:], start=1)))


def ff_gcd(a: FFPoly, b: FFPoly) -> FFPoly:
    """Monic greatest common divisor."""
    a._same_field(b)
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def _pow_mod(base: FFPoly, exp: int, mod: FFPoly) -> FFPoly:
    result = FFPoly(mod.p, (1,)) % mod
    base = base % mod
    while exp:
        if exp & 1:
            result = result * base % mod
        base = base * base % mod
        exp >>= 1
    return result


def _frobenius_chain(f: FFPoly, length: int) -> list[FFPoly]:
    # [x^(p^1), ..., x^(p^length)] mod f, by iterating the p-th power map
    g = FFPoly.x(f.p) % f
    out = []
    for _ in range(length):
        g = _pow_mod(g, f.p, f)
        out.append(g)
    return out


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def ff_irreducible(f: FFPoly) -> bool:
    """Irreducibility over F_p by the Frobenius fixed-point criterion."""
    if f.degree < 1:
        raise ConstantPolynomial("irreducibility needs degree >= 1")
    d = f.degree
    chain = _frobenius_chain(f, d)
    x = FFPoly.x(f.p) % f
    if chain[d - 1] != x:
        return False
    for q in _prime_factors(d):
        if ff_gcd(f, chain[d // q - 1] - x).degree != 0:
            return False
    return True


def ff_separable(f: FFPoly) -> bool:
    """True iff f has no repeated root: gcd(f, f') = 1."""
    if f.degree < 1:
        raise ConstantPolynomial("separability needs degree >= 1")
    return ff_gcd(f, f.derivative()).degree == 0


def ff_splits_mod(f: FFPoly, r: FFPoly) -> bool:
    """True iff the separable f splits into linear factors over F_(p^d),
    d the degree of the irreducible modulus r."""
    f._same_field(r)
    if not ff_separable(f):
        raise NotSeparable("splitting test requires a separable polynomial")
    if r.degree < 1 or not ff_irreducible(r):
        raise NotIrreducibleModulus("splitting modulus must be irreducible")
    d = r.degree
    return _frobenius_chain(f, d)[d - 1] == FFPoly.x(f.p) % f


@dataclass(frozen=True, eq=False)
class SplittingSpec:
    """Designated monic polynomials r_m with their declared degrees.

    ``degree_map`` sends m to the degree d of r_m; both maps must cover the
    same set of m, and each r_m must be monic of its declared degree.
    """

    p: int
    degree_map: dict
    r_polys: dict

    def __post_init__(self):
        object.__setattr__(self, "degree_map", dict(self.degree_map))
        object.__setattr__(self, "r_polys", dict(self.r_polys))
        if set(self.degree_map) != set(self.r_polys):
            raise ValueError("degree map and polynomial map must cover the same degrees")
        for m, d in self.degree_map.items():
            r = self.r_polys[m]
            if r.p != self.p:
                raise ValueError("r polynomials must share the declared characteristic")
            if not r.is_monic or r.degree != d:
                raise ValueError(f"r_{m} must be monic of degree {d}")


@dataclass(frozen=True)
class SplittingReport:
    """Batch verdict: r_m irreducible, and per-candidate splitting results.

    Candidate verdicts are None when the modulus fails irreducibility,
    since the splitting criterion presupposes an irreducible modulus.
    """

    r_irreducible: bool
    verdicts: tuple[tuple[FFPoly, bool | None], ...]
    passed: bool


def check_splitting(spec: SplittingSpec, m: int, candidates) -> SplittingReport:
    """Check r_m and a list of separable degree-m candidates against it."""
    if m not in spec.degree_map:
        raise UnknownDegree(f"no splitting data declared for degree {m}")
    r = spec.r_polys[m]
    cands = list(candidates)
    for f in cands:
        f._same_field(r)
        if f.degree != m:
            raise ValueError(f"candidate degree {f.degree} != {m}")
    r_ok = ff_irreducible(r)
    verdicts = tuple((f, ff_splits_mod(f, r) if r_ok else None) for f in cands)
    passed = r_ok and all(v for _, v in verdicts)
    return SplittingReport(r_ok, verdicts, passed)
