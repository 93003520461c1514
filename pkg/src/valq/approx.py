"""Simultaneous approximation across independent places.

Distinct primes induce independent topologies on Q, so finitely many
nonempty open constraints, one per place, always share a rational point.
The solver makes that effective: clear denominators so every outer ball
becomes an integer congruence, combine the congruences with the Chinese
remainder theorem, then walk the resulting arithmetic progression from its
smallest non-negative member until the point clears every hole.  Holes
exclude only finitely many residue classes per place, so the walk stops
within the product of the per-place hole precisions.

Every returned solution is re-verified by independent membership checks
before being handed back; nothing is accepted on construction alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Mapping

from .balls import Ball, EmptyCheese, SwissCheese, sc_member, sc_normalize
from .errors import (
    DimensionMismatch,
    EmptyConstraint,
    EmptyInput,
    PlaceMismatch,
    Unsatisfiable,
)
from .lattices import (
    LatticeClass,
    TorsorElement,
    _mat_inv,
    _mat_vec,
    lat_eq,
    open_neighborhood,
)
from .valued_field import MultiPlaceContext, Place, val


@dataclass(frozen=True)
class ApproxProblem:
    """Per-place swiss-cheese constraints over pairwise distinct primes.

    ``constraints[i]`` is the family of cheeses for ``context.places[i]``,
    one cheese per coordinate.  Every cheese must be normalized and
    nonempty; :meth:`build` normalizes raw input and rejects empty
    constraints.
    """

    context: MultiPlaceContext
    constraints: tuple[tuple[SwissCheese, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(tuple(fam) for fam in self.constraints))
        if len(self.constraints) != len(self.context.places):
            raise DimensionMismatch("one constraint family per place")
        for place, fam in zip(self.context.places, self.constraints):
            if not fam:
                raise DimensionMismatch("each place needs at least one cheese")
            for sc in fam:
                if isinstance(sc, EmptyCheese):
                    raise EmptyConstraint(f"empty constraint at place {place.prime}")
                if sc.place != place:
                    raise PlaceMismatch("constraint cheese at the wrong place")
                if sc_normalize(sc) != sc:
                    raise ValueError("constraint cheeses must be normalized")

    @classmethod
    def build(cls, constraints: Mapping | Iterable) -> "ApproxProblem":
        """Build from a mapping or pair list: Place -> ball, cheese, or family.

        Balls become hole-free cheeses, everything is normalized, and a
        constraint that normalizes to the empty set raises EmptyConstraint.
        """
        if isinstance(constraints, Mapping):
            items = list(constraints.items())
        else:
            items = list(constraints)
        context = MultiPlaceContext(tuple(place for place, _ in items))
        families = []
        for place, raw in items:
            fam = [raw] if isinstance(raw, (Ball, SwissCheese, EmptyCheese)) else list(raw)
            out = []
            for sc in fam:
                if isinstance(sc, Ball):
                    sc = SwissCheese(sc, ())
                sc = sc_normalize(sc)
                if isinstance(sc, EmptyCheese):
                    raise EmptyConstraint(f"empty constraint at place {place.prime}")
                out.append(sc)
            families.append(tuple(out))
        return cls(context, tuple(families))


def _crt(residues, moduli) -> int:
    # moduli are pairwise coprime prime powers
    M = prod(moduli)
    if M == 1:
        return 0
    x = 0
    for r, mod in zip(residues, moduli):
        if mod == 1:
            continue
        Mi = M // mod
        x += r * Mi * pow(Mi, -1, mod)
    return x % M


def _solve(pairs) -> Fraction:
    """Common point of one normalized nonempty cheese per distinct place."""
    if not pairs:
        return Fraction(0)

    # denominators out: with T the product of p^t over the places, y = T x
    # satisfies p-integral congruences whenever x satisfies the originals
    scaled = []
    T = 1
    for place, sc in pairs:
        lam = sc.outer.radius
        for c in (sc.outer.center, *(h.center for h in sc.holes)):
            if c != 0:
                lam = min(lam, val(c, place))
        t = max(0, -lam)
        T *= place.prime**t
        scaled.append((place, sc, t))

    moduli, residues, scan = [], [], 1
    for place, sc, t in scaled:
        p = place.prime
        mod = p ** (sc.outer.radius + t)
        c = T * sc.outer.center
        moduli.append(mod)
        residues.append(c.numerator * pow(c.denominator, -1, mod) % mod)
        if sc.holes:
            scan *= p ** (max(h.radius for h in sc.holes) - sc.outer.radius)

    y0 = _crt(residues, moduli)
    M = prod(moduli)
    for k in range(scan):
        x = Fraction(y0 + k * M, T)
        if all(sc_member(x, sc) for _, sc, _ in scaled):
            return x
    # unreachable when every cheese is nonempty
    raise Unsatisfiable("constraints admit no common point")


def solve_1d(problem: ApproxProblem) -> Fraction:
    """A rational in every constraint cheese, one cheese per place.

    Deterministic: the smallest non-negative solution of the outer
    congruences whose hole-avoiding offset comes first in scan order.
    """
    pairs = []
    for place, fam in zip(problem.context.places, problem.constraints):
        if len(fam) != 1:
            raise DimensionMismatch("solve_1d needs exactly one cheese per place")
        pairs.append((place, fam[0]))
    x = _solve(pairs)
    if not all(sc_member(x, sc) for _, sc in pairs):
        raise AssertionError("solver returned an unverified point")
    return x


def solve_nd(problem: ApproxProblem, dimension: int) -> tuple[Fraction, ...]:
    """Coordinatewise :func:`solve_1d` over families of equal width."""
    if dimension < 1:
        raise DimensionMismatch("dimension must be positive")
    for fam in problem.constraints:
        if len(fam) != dimension:
            raise DimensionMismatch(f"every place needs {dimension} cheeses")
    out = []
    for j in range(dimension):
        pairs = [(place, fam[j]) for place, fam in zip(problem.context.places, problem.constraints)]
        x = _solve(pairs)
        if not all(sc_member(x, sc) for _, sc in pairs):
            raise AssertionError("solver returned an unverified point")
        out.append(x)
    return tuple(out)


def meet_lattice_cosets(classes) -> tuple[tuple[Fraction, ...], ...]:
    """A single matrix spanning the given lattice at every place.

    Each class contributes the entrywise ball neighborhood of its
    representative; solving those constraints entrywise across the places
    yields a matrix inside every neighborhood, verified by lat_eq per
    place before returning.
    """
    cls = list(classes)
    if not cls:
        raise EmptyInput("no lattice classes to meet")
    MultiPlaceContext(tuple(c.place for c in cls))  # rejects duplicate places
    m = cls[0].dim
    if any(c.dim != m for c in cls):
        raise DimensionMismatch("lattice classes must share a dimension")
    neighborhoods = [open_neighborhood(c) for c in cls]
    rows = []
    for j in range(m):
        row = []
        for k in range(m):
            pairs = [
                (c.place, SwissCheese(nb[j][k], ())) for c, nb in zip(cls, neighborhoods)
            ]
            row.append(_solve(pairs))
        rows.append(tuple(row))
    C = tuple(rows)
    for c in cls:
        if not lat_eq(C, c.rep, c.place):
            raise AssertionError("meet left a lattice class")
    return C


def meet_torsor_cosets(torsors):
    """A matrix and a vector lying in every torsor coset at once.

    Returns (C, d): C spans each lattice, and for each place with canonical
    representative A and residue lift u, every coordinate of A^-1 (d - u)
    has valuation >= 1.  The coset is open, so d is found entrywise with
    the same ball bound as the lattice neighborhoods.
    """
    ts = list(torsors)
    if not ts:
        raise EmptyInput("no torsor elements to meet")
    C = meet_lattice_cosets([t.lat for t in ts])
    m = ts[0].lat.dim

    coord_pairs: list[list] = [[] for _ in range(m)]
    lifts = []
    for t in ts:
        place = t.lat.place
        rep = [list(r) for r in t.lat.rep]
        u = _mat_vec(rep, [Fraction(r) for r in t.residue_vector])
        lifts.append(u)
        inv = _mat_inv(rep)
        for j in range(m):
            vmin = min(val(inv[i][j], place) for i in range(m))
            coord_pairs[j].append((place, SwissCheese(Ball(place, u[j], 1 - vmin), ())))
    d = tuple(_solve(pairs) for pairs in coord_pairs)

    for t, u in zip(ts, lifts):
        place = t.lat.place
        inv = _mat_inv([list(r) for r in t.lat.rep])
        w = _mat_vec(inv, [dj - uj for dj, uj in zip(d, u)])
        if not all(val(x, place) >= 1 for x in w):
            raise AssertionError("meet left a torsor coset")
    return C, d
