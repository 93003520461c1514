"""Ultrametric ball algebra at a single place.

A closed ball is {x : v(x - c) >= r}, an open ball {x : v(x - c) > r}.
With value group Z the open ball of radius r is the closed ball of radius
r + 1, so every stored :class:`Ball` is closed, and the stored center is
the canonical truncated digit expansion below the radius.  Ball values are
then equal exactly when they denote the same set of rationals.

A :class:`SwissCheese` is a ball minus finitely many sub-balls.
``sc_normalize`` computes a canonical representative over the given outer
ball: holes are clipped to it, nested holes merge into the larger one, and
a complete family of p sibling holes coalesces into its parent ball, so
the holes end up being exactly the maximal balls missing from the outer
ball.  An empty set collapses to the distinguished :class:`EmptyCheese`.
Two cheeses with the same outer ball denote the same set exactly when
they normalize to identical values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import EmptyInput, NotDisjoint, NotNormalized, PlaceMismatch, Unsatisfiable
from .valued_field import Place, truncate_digits, val


class BallRelation(Enum):
    EQUAL = "Equal"
    FIRST_INSIDE_SECOND = "FirstInsideSecond"
    SECOND_INSIDE_FIRST = "SecondInsideFirst"
    DISJOINT = "Disjoint"


@dataclass(frozen=True)
class Ball:
    """A closed ball {x : v(x - center) >= radius} at ``place``.

    Open input (closed=False) is converted on construction; the center is
    replaced by its digit truncation below the radius, so equal sets are
    equal values.
    """

    place: Place
    center: Fraction
    radius: int
    closed: bool = True

    def __post_init__(self):
        if not isinstance(self.radius, int) or isinstance(self.radius, bool):
            raise ValueError("radius must be an int")
        radius = self.radius if self.closed else self.radius + 1
        center = truncate_digits(Fraction(self.center), self.place, radius)
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "closed", True)


def _check_place(a, b) -> None:
    if a.place != b.place:
        raise PlaceMismatch(f"places {a.place.prime} and {b.place.prime} differ")


def member(x, b: Ball) -> bool:
    """True iff x lies in the ball."""
    return val(Fraction(x) - b.center, b.place) >= b.radius


def compare(a: Ball, b: Ball) -> BallRelation:
    """Relate two balls at one place: equal, nested, or disjoint.

    The ultrametric leaves no other possibility.
    """
    _check_place(a, b)
    d = val(a.center - b.center, a.place)
    if a.radius == b.radius:
        return BallRelation.EQUAL if d >= a.radius else BallRelation.DISJOINT
    if a.radius > b.radius:  # a is the smaller set
        if d >= b.radius:
            return BallRelation.FIRST_INSIDE_SECOND
        return BallRelation.DISJOINT
    if d >= a.radius:
        return BallRelation.SECOND_INSIDE_FIRST
    return BallRelation.DISJOINT


def dist(a: Ball, b: Ball) -> int:
    """v(x - y) for any x in a, y in b; well defined when a, b are disjoint."""
    if compare(a, b) is not BallRelation.DISJOINT:
        raise NotDisjoint("distance is defined for disjoint balls only")
    return val(a.center - b.center, a.place)


def min_closed_cover(balls) -> Ball:
    """Smallest closed ball containing every ball of a disjoint family.

    Its radius is the minimal pairwise distance; any strictly smaller ball
    around any input center misses the far end of a pair realizing that
    minimum.
    """
    bs = list(balls)
    if not bs:
        raise EmptyInput("cover of no balls")
    first = bs[0]
    for b in bs[1:]:
        _check_place(first, b)
    if len(bs) == 1:
        return first
    gamma = None
    for i in range(len(bs)):
        for j in range(i + 1, len(bs)):
            d = dist(bs[i], bs[j])  # raises NotDisjoint if nested or equal
            gamma = d if gamma is None else min(gamma, d)
    return Ball(first.place, first.center, gamma)


@dataclass(frozen=True)
class SwissCheese:
    """An outer ball minus a finite list of holes, all at one place."""

    outer: Ball
    holes: tuple[Ball, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "holes", tuple(self.holes))
        for h in self.holes:
            _check_place(self.outer, h)

    @property
    def place(self) -> Place:
        return self.outer.place


@dataclass(frozen=True)
class EmptyCheese:
    """The distinguished normal form of an empty swiss cheese."""

    place: Place


def sc_member(x, sc) -> bool:
    """True iff x lies in the outer ball and in no hole."""
    if isinstance(sc, EmptyCheese):
        return False
    if not member(x, sc.outer):
        return False
    return not any(member(x, h) for h in sc.holes)


def sc_is_empty(sc) -> bool:
    """Decide emptiness of a cheese whose holes are disjoint and contained
    in the outer ball.

    Counting argument: a closed ball of radius g splits into exactly
    p^(G - g) disjoint closed balls of radius G >= g, so the cheese is
    empty iff the holes account for every radius-G sub-ball of the outer
    ball, G being the largest hole radius.
    """
    if isinstance(sc, EmptyCheese):
        return True
    holes = sc.holes
    for i, h in enumerate(holes):
        if compare(h, sc.outer) not in (BallRelation.FIRST_INSIDE_SECOND, BallRelation.EQUAL):
            raise NotNormalized("every hole must lie inside the outer ball")
        for other in holes[i + 1 :]:
            if compare(h, other) is not BallRelation.DISJOINT:
                raise NotNormalized("holes must be pairwise disjoint")
    if not holes:
        return False
    p = sc.place.prime
    top = max(h.radius for h in holes)
    covered = sum(p ** (top - h.radius) for h in holes)
    return covered == p ** (top - sc.outer.radius)


def _hole_key(h: Ball, outer: Ball):
    # sort key: (radius, digit string of the center relative to the outer ball)
    p = outer.place.prime
    depth = h.radius - outer.radius
    w = (h.center - outer.center) / Fraction(p) ** outer.radius
    u = w.numerator * pow(w.denominator, -1, p**depth) % p**depth
    digits = []
    for _ in range(depth):
        u, d = divmod(u, p)
        digits.append(d)
    return (h.radius, tuple(digits))


def sc_normalize(sc):
    """Canonical form of a swiss cheese, or :class:`EmptyCheese`.

    The result denotes the same set over the same outer ball; its holes are
    the maximal balls missing from the outer ball, sorted by (radius, digit
    string).  Normalization is idempotent.
    """
    if isinstance(sc, EmptyCheese):
        return sc
    place = sc.place
    p = place.prime
    outer = sc.outer

    # clip each hole to the outer ball
    clipped = []
    for h in sc.holes:
        rel = compare(h, outer)
        if rel is BallRelation.DISJOINT:
            continue
        if rel in (BallRelation.EQUAL, BallRelation.SECOND_INSIDE_FIRST):
            return EmptyCheese(place)
        clipped.append(h)

    # keep inclusion-maximal holes only (bigger set = smaller radius first)
    clipped.sort(key=lambda h: h.radius)
    kept: list[Ball] = []
    for h in clipped:
        inside = any(
            compare(h, k) in (BallRelation.EQUAL, BallRelation.FIRST_INSIDE_SECOND) for k in kept
        )
        if not inside:
            kept.append(h)

    # the counting identity decides emptiness before any rewriting
    if kept:
        top = max(h.radius for h in kept)
        if sum(p ** (top - h.radius) for h in kept) == p ** (top - outer.radius):
            return EmptyCheese(place)

    # coalesce every complete family of p sibling holes into its parent ball
    changed = True
    while changed:
        changed = False
        for delta in sorted({h.radius for h in kept}, reverse=True):
            groups: dict[Fraction, list[Ball]] = {}
            for h in kept:
                if h.radius == delta:
                    parent = truncate_digits(h.center, place, delta - 1)
                    groups.setdefault(parent, []).append(h)
            for parent_center, siblings in groups.items():
                if len(siblings) == p:
                    kept = [h for h in kept if h not in siblings]
                    kept.append(Ball(place, parent_center, delta - 1))
                    changed = True
                    break
            if changed:
                break

    kept.sort(key=lambda h: _hole_key(h, outer))
    return SwissCheese(outer, tuple(kept))


@dataclass(frozen=True)
class BallChain:
    """A finite family of pairwise non-disjoint balls, hence nested."""

    balls: tuple[Ball, ...]

    def __post_init__(self):
        object.__setattr__(self, "balls", tuple(self.balls))
        if not self.balls:
            raise EmptyInput("a chain needs at least one ball")
        first = self.balls[0]
        for i, a in enumerate(self.balls):
            _check_place(first, a)
            for b in self.balls[i + 1 :]:
                if compare(a, b) is BallRelation.DISJOINT:
                    raise ValueError("chain balls must be pairwise nested")

    @property
    def smallest(self) -> Ball:
        """The last ball of the chain, equal to the whole intersection."""
        return max(self.balls, key=lambda b: b.radius)


def generic_point(chain: BallChain, avoid=()) -> Fraction:
    """A point inside every chain ball and outside every avoid ball.

    Deterministic: candidates walk the chain intersection in increasing
    offset order from its canonical center, so the first point clear of
    every hole is returned.
    """
    sc = sc_normalize(SwissCheese(chain.smallest, tuple(avoid)))
    if isinstance(sc, EmptyCheese):
        raise Unsatisfiable("avoid balls exhaust the chain intersection")
    p = sc.place.prime
    step = Fraction(p) ** sc.outer.radius
    bound = 1
    if sc.holes:
        bound = p ** (max(h.radius for h in sc.holes) - sc.outer.radius)
    for t in range(bound):
        x = sc.outer.center + t * step
        if sc_member(x, sc):
            return x
    raise AssertionError("normalized nonempty cheese must contain a point")
