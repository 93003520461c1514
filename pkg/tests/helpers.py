"""Seeded random generators shared across the test modules."""

import random
from fractions import Fraction

from valq import Ball, Place, SwissCheese, canon, compare, BallRelation

P2, P3, P5 = Place(2), Place(3), Place(5)
PLACES = (P2, P3, P5)


def rng(seed):
    return random.Random(seed)


def rand_rational(r, num=60, den=30, nonzero=False):
    while True:
        x = Fraction(r.randint(-num, num), r.randint(1, den))
        if x != 0 or not nonzero:
            return x


def rand_integral(r, place, bound=12):
    """Random rational of valuation >= 0."""
    p = place.prime
    while True:
        d = r.randint(1, bound)
        if d % p:
            return Fraction(r.randint(-bound, bound), d)


def rand_unit(r, place, bound=12):
    """Random rational of valuation exactly 0."""
    p = place.prime
    while True:
        n, d = r.randint(-bound, bound), r.randint(1, bound)
        if n != 0 and n % p and d % p:
            return Fraction(n, d)


def rand_ball(r, place, rmin=-3, rmax=6):
    return Ball(place, rand_rational(r), r.randint(rmin, rmax))


def rand_point_in(r, ball, bound=10):
    """Random member of the ball, bounded denominator."""
    p = ball.place.prime
    return ball.center + Fraction(p) ** ball.radius * rand_integral(r, ball.place, bound)


def rand_disjoint_family(r, place, size, rmin=-2, rmax=6):
    """Up to ``size`` pairwise disjoint balls, by rejection."""
    family = [rand_ball(r, place, rmin, rmax)]
    attempts = 0
    while len(family) < size and attempts < 200:
        attempts += 1
        b = rand_ball(r, place, rmin, rmax)
        if all(compare(b, other) is BallRelation.DISJOINT for other in family):
            family.append(b)
    return family


def rand_cheese(r, place, max_holes=2, rmin=-2, rmax=4, depth=3):
    """Random swiss cheese, not normalized and possibly empty."""
    outer = rand_ball(r, place, rmin, rmax)
    holes = []
    for _ in range(r.randint(0, max_holes)):
        center = rand_point_in(r, outer)
        holes.append(Ball(place, center, outer.radius + r.randint(1, depth)))
    return SwissCheese(outer, tuple(holes))


def rand_invertible(r, m, num=9, den=4):
    while True:
        rows = [[rand_rational(r, num, den) for _ in range(m)] for _ in range(m)]
        det = _det(rows)
        if det != 0:
            return rows


def _det(rows):
    m = len(rows)
    if m == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(m):
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det(minor)
    return total


def rand_unimodular(r, place, m, steps=8):
    """Random element of GL_m(O) as a product of elementary operations."""
    U = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]
    for _ in range(steps):
        kind = r.randint(0, 2)
        if kind == 0 and m > 1:  # add an integral multiple of one column to another
            i, j = r.sample(range(m), 2)
            c = rand_integral(r, place)
            for row in U:
                row[j] += c * row[i]
        elif kind == 1 and m > 1:  # swap two columns
            i, j = r.sample(range(m), 2)
            for row in U:
                row[i], row[j] = row[j], row[i]
        else:  # scale a column by a unit
            j = r.randrange(m)
            u = rand_unit(r, place)
            for row in U:
                row[j] *= u
    return U


def mat_mul(A, B):
    m = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(m)) for j in range(m)] for i in range(m)]


def rand_lattice_class(r, place, m):
    return canon(rand_invertible(r, m), place)
