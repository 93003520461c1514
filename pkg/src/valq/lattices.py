"""Lattice classes over the local ring at p, and their residue torsors.

A full-rank lattice is the span, over the local ring O = {v >= 0} of Q at
a prime p, of the columns of an invertible rational matrix.  Two matrices
A, B span the same lattice exactly when A^-1 B has p-integral entries and
unit determinant, i.e. when they lie in the same right coset of GL_m(O).

``canon`` picks the unique Hermite-style representative of that coset:
upper triangular, each diagonal entry an exact power of p, zeros below the
diagonal, and each entry above the diagonal digit-truncated below the
exponent of its row's pivot.  Uniqueness makes lattice equality syntactic,
so :class:`LatticeClass` only ever stores canonical matrices.

A :class:`TorsorElement` is a lattice class together with a residue coset:
a vector of the lattice modulo p times the lattice, recorded through its
coordinates in the canonical basis, reduced mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .balls import Ball
from .errors import (
    DimensionMismatch,
    EmptyInput,
    IndexOutOfRange,
    NotBlockDiagonal,
    PlaceMismatch,
    Singular,
)
from .valued_field import Place, residue, truncate_digits, val


def _as_matrix(rows) -> list[list[Fraction]]:
    out = [[Fraction(x) for x in row] for row in rows]
    m = len(out)
    if m == 0 or any(len(row) != m for row in out):
        raise DimensionMismatch("expected a nonempty square matrix")
    return out


def _identity(m: int) -> list[list[Fraction]]:
    return [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]


def _mat_mul(A, B):
    m = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(m)) for j in range(m)] for i in range(m)]


def _mat_vec(A, v):
    return [sum(A[i][k] * v[k] for k in range(len(v))) for i in range(len(A))]


def _det(A) -> Fraction:
    work = [row[:] for row in A]
    m = len(work)
    det = Fraction(1)
    for col in range(m):
        pivot = next((r for r in range(col, m) if work[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det *= work[col][col]
        inv = 1 / work[col][col]
        for r in range(col + 1, m):
            if work[r][col] != 0:
                f = work[r][col] * inv
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return det


def _mat_inv(A) -> list[list[Fraction]]:
    m = len(A)
    work = [row[:] + ident_row for row, ident_row in zip(A, _identity(m))]
    for col in range(m):
        pivot = next((r for r in range(col, m) if work[r][col] != 0), None)
        if pivot is None:
            raise Singular("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [a * inv for a in work[col]]
        for r in range(m):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return [row[m:] for row in work]


@dataclass(frozen=True)
class LatticeClass:
    """A lattice at ``place`` through its canonical column basis.

    The representative is validated on construction, so equal classes are
    equal values; build instances with :func:`canon`.
    """

    place: Place
    dim: int
    rep: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = self.dim
        rep = self.rep
        if len(rep) != m or any(len(row) != m for row in rep):
            raise DimensionMismatch("representative must be dim x dim")
        p = self.place.prime
        for i in range(m):
            for j in range(m):
                x = rep[i][j]
                if i > j:
                    if x != 0:
                        raise ValueError("canonical form has zeros below the diagonal")
                elif i == j:
                    if x == 0:
                        raise ValueError("canonical form has nonzero diagonal")
                    e = val(x, self.place)
                    if x != Fraction(p) ** e:
                        raise ValueError("diagonal entries must be exact powers of p")
                else:
                    e_i = val(rep[i][i], self.place)
                    if x != truncate_digits(x, self.place, e_i):
                        raise ValueError("entries above the diagonal must be digit-reduced")

    @property
    def det_valuation(self) -> int:
        """v(det) of any representative; an invariant of the class."""
        return sum(val(self.rep[i][i], self.place) for i in range(self.dim))


def canon(A, P: Place) -> LatticeClass:
    """Canonical representative of the lattice spanned by the columns of A.

    Column operations over the local ring only: swap, unit scaling, adding
    an integral multiple of one column to another.  Idempotent, and equal
    on A and A*U for every U in GL_m(O).
    """
    H = _as_matrix(A)
    m = len(H)
    if _det(H) == 0:
        raise Singular("matrix is singular")
    p = P.prime

    # column echelon from the bottom row up: after step r, column r holds
    # pivot p^{e_r} in row r with zeros below and zeros to its left in row r
    for r in range(m - 1, -1, -1):
        pivot, best = None, None
        for j in range(r + 1):
            if H[r][j] != 0:
                v = val(H[r][j], P)
                if best is None or v < best:
                    pivot, best = j, v
        if pivot is None:
            raise Singular("matrix is singular")
        for row in H:
            row[pivot], row[r] = row[r], row[pivot]
        unit = H[r][r] / Fraction(p) ** best
        for row in H:
            row[r] /= unit
        for j in range(r):
            if H[r][j] != 0:
                f = H[r][j] / H[r][r]
                for row in H:
                    row[j] -= f * row[r]

    # digit-reduce everything above each pivot
    for j in range(1, m):
        for i in range(j - 1, -1, -1):
            e_i = val(H[i][i], P)
            t = truncate_digits(H[i][j], P, e_i)
            if t != H[i][j]:
                f = (H[i][j] - t) / H[i][i]
                for row in H:
                    row[j] -= f * row[i]

    return LatticeClass(P, m, tuple(tuple(row) for row in H))


def lat_eq(A, B, P: Place) -> bool:
    """True iff A and B span the same lattice at P.

    Decided directly: A^-1 B must have entries of valuation >= 0 and
    determinant of valuation 0.  Equivalent to canon(A) == canon(B).
    """
    MA, MB = _as_matrix(A), _as_matrix(B)
    if len(MA) != len(MB):
        raise DimensionMismatch("matrices must have equal dimension")
    da, db = _det(MA), _det(MB)
    if da == 0 or db == 0:
        raise Singular("matrix is singular")
    X = _mat_mul(_mat_inv(MA), MB)
    if any(val(x, P) < 0 for row in X for x in row):
        return False
    return val(db / da, P) == 0


@dataclass(frozen=True)
class TorsorElement:
    """A lattice class plus a residue coset of the lattice mod p times it.

    The coset is recorded by the coordinate vector of any representative in
    the canonical basis, reduced mod p; the quotient has exactly p^dim
    elements, one per residue vector.
    """

    lat: LatticeClass
    residue_vector: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "residue_vector", tuple(self.residue_vector))
        if len(self.residue_vector) != self.lat.dim:
            raise DimensionMismatch("residue vector length must equal the dimension")
        p = self.lat.place.prime
        for r in self.residue_vector:
            if not isinstance(r, int) or isinstance(r, bool) or not 0 <= r < p:
                raise ValueError(f"residue coordinates must be integers in [0, {p})")


def torsor_from_matrix(B, P: Place) -> TorsorElement:
    """Torsor element carried by an invertible matrix: its lattice class,
    with the coset of its first column."""
    M = _as_matrix(B)
    lat = canon(M, P)
    u = [row[0] for row in M]
    coords = _mat_vec(_mat_inv([list(r) for r in lat.rep]), u)
    return TorsorElement(lat, tuple(residue(c, P) for c in coords))


def torsor_eq(a: TorsorElement, b: TorsorElement) -> bool:
    """True iff both lattice classes and both residue vectors agree."""
    if a.lat.place != b.lat.place:
        raise PlaceMismatch("torsor elements live at different places")
    return a == b


def lattice_to_torsor(s: LatticeClass) -> TorsorElement:
    """The zero coset over s; injective in s."""
    return TorsorElement(s, (0,) * s.dim)


def combine_torsors(torsors) -> TorsorElement:
    """Product element: block-diagonal lattice class, concatenated residues."""
    ts = list(torsors)
    if not ts:
        raise EmptyInput("nothing to combine")
    place = ts[0].lat.place
    for t in ts[1:]:
        if t.lat.place != place:
            raise PlaceMismatch("combined torsor elements must share a place")
    m = sum(t.lat.dim for t in ts)
    rep = [[Fraction(0)] * m for _ in range(m)]
    off = 0
    for t in ts:
        d = t.lat.dim
        for i in range(d):
            for j in range(d):
                rep[off + i][off + j] = t.lat.rep[i][j]
        off += d
    lat = LatticeClass(place, m, tuple(tuple(row) for row in rep))
    res = tuple(r for t in ts for r in t.residue_vector)
    return TorsorElement(lat, res)


def project_torsor(t: TorsorElement, block_index: int, block_dims) -> TorsorElement:
    """The ``block_index``-th factor (1-based) of a combined element.

    Inverse to :func:`combine_torsors` on each coordinate.
    """
    dims = list(block_dims)
    if any(not isinstance(d, int) or d < 1 for d in dims):
        raise NotBlockDiagonal("block dimensions must be positive integers")
    if sum(dims) != t.lat.dim:
        raise NotBlockDiagonal("block dimensions do not sum to the dimension")
    if not 1 <= block_index <= len(dims):
        raise IndexOutOfRange(f"block index {block_index} outside 1..{len(dims)}")
    offsets = [0]
    for d in dims:
        offsets.append(offsets[-1] + d)
    rep = t.lat.rep
    for i in range(t.lat.dim):
        for j in range(t.lat.dim):
            bi = next(b for b in range(len(dims)) if offsets[b] <= i < offsets[b + 1])
            bj = next(b for b in range(len(dims)) if offsets[b] <= j < offsets[b + 1])
            if bi != bj and rep[i][j] != 0:
                raise NotBlockDiagonal("representative is not block diagonal for these dims")
    lo, hi = offsets[block_index - 1], offsets[block_index]
    block = tuple(tuple(row[lo:hi]) for row in rep[lo:hi])
    lat = LatticeClass(t.lat.place, dims[block_index - 1], block)
    return TorsorElement(lat, t.residue_vector[lo:hi])


def open_neighborhood(s: LatticeClass) -> tuple[tuple[Ball, ...], ...]:
    """Entrywise balls around the representative, all of whose matrices stay
    in the class.

    Perturbing row j by anything of valuation at least
    1 - min_i v((rep^-1)_{i j}) keeps rep^-1 C of the form 1 + (entries of
    valuation >= 1), hence in GL_m(O); the bound is one row of balls.
    """
    inv = _mat_inv([list(r) for r in s.rep])
    m = s.dim
    radii = []
    for j in range(m):
        vmin = min(val(inv[i][j], s.place) for i in range(m))
        radii.append(1 - vmin)
    return tuple(
        tuple(Ball(s.place, s.rep[j][k], radii[j]) for k in range(m)) for j in range(m)
    )


def lattice_member(x, s: LatticeClass) -> bool:
    """True iff x lies in the lattice: its canonical coordinates are integral."""
    vec = [Fraction(v) for v in x]
    if len(vec) != s.dim:
        raise DimensionMismatch("vector length must equal the dimension")
    coords = _mat_vec(_mat_inv([list(r) for r in s.rep]), vec)
    return all(val(c, s.place) >= 0 for c in coords)
