"""Exact p-adic geometry over Q at desk scale.

Ultrametric balls and swiss cheeses at p-adic places, lattice classes over
the local ring at p with their residue torsors, a deterministic
simultaneous-approximation solver across distinct primes, and splitting
tests over prime fields.  All arithmetic is exact; all values are
immutable and safe to share across threads.
"""

from .approx import (
    ApproxProblem,
    meet_lattice_cosets,
    meet_torsor_cosets,
    solve_1d,
    solve_nd,
)
from .balls import (
    Ball,
    BallChain,
    BallRelation,
    EmptyCheese,
    SwissCheese,
    compare,
    dist,
    generic_point,
    member,
    min_closed_cover,
    sc_is_empty,
    sc_member,
    sc_normalize,
)
from .errors import (
    ConstantPolynomial,
    DimensionMismatch,
    DuplicatePlace,
    EmptyConstraint,
    EmptyInput,
    IndexOutOfRange,
    NotBlockDiagonal,
    NotDisjoint,
    NotIntegral,
    NotIrreducibleModulus,
    NotNormalized,
    NotSeparable,
    PlaceMismatch,
    SchemaError,
    Singular,
    UnknownDegree,
    Unsatisfiable,
    ValqError,
)
from .ffpoly import (
    FFPoly,
    SplittingReport,
    SplittingSpec,
    check_splitting,
    ff_gcd,
    ff_irreducible,
    ff_separable,
    ff_splits_mod,
)
from .lattices import (
    LatticeClass,
    TorsorElement,
    canon,
    combine_torsors,
    lat_eq,
    lattice_member,
    lattice_to_torsor,
    open_neighborhood,
    project_torsor,
    torsor_eq,
    torsor_from_matrix,
)
from .valued_field import (
    INFINITY,
    ExtInt,
    MultiPlaceContext,
    Place,
    Rat,
    code_finite_set,
    residue,
    truncate_digits,
    val,
)

__version__ = "0.1.0"
