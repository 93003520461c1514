"""Domain exceptions.

Each error's ``code`` (its class name) is what the CLI prints in the
``{"error": code, "detail": ...}`` envelope, so the names below are part of
the scriptable interface and must stay stable.
"""


class ValqError(Exception):
    """Base class for semantic errors raised by library operations."""

    @property
    def code(self) -> str:
        return type(self).__name__


class SchemaError(Exception):
    """Malformed input document: bad JSON, bad rational syntax, bad shape."""


class NotIntegral(ValqError):
    """Residue requested for an element of negative valuation."""


class PlaceMismatch(ValqError):
    """Operands live at different places."""


class NotDisjoint(ValqError):
    """Operation requires pairwise disjoint balls."""


class EmptyInput(ValqError):
    """Operation requires a nonempty collection."""


class NotNormalized(ValqError):
    """Swiss cheese does not satisfy the normalization invariants."""


class Unsatisfiable(ValqError):
    """No point satisfies the requested constraints."""


class Singular(ValqError):
    """Matrix is not invertible."""


class NotBlockDiagonal(ValqError):
    """Lattice representative does not split into the stated blocks."""


class IndexOutOfRange(ValqError):
    """Block index outside the stated block structure."""


class EmptyConstraint(ValqError):
    """An approximation constraint denotes the empty set."""


class DuplicatePlace(ValqError):
    """The same prime appears twice where places must be independent."""


class DimensionMismatch(ValqError):
    """Operands have incompatible dimensions."""


class ConstantPolynomial(ValqError):
    """Polynomial operation requires degree >= 1."""


class NotSeparable(ValqError):
    """Polynomial has a repeated root."""


class NotIrreducibleModulus(ValqError):
    """Splitting modulus must be irreducible."""


class UnknownDegree(ValqError):
    """No splitting data declared for the requested degree."""
