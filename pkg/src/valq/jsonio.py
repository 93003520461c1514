"""JSON encoding and strict decoding for every domain object the CLI speaks.

Encoders emit canonical values only: rationals as "a/b" or "a" with the
sign on the numerator, balls closed with truncated centers, cheeses
normalized by the caller.  Decoders are strict about shape and raise
:class:`SchemaError` on anything malformed; semantic failures (an empty
constraint, a duplicate place) keep their domain error types.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .approx import ApproxProblem
from .balls import Ball, EmptyCheese, SwissCheese
from .errors import SchemaError
from .ffpoly import FFPoly, SplittingReport, SplittingSpec
from .lattices import LatticeClass, TorsorElement
from .valued_field import INFINITY, Place, _Infinity

_RAT_RE = re.compile(r"-?\d+(/\d+)?")


def format_rational(x) -> str:
    return str(Fraction(x))


def parse_rational(v) -> Fraction:
    """Accept "a/b", "a", or a JSON integer; sign on the numerator only."""
    if isinstance(v, bool):
        raise SchemaError(f"not a rational: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str) and _RAT_RE.fullmatch(v):
        num, _, den = v.partition("/")
        if den == "":
            return Fraction(int(num))
        if int(den) == 0:
            raise SchemaError(f"zero denominator: {v!r}")
        return Fraction(int(num), int(den))
    raise SchemaError(f"not a rational: {v!r}")


def parse_int(v, what: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaError(f"{what} must be an integer, got {v!r}")
    return v


def parse_place(v) -> Place:
    try:
        return Place(parse_int(v, "place"))
    except ValueError as e:
        raise SchemaError(str(e)) from e


def extint_to_json(v):
    return "Infinity" if isinstance(v, _Infinity) else v


def require_keys(doc, required: set, optional: set = frozenset()) -> None:
    if not isinstance(doc, dict):
        raise SchemaError(f"expected a JSON object with keys {sorted(required)}")
    keys = set(doc)
    if not required <= keys:
        raise SchemaError(f"missing keys: {sorted(required - keys)}")
    extra = keys - required - optional
    if extra:
        raise SchemaError(f"unknown keys: {sorted(extra)}")


def ball_to_json(b: Ball) -> dict:
    return {
        "center": format_rational(b.center),
        "closed": True,
        "place": b.place.prime,
        "radius": b.radius,
    }


def ball_from_json(doc) -> Ball:
    require_keys(doc, {"place", "center", "radius"}, {"closed"})
    closed = doc.get("closed", True)
    if not isinstance(closed, bool):
        raise SchemaError("'closed' must be a boolean")
    return Ball(
        parse_place(doc["place"]),
        parse_rational(doc["center"]),
        parse_int(doc["radius"], "radius"),
        closed,
    )


def cheese_to_json(sc) -> dict:
    if isinstance(sc, EmptyCheese):
        return {"empty": True, "place": sc.place.prime}
    return {"holes": [ball_to_json(h) for h in sc.holes], "outer": ball_to_json(sc.outer)}


def cheese_from_json(doc):
    """A cheese document, an empty marker, or a bare ball (no holes)."""
    if isinstance(doc, dict) and "empty" in doc:
        require_keys(doc, {"empty", "place"})
        if doc["empty"] is not True:
            raise SchemaError("'empty' must be true when present")
        return EmptyCheese(parse_place(doc["place"]))
    if isinstance(doc, dict) and "outer" in doc:
        require_keys(doc, {"outer"}, {"holes"})
        holes = doc.get("holes", [])
        if not isinstance(holes, list):
            raise SchemaError("'holes' must be an array")
        return SwissCheese(ball_from_json(doc["outer"]), tuple(ball_from_json(h) for h in holes))
    return SwissCheese(ball_from_json(doc), ())


def matrix_to_json(rows) -> list:
    return [[format_rational(x) for x in row] for row in rows]


def matrix_from_json(v) -> list[list[Fraction]]:
    if not isinstance(v, list) or not v or any(not isinstance(row, list) for row in v):
        raise SchemaError("matrix must be a nonempty array of arrays")
    m = len(v)
    if any(len(row) != m for row in v):
        raise SchemaError("matrix must be square")
    return [[parse_rational(x) for x in row] for row in v]


def vector_from_json(v) -> list[Fraction]:
    if not isinstance(v, list) or not v:
        raise SchemaError("vector must be a nonempty array")
    return [parse_rational(x) for x in v]


def lattice_to_json(s: LatticeClass) -> dict:
    return {"place": s.place.prime, "rep": matrix_to_json(s.rep)}


def lattice_from_json(doc) -> LatticeClass:
    require_keys(doc, {"place", "rep"})
    rep = matrix_from_json(doc["rep"])
    try:
        return LatticeClass(parse_place(doc["place"]), len(rep), tuple(tuple(r) for r in rep))
    except ValueError as e:
        raise SchemaError(f"not a canonical lattice representative: {e}") from e


def torsor_to_json(t: TorsorElement) -> dict:
    return {"lat": lattice_to_json(t.lat), "residue": list(t.residue_vector)}


def torsor_from_json(doc) -> TorsorElement:
    require_keys(doc, {"lat", "residue"})
    lat = lattice_from_json(doc["lat"])
    res = doc["residue"]
    if not isinstance(res, list):
        raise SchemaError("'residue' must be an array of integers")
    try:
        return TorsorElement(lat, tuple(parse_int(r, "residue coordinate") for r in res))
    except ValueError as e:
        raise SchemaError(str(e)) from e


def poly_to_json(f: FFPoly) -> dict:
    return {"coeffs": list(f.coeffs), "p": f.p}


def poly_from_json(doc) -> FFPoly:
    require_keys(doc, {"p", "coeffs"})
    if not isinstance(doc["coeffs"], list):
        raise SchemaError("'coeffs' must be an array of integers")
    try:
        return FFPoly(
            parse_int(doc["p"], "characteristic"),
            tuple(parse_int(c, "coefficient") for c in doc["coeffs"]),
        )
    except ValueError as e:
        raise SchemaError(str(e)) from e


def splitting_spec_from_json(doc) -> SplittingSpec:
    require_keys(doc, {"p", "degree_map", "r_polys"})
    p = parse_int(doc["p"], "characteristic")
    if not isinstance(doc["degree_map"], dict) or not isinstance(doc["r_polys"], dict):
        raise SchemaError("'degree_map' and 'r_polys' must be objects keyed by degree")
    try:
        degree_map = {int(k): parse_int(v, "degree") for k, v in doc["degree_map"].items()}
        r_polys = {}
        for k, coeffs in doc["r_polys"].items():
            if not isinstance(coeffs, list):
                raise SchemaError("each r polynomial must be a coefficient array")
            r_polys[int(k)] = FFPoly(p, tuple(parse_int(c, "coefficient") for c in coeffs))
        return SplittingSpec(p, degree_map, r_polys)
    except ValueError as e:
        raise SchemaError(str(e)) from e


def splitting_report_to_json(report: SplittingReport) -> dict:
    return {
        "candidates": [
            {"coeffs": list(f.coeffs), "p": f.p, "splits": verdict}
            for f, verdict in report.verdicts
        ],
        "pass": report.passed,
        "r_irreducible": report.r_irreducible,
    }


def problem_from_json(doc) -> ApproxProblem:
    """Problem document: {"places": [p, ...], "constraints": {"p": cheese | [cheese, ...]}}."""
    require_keys(doc, {"places", "constraints"})
    if not isinstance(doc["places"], list) or not doc["places"]:
        raise SchemaError("'places' must be a nonempty array of primes")
    places = [parse_place(p) for p in doc["places"]]
    cons = doc["constraints"]
    if not isinstance(cons, dict):
        raise SchemaError("'constraints' must be an object keyed by place")
    extra = set(cons) - {str(P.prime) for P in places}
    if extra:
        raise SchemaError(f"constraints for unknown places: {sorted(extra)}")
    pairs = []
    for P in places:
        key = str(P.prime)
        if key not in cons:
            raise SchemaError(f"missing constraint for place {key}")
        v = cons[key]
        fam = [cheese_from_json(c) for c in v] if isinstance(v, list) else cheese_from_json(v)
        pairs.append((P, fam))
    return ApproxProblem.build(pairs)
