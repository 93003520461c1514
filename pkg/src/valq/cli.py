"""Deterministic command line front end.

Every verb maps onto exactly one library operation.  Arguments arrive as a
JSON document (inline, --file, or standard input), except the scalar verbs
``val`` and ``residue`` which take -p and a positional rational.  Output is
canonical JSON (sorted keys, compact separators) on standard output;
errors go to standard error as {"error": code, "detail": ...}.

Exit codes: 0 success, 1 semantic error, 2 parse or schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import jsonio
from .approx import meet_lattice_cosets, meet_torsor_cosets, solve_1d, solve_nd
from .balls import (
    BallChain,
    compare,
    dist,
    generic_point,
    member,
    min_closed_cover,
    sc_is_empty,
    sc_member,
    sc_normalize,
)
from .errors import SchemaError, ValqError
from .ffpoly import check_splitting, ff_irreducible, ff_separable, ff_splits_mod
from .lattices import (
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
from .valued_field import Place, code_finite_set, residue, val


def _place(n: int) -> Place:
    try:
        return Place(n)
    except ValueError as e:
        raise SchemaError(str(e)) from e


def _doc(args):
    if getattr(args, "json", None) is not None:
        text = args.json
    elif getattr(args, "file", None):
        try:
            text = Path(args.file).read_text()
        except OSError as e:
            raise SchemaError(f"cannot read {args.file}: {e}") from e
    else:
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from e


# one handler per verb; each returns the object to emit

def _h_val(args):
    return {"val": jsonio.extint_to_json(val(jsonio.parse_rational(args.value), _place(args.place)))}


def _h_residue(args):
    return {"residue": residue(jsonio.parse_rational(args.value), _place(args.place))}


def _h_code(args):
    doc = _doc(args)
    if not isinstance(doc, list):
        raise SchemaError("expected an array of rationals")
    points = [jsonio.parse_rational(x) for x in doc]
    try:
        coeffs = code_finite_set(points)
    except ValueError as e:
        raise SchemaError(str(e)) from e
    return {"coeffs": [jsonio.format_rational(c) for c in coeffs]}


def _h_ball_member(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"ball", "x"})
    return {"member": member(jsonio.parse_rational(doc["x"]), jsonio.ball_from_json(doc["ball"]))}


def _h_ball_compare(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"a", "b"})
    rel = compare(jsonio.ball_from_json(doc["a"]), jsonio.ball_from_json(doc["b"]))
    return {"compare": rel.value}


def _h_ball_dist(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"a", "b"})
    return {"dist": dist(jsonio.ball_from_json(doc["a"]), jsonio.ball_from_json(doc["b"]))}


def _h_ball_cover(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"balls"})
    if not isinstance(doc["balls"], list):
        raise SchemaError("'balls' must be an array")
    return jsonio.ball_to_json(min_closed_cover([jsonio.ball_from_json(b) for b in doc["balls"]]))


def _h_ball_generic(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"chain"}, {"avoid"})
    if not isinstance(doc["chain"], list):
        raise SchemaError("'chain' must be an array")
    avoid = doc.get("avoid", [])
    if not isinstance(avoid, list):
        raise SchemaError("'avoid' must be an array")
    try:
        chain = BallChain(tuple(jsonio.ball_from_json(b) for b in doc["chain"]))
    except ValueError as e:
        raise SchemaError(str(e)) from e
    x = generic_point(chain, tuple(jsonio.ball_from_json(b) for b in avoid))
    return {"point": jsonio.format_rational(x)}


def _h_sc_normalize(args):
    return jsonio.cheese_to_json(sc_normalize(jsonio.cheese_from_json(_doc(args))))


def _h_sc_member(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"cheese", "x"})
    return {
        "member": sc_member(jsonio.parse_rational(doc["x"]), jsonio.cheese_from_json(doc["cheese"]))
    }


def _h_sc_empty(args):
    return {"empty": sc_is_empty(jsonio.cheese_from_json(_doc(args)))}


def _h_lat_canon(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"place", "matrix"})
    s = canon(jsonio.matrix_from_json(doc["matrix"]), jsonio.parse_place(doc["place"]))
    return jsonio.lattice_to_json(s)


def _h_lat_eq(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"place", "a", "b"})
    return {
        "equal": lat_eq(
            jsonio.matrix_from_json(doc["a"]),
            jsonio.matrix_from_json(doc["b"]),
            jsonio.parse_place(doc["place"]),
        )
    }


def _h_lat_member(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"lat", "x"})
    s = jsonio.lattice_from_json(doc["lat"])
    return {"member": lattice_member(jsonio.vector_from_json(doc["x"]), s)}


def _h_lat_neighborhood(args):
    s = jsonio.lattice_from_json(_doc(args))
    balls = open_neighborhood(s)
    return {"balls": [[jsonio.ball_to_json(b) for b in row] for row in balls]}


def _h_tor_make(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"place", "matrix"})
    t = torsor_from_matrix(jsonio.matrix_from_json(doc["matrix"]), jsonio.parse_place(doc["place"]))
    return jsonio.torsor_to_json(t)


def _h_tor_eq(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"a", "b"})
    return {"equal": torsor_eq(jsonio.torsor_from_json(doc["a"]), jsonio.torsor_from_json(doc["b"]))}


def _h_tor_embed(args):
    return jsonio.torsor_to_json(lattice_to_torsor(jsonio.lattice_from_json(_doc(args))))


def _h_tor_combine(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"parts"})
    if not isinstance(doc["parts"], list):
        raise SchemaError("'parts' must be an array of torsor elements")
    return jsonio.torsor_to_json(
        combine_torsors([jsonio.torsor_from_json(t) for t in doc["parts"]])
    )


def _h_tor_project(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"torsor", "block", "dims"})
    if not isinstance(doc["dims"], list):
        raise SchemaError("'dims' must be an array of integers")
    t = project_torsor(
        jsonio.torsor_from_json(doc["torsor"]),
        jsonio.parse_int(doc["block"], "block"),
        [jsonio.parse_int(d, "dim") for d in doc["dims"]],
    )
    return jsonio.torsor_to_json(t)


def _h_approx_solve(args):
    problem = jsonio.problem_from_json(_doc(args))
    x = solve_1d(problem)
    return {"solution": jsonio.format_rational(x), "verified": True}


def _h_approx_solve_nd(args):
    problem = jsonio.problem_from_json(_doc(args))
    widths = {len(fam) for fam in problem.constraints}
    if len(widths) != 1:
        raise SchemaError("all places must constrain the same number of coordinates")
    xs = solve_nd(problem, widths.pop())
    return {"solution": [jsonio.format_rational(x) for x in xs], "verified": True}


def _h_approx_meet_lattices(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"classes"})
    if not isinstance(doc["classes"], list):
        raise SchemaError("'classes' must be an array of lattice classes")
    C = meet_lattice_cosets([jsonio.lattice_from_json(s) for s in doc["classes"]])
    return {"solution": jsonio.matrix_to_json(C), "verified": True}


def _h_approx_meet_torsors(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"torsors"})
    if not isinstance(doc["torsors"], list):
        raise SchemaError("'torsors' must be an array of torsor elements")
    C, d = meet_torsor_cosets([jsonio.torsor_from_json(t) for t in doc["torsors"]])
    return {
        "solution": {
            "matrix": jsonio.matrix_to_json(C),
            "vector": [jsonio.format_rational(x) for x in d],
        },
        "verified": True,
    }


def _h_ff_irred(args):
    return {"irreducible": ff_irreducible(jsonio.poly_from_json(_doc(args)))}


def _h_ff_separable(args):
    return {"separable": ff_separable(jsonio.poly_from_json(_doc(args)))}


def _h_ff_splits(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"f", "r"})
    f, r = jsonio.poly_from_json(doc["f"]), jsonio.poly_from_json(doc["r"])
    if f.p != r.p:
        raise SchemaError("'f' and 'r' must share a characteristic")
    return {"splits": ff_splits_mod(f, r)}


def _h_ff_check(args):
    doc = _doc(args)
    jsonio.require_keys(doc, {"spec", "m", "candidates"})
    spec = jsonio.splitting_spec_from_json(doc["spec"])
    if not isinstance(doc["candidates"], list):
        raise SchemaError("'candidates' must be an array of coefficient arrays")
    cands = []
    for c in doc["candidates"]:
        if isinstance(c, list):
            cands.append(
                jsonio.poly_from_json({"p": spec.p, "coeffs": c})
            )
        else:
            cands.append(jsonio.poly_from_json(c))
    try:
        report = check_splitting(spec, jsonio.parse_int(doc["m"], "m"), cands)
    except ValueError as e:
        raise SchemaError(str(e)) from e
    return jsonio.splitting_report_to_json(report)


def _add_json_args(sub):
    sub.add_argument("json", nargs="?", default=None, help="inline JSON document")
    sub.add_argument("--file", help="read the JSON document from a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="valq",
        description="exact p-adic balls, lattices and approximation over Q",
    )
    parser.add_argument("--pretty", action="store_true", help="indent the JSON output")
    top = parser.add_subparsers(dest="group", required=True)

    for name, handler, flag in (("val", _h_val, True), ("residue", _h_residue, True)):
        sub = top.add_parser(name, help=f"{name} of a rational at a place")
        sub.add_argument("-p", "--place", type=int, required=True, help="prime of the place")
        sub.add_argument("value", help="rational, written a/b or a")
        sub.set_defaults(handler=handler)

    sub = top.add_parser("code", help="monic-polynomial code of a finite set")
    _add_json_args(sub)
    sub.set_defaults(handler=_h_code)

    groups = {
        "ball": (
            ("member", _h_ball_member),
            ("compare", _h_ball_compare),
            ("dist", _h_ball_dist),
            ("cover", _h_ball_cover),
            ("generic", _h_ball_generic),
        ),
        "sc": (
            ("normalize", _h_sc_normalize),
            ("member", _h_sc_member),
            ("empty", _h_sc_empty),
        ),
        "lat": (
            ("canon", _h_lat_canon),
            ("eq", _h_lat_eq),
            ("member", _h_lat_member),
            ("neighborhood", _h_lat_neighborhood),
        ),
        "tor": (
            ("make", _h_tor_make),
            ("eq", _h_tor_eq),
            ("embed", _h_tor_embed),
            ("combine", _h_tor_combine),
            ("project", _h_tor_project),
        ),
        "approx": (
            ("solve", _h_approx_solve),
            ("solve-nd", _h_approx_solve_nd),
            ("meet-lattices", _h_approx_meet_lattices),
            ("meet-torsors", _h_approx_meet_torsors),
        ),
        "ff": (
            ("irred", _h_ff_irred),
            ("separable", _h_ff_separable),
            ("splits", _h_ff_splits),
            ("check", _h_ff_check),
        ),
    }
    for group, verbs in groups.items():
        gp = top.add_parser(group)
        gsub = gp.add_subparsers(dest="verb", required=True)
        for verb, handler in verbs:
            sub = gsub.add_parser(verb)
            _add_json_args(sub)
            sub.set_defaults(handler=handler)
    return parser


def _emit(obj, pretty: bool) -> None:
    if pretty:
        text = json.dumps(obj, sort_keys=True, indent=2)
    else:
        text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    sys.stdout.write(text + "\n")


def _fail(code: str, detail: str, exit_code: int) -> int:
    sys.stderr.write(
        json.dumps({"detail": detail, "error": code}, sort_keys=True, separators=(",", ":")) + "\n"
    )
    return exit_code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.handler(args)
    except SchemaError as e:
        return _fail("SchemaError", str(e), 2)
    except ValqError as e:
        return _fail(e.code, str(e), 1)
    _emit(result, args.pretty)
    return 0


if __name__ == "__main__":
    sys.exit(main())
