import json
import subprocess
import sys
from fractions import Fraction

import pytest

from valq import (
    Ball,
    FFPoly,
    SwissCheese,
    canon,
    dist,
    sc_normalize,
    torsor_from_matrix,
    val,
)
from valq.cli import main
from valq import jsonio

from helpers import P2, P3, P5, rand_cheese, rand_invertible, rng


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_proc(*argv, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "valq", *argv],
        capture_output=True,
        text=True,
        input=stdin,
    )
    return proc.returncode, proc.stdout, proc.stderr


BALL_A = json.dumps({"place": 5, "center": "0", "radius": 2})
BALL_B = json.dumps({"place": 5, "center": "1", "radius": 2})


class TestVerbs:
    def test_val_example(self, capsys):
        code, out, _ = run_cli(capsys, "val", "-p", "2", "12")
        assert code == 0 and out == '{"val":2}\n'

    def test_val_infinity(self, capsys):
        code, out, _ = run_cli(capsys, "val", "-p", "5", "0")
        assert code == 0 and out == '{"val":"Infinity"}\n'

    def test_residue(self, capsys):
        code, out, _ = run_cli(capsys, "residue", "-p", "2", "3/5")
        assert code == 0 and out == '{"residue":1}\n'

    def test_code(self, capsys):
        code, out, _ = run_cli(capsys, "code", '["2","3"]')
        assert code == 0 and json.loads(out) == {"coeffs": ["1", "-5", "6"]}

    def test_ball_dist_example(self, capsys):
        doc = json.dumps({"a": json.loads(BALL_A), "b": json.loads(BALL_B)})
        code, out, _ = run_cli(capsys, "ball", "dist", doc)
        assert code == 0 and out == '{"dist":0}\n'

    def test_ball_dist_nested_is_semantic_error(self, capsys):
        doc = json.dumps(
            {
                "a": {"place": 2, "center": "0", "radius": 3},
                "b": {"place": 2, "center": "0", "radius": 1},
            }
        )
        code, out, err = run_cli(capsys, "ball", "dist", doc)
        assert code == 1 and out == ""
        assert json.loads(err)["error"] == "NotDisjoint"

    def test_ball_compare(self, capsys):
        doc = json.dumps({"a": json.loads(BALL_A), "b": json.loads(BALL_B)})
        code, out, _ = run_cli(capsys, "ball", "compare", doc)
        assert json.loads(out) == {"compare": "Disjoint"}

    def test_ball_member_and_cover(self, capsys):
        doc = json.dumps({"ball": {"place": 2, "center": "0", "radius": 1}, "x": "2"})
        assert run_cli(capsys, "ball", "member", doc)[1] == '{"member":true}\n'
        doc = json.dumps(
            {
                "balls": [
                    {"place": 2, "center": "0", "radius": 3},
                    {"place": 2, "center": "2", "radius": 3},
                ]
            }
        )
        code, out, _ = run_cli(capsys, "ball", "cover", doc)
        assert json.loads(out) == {"center": "0", "closed": True, "place": 2, "radius": 1}

    def test_ball_generic(self, capsys):
        doc = json.dumps(
            {
                "chain": [{"place": 2, "center": "0", "radius": 3}],
                "avoid": [{"place": 2, "center": "0", "radius": 4}],
            }
        )
        code, out, _ = run_cli(capsys, "ball", "generic", doc)
        assert json.loads(out) == {"point": "8"}

    def test_sc_normalize_emits_canonical(self, capsys):
        doc = json.dumps(
            {
                "outer": {"place": 2, "center": "0", "radius": 1},
                "holes": [
                    {"place": 2, "center": "0", "radius": 3},
                    {"place": 2, "center": "0", "radius": 2},
                ],
            }
        )
        code, out, _ = run_cli(capsys, "sc", "normalize", doc)
        assert json.loads(out) == {
            "holes": [{"center": "0", "closed": True, "place": 2, "radius": 2}],
            "outer": {"center": "0", "closed": True, "place": 2, "radius": 1},
        }

    def test_sc_normalize_empty_form(self, capsys):
        doc = json.dumps(
            {
                "outer": {"place": 2, "center": "0", "radius": 0},
                "holes": [
                    {"place": 2, "center": "0", "radius": 1},
                    {"place": 2, "center": "1", "radius": 1},
                ],
            }
        )
        code, out, _ = run_cli(capsys, "sc", "normalize", doc)
        assert json.loads(out) == {"empty": True, "place": 2}

    def test_lat_canon_and_eq(self, capsys):
        doc = json.dumps({"place": 2, "matrix": [["2", "1"], ["0", "1"]]})
        code, out, _ = run_cli(capsys, "lat", "canon", doc)
        assert json.loads(out) == {"place": 2, "rep": [["2", "1"], ["0", "1"]]}
        doc = json.dumps({"place": 2, "a": [["2", "1"], ["0", "1"]], "b": [["1", "0"], ["1", "2"]]})
        assert run_cli(capsys, "lat", "eq", doc)[1] == '{"equal":true}\n'

    def test_tor_roundtrip_verbs(self, capsys):
        doc = json.dumps({"place": 2, "matrix": [["2", "0"], ["0", "1"]]})
        code, out, _ = run_cli(capsys, "tor", "make", doc)
        tor = json.loads(out)
        assert tor == {"lat": {"place": 2, "rep": [["2", "0"], ["0", "1"]]}, "residue": [1, 0]}
        code, out, _ = run_cli(capsys, "tor", "combine", json.dumps({"parts": [tor, tor]}))
        combined = json.loads(out)
        code, out, _ = run_cli(
            capsys, "tor", "project", json.dumps({"torsor": combined, "block": 2, "dims": [2, 2]})
        )
        assert json.loads(out) == tor

    def test_approx_solve(self, capsys):
        doc = json.dumps(
            {
                "places": [2, 3],
                "constraints": {
                    "2": {"place": 2, "center": "1", "radius": 3},
                    "3": {"place": 3, "center": "0", "radius": 2},
                },
            }
        )
        code, out, _ = run_cli(capsys, "approx", "solve", doc)
        assert json.loads(out) == {"solution": "9", "verified": True}

    def test_approx_empty_constraint(self, capsys):
        doc = json.dumps(
            {
                "places": [2],
                "constraints": {
                    "2": {
                        "outer": {"place": 2, "center": "0", "radius": 1},
                        "holes": [
                            {"place": 2, "center": "0", "radius": 2},
                            {"place": 2, "center": "2", "radius": 2},
                        ],
                    }
                },
            }
        )
        code, out, err = run_cli(capsys, "approx", "solve", doc)
        assert code == 1 and json.loads(err)["error"] == "EmptyConstraint"

    def test_ff_verbs(self, capsys):
        assert run_cli(capsys, "ff", "irred", '{"p":2,"coeffs":[1,1,1]}')[1] == '{"irreducible":true}\n'
        assert run_cli(capsys, "ff", "separable", '{"p":2,"coeffs":[0,1,1]}')[1] == '{"separable":true}\n'
        doc = json.dumps({"f": {"p": 2, "coeffs": [1, 1, 0, 1]}, "r": {"p": 2, "coeffs": [1, 1, 1]}})
        assert run_cli(capsys, "ff", "splits", doc)[1] == '{"splits":false}\n'
        doc = json.dumps(
            {
                "spec": {"p": 2, "degree_map": {"2": 2}, "r_polys": {"2": [1, 1, 1]}},
                "m": 2,
                "candidates": [[1, 1, 1], [0, 1, 1]],
            }
        )
        code, out, _ = run_cli(capsys, "ff", "check", doc)
        report = json.loads(out)
        assert report["pass"] is True and report["r_irreducible"] is True


class TestInputChannels:
    def test_stdin(self):
        code, out, _ = run_proc("ff", "irred", stdin='{"p":2,"coeffs":[1,1,1]}')
        assert code == 0 and out == '{"irreducible":true}\n'

    def test_file(self, tmp_path, capsys):
        path = tmp_path / "doc.json"
        path.write_text('{"p":2,"coeffs":[1,1,1]}')
        code, out, _ = run_cli(capsys, "ff", "irred", "--file", str(path))
        assert code == 0 and out == '{"irreducible":true}\n'

    def test_pretty(self, capsys):
        code, out, _ = run_cli(capsys, "--pretty", "val", "-p", "2", "12")
        assert code == 0 and out == '{\n  "val": 2\n}\n'


class TestErrors:
    def test_bad_json_is_schema_error(self, capsys):
        code, out, err = run_cli(capsys, "ff", "irred", "{not json")
        assert code == 2 and json.loads(err)["error"] == "SchemaError"

    def test_bad_rational_is_schema_error(self, capsys):
        code, _, err = run_cli(capsys, "val", "-p", "2", "1/-2")
        assert code == 2 and json.loads(err)["error"] == "SchemaError"

    def test_nonprime_place_is_schema_error(self, capsys):
        code, _, err = run_cli(capsys, "val", "-p", "4", "12")
        assert code == 2

    def test_unknown_keys_rejected(self, capsys):
        code, _, err = run_cli(capsys, "ball", "member", '{"ball":{"place":2,"center":"0","radius":1},"x":"2","y":"3"}')
        assert code == 2

    def test_unknown_verb_exits_2(self):
        code, out, err = run_proc("bogus")
        assert code == 2

    def test_missing_verb_exits_2(self):
        code, out, err = run_proc("ball")
        assert code == 2


class TestRoundTrip:
    def test_ball_cheese_roundtrip(self):
        r = rng(501)
        for trial in range(60):
            P = (P2, P3, P5)[trial % 3]
            sc = sc_normalize(rand_cheese(r, P))
            doc = jsonio.cheese_to_json(sc)
            assert jsonio.cheese_from_json(json.loads(json.dumps(doc))) == sc

    def test_lattice_torsor_roundtrip(self):
        r = rng(502)
        for trial in range(40):
            P = (P2, P3, P5)[trial % 3]
            t = torsor_from_matrix(rand_invertible(r, r.randint(1, 3)), P)
            doc = json.loads(json.dumps(jsonio.torsor_to_json(t)))
            assert jsonio.torsor_from_json(doc) == t

    def test_poly_roundtrip(self):
        f = FFPoly(7, (3, 0, 6, 1))
        assert jsonio.poly_from_json(json.loads(json.dumps(jsonio.poly_to_json(f)))) == f

    def test_rational_roundtrip(self):
        for x in (Fraction(0), Fraction(-3, 7), Fraction(22), Fraction(5, 2)):
            assert jsonio.parse_rational(jsonio.format_rational(x)) == x

    def test_open_ball_input_normalizes(self):
        doc = {"place": 2, "center": "0", "radius": 1, "closed": False}
        b = jsonio.ball_from_json(doc)
        assert b == Ball(P2, 0, 2)
        assert jsonio.ball_to_json(b)["radius"] == 2


class TestNoAddedSemantics:
    def test_output_matches_library(self, capsys):
        # dist verb equals the library call on the parsed arguments
        a, b = Ball(P5, 0, 2), Ball(P5, 1, 2)
        doc = json.dumps({"a": jsonio.ball_to_json(a), "b": jsonio.ball_to_json(b)})
        _, out, _ = run_cli(capsys, "ball", "dist", doc)
        assert json.loads(out)["dist"] == dist(a, b)
        _, out, _ = run_cli(capsys, "val", "-p", "3", "18")
        assert json.loads(out)["val"] == val(18, P3)
