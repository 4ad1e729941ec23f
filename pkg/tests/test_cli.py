import json

import pytest

from volform import ophom as oh
from volform.cli import FUNCTIONS, eval_expr, main
from volform.scalars import make_ring
from volform.textio import parse_expr, values_equal


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("expr,want", [
    ("bracket(x1 dx3, x2 dx3) @ poly n=3", "-1 dx3"),
    ("lich(dx1^dx2; e[0,0,1] e1; e[0,0,-1] e2) @ trig n=3", "1"),
    ("d(dx1)", "0"),
    ("Xfield(x1 dx3)", "-1 e2"),
    ("cocycle(1, 2; e[0,0,1] e1; e[0,0,-1] e2) @ trig n=3", "-1"),
])
def test_eval_examples(expr, want):
    assert eval_expr(expr) == want


@pytest.mark.parametrize("expr", [
    "bracket(x1 dx3, x2 dx3)", "sharp(x2 dx3 - 1/2 x1^2 dx1)", "d(x1 x2 dx3)",
    "delta(x2 e[1,2])", "iota(e1, dx[1,2])", "potential(e[0,0,1] e1) @ trig n=3",
])
def test_printed_values_reparse(expr):
    ring = make_ring("trig" if "trig" in expr else "poly", 3)
    value = parse_expr(expr, ring, FUNCTIONS)
    assert values_equal(parse_expr(eval_expr(expr), ring, FUNCTIONS), value)


def test_decompose_expression_reparses_to_target():
    printed = eval_expr("decompose(x1 e[2,3] + x3 e[1,2])")
    assert values_equal(parse_expr(printed, make_ring("poly", 3), FUNCTIONS),
                        parse_expr("flat(x1 e[2,3] + x3 e[1,2])", make_ring("poly", 3), FUNCTIONS))


def test_eval_errors(capsys):
    code, _, err = run(capsys, "eval", "d(dx1")
    assert code == 2 and "position" in err
    code, _, err = run(capsys, "eval", "d(e1)")
    assert code == 2 and "d:" in err
    code, _, err = run(capsys, "eval", "bracket(dx1, dx[1,2])")
    assert code == 2 and "bracket" in err


def test_eval_header(capsys):
    code, out, _ = run(capsys, "eval", "d(x1 dx2)")
    assert code == 0 and out.splitlines() == ["format-version: 1", "1 dx1^dx2"]


def test_cartan_subcommand(capsys):
    code, out, _ = run(capsys, "cartan", "flat", "e[1,2]")
    assert code == 0 and out.splitlines()[1] == "1 dx3"


def test_decompose_subcommand(tmp_path, capsys):
    f = tmp_path / "b.txt"
    f.write_text("2-vec{ x1 e[2,3] }\n")
    code, out, _ = run(capsys, "decompose", "brackets", "--input", str(f))
    obj = json.loads(out)
    assert code == 0 and obj["verified"] and obj["count"] == 1 and obj["bound"] == 12
    f.write_text("x3\n")
    code, out, _ = run(capsys, "decompose", "squares", "--input", str(f))
    obj = json.loads(out)
    assert code == 0 and obj["potentials"] == ["1 x1 x3 dx2 + 1 dx3"] or obj["verified"]


def test_rep_and_coho(capsys):
    code, out, _ = run(capsys, "rep", "table", "--n", "3", "--kmax", "2")
    assert code == 0 and out.splitlines()[-1].split("\t") == ["3", "2", "15", "15", "true", "0", "2"]
    code, out, _ = run(capsys, "coho", "--algebra", "sl(3)", "--module", "natural(3)", "--q", "1")
    assert code == 0 and out.splitlines()[-1] == "H^1\t0"
    code, out, _ = run(capsys, "coho", "--algebra", "divfree(3,2)", "--q", "2")
    assert code == 0 and "window" in out and "undefined" in out
    code, _, _ = run(capsys, "coho", "--algebra", "gl(3)")
    assert code == 2


def test_torus_subcommands(capsys):
    code, out, _ = run(capsys, "torus", "pairing", "--n", "3")
    assert code == 0 and out.splitlines()[-1] == "rank\t3"
    code, out, _ = run(capsys, "torus", "cocycle", "--sigma", "dx1^dx2",
                       "--X", "e[0,0,1] e1", "--Y", "e[0,0,-1] e2")
    assert code == 0 and out.splitlines()[1] == "1"
    code, _, _ = run(capsys, "torus", "cocycle", "--X", "e1")
    assert code == 2


def test_ophom_subcommand(tmp_path, capsys):
    curl = {"n": 2, "k": 1, "terms": [{"I": [2], "sigma": [1, 0], "value": "1"},
                                      {"I": [1], "sigma": [0, 1], "value": "-1"}]}
    f = tmp_path / "op.json"
    f.write_text(json.dumps(curl))
    code, out, _ = run(capsys, "ophom", "factor", "--input", str(f))
    obj = json.loads(out)
    assert code == 0 and obj["verified"]
    assert all(s["property1"] and s["property2"] for s in obj["transcript"])
    assert oh.from_json(obj["Q"]).terms == {((0, 1), (0, 0)): (make_ring("poly", 2).one(),)}
    f.write_text("{not json")
    assert run(capsys, "ophom", "factor", "--input", str(f))[0] == 2


def test_verify_subset_and_errors(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "cartan", "--scale", "1/50")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "format-version: 1" and lines[-1] == "status: ok"
    assert {ln.split("\t")[0] for ln in lines[4:-2]} == {"cartan"}
    assert run(capsys, "verify", "--suite", "bogus")[0] == 2
    assert run(capsys, "verify", "--scale", "0")[0] == 2
    assert run(capsys, "verify", "--format", "xml")[0] == 2
    code, out, _ = run(capsys, "verify", "--suite", "scalar", "--scale", "1/50", "--format", "json")
    assert code == 0 and json.loads(out)["status"] == "ok"
