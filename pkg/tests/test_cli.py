import json

import pytest

from seaworks.cli import ParseError, parse_algebra, run_command, serialize_algebra
from seaworks.ea_construct import boolean, boolean_meet, cartesian_product, chain, diamond

C3 = """\
algebra C3
elements 0 a 1
sum a a = 1
"""


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in {
        "c3": C3,
        "c2": "elements 0 1\n",
        "bool4": serialize_algebra(boolean(2)),
        "bad": "algebra X\nelements 0 a 1\n# comment\nsum a a = 1\nsum a a = 0\n",
        "notea": "algebra N\nelements 0 a 1\n",
        "b4prod": serialize_algebra(boolean(2), boolean_meet(boolean(2))),
    }.items():
        p = tmp_path / f"{name}.ea"
        p.write_text(text)
        out[name] = str(p)
    return out


def test_parse_c3():
    af = parse_algebra(C3)
    assert af.name == "C3"
    E = af.algebra
    assert E.oplus("a", "a") == "1"
    assert E.oplus("0", "a") == "a"


def test_parse_c2_implicit():
    E = parse_algebra("elements 0 1").algebra
    assert E.oplus("0", "1") == "1"


def test_whitespace_and_comments():
    af = parse_algebra("  algebra   C3   # name\n\nelements 0   a 1\n  sum a  a =  1 \n")
    assert af.algebra.oplus("a", "a") == "1"


def test_conflict_at_second_line():
    with pytest.raises(ParseError) as exc:
        parse_algebra("algebra C3\nelements 0 a 1\nsum a a = 1\nsum a a = 0\n")
    assert exc.value.line == 4
    assert "line 3" in str(exc.value)


def test_mirror_conflict():
    with pytest.raises(ParseError) as exc:
        parse_algebra("elements 0 a b 1\nsum a b = 1\nsum b a = a\n")
    assert exc.value.line == 3


def test_conflict_with_implicit_zero_rule():
    with pytest.raises(ParseError) as exc:
        parse_algebra("elements 0 a 1\nsum 0 a = 1\n")
    assert exc.value.line == 2


def test_undeclared_identifier():
    with pytest.raises(ParseError) as exc:
        parse_algebra("elements 0 a 1\nsum a b = 1\n")
    assert exc.value.line == 2


def test_missing_unit():
    with pytest.raises(ParseError):
        parse_algebra("elements 0 a\n")


def test_unknown_directive():
    with pytest.raises(ParseError) as exc:
        parse_algebra("elements 0 1\nmeet 0 1 = 0\n")
    assert exc.value.line == 2


def test_partial_product_refused():
    with pytest.raises(ParseError):
        parse_algebra("elements 0 1\nprod 1 1 = 1\n")


@pytest.mark.parametrize("E", [chain(2), chain(4), boolean(3), diamond(),
                               cartesian_product([chain(1), chain(2)])],
                         ids=lambda e: e.name)
def test_round_trip(E):
    again = parse_algebra(serialize_algebra(E)).algebra
    assert again.elements == E.elements
    assert again.table.tolist() == E.table.tolist()
    assert parse_algebra(serialize_algebra(again)).algebra == again


def test_round_trip_with_product():
    E = boolean(2)
    af = parse_algebra(serialize_algebra(E, boolean_meet(E)))
    assert af.product == boolean_meet(af.algebra)


def test_check_exit_codes(files):
    assert run_command(["check", files["c3"], "--quiet"])[0] == 0
    assert run_command(["check", files["notea"], "--quiet"])[0] == 1
    assert run_command(["check", files["bad"], "--quiet"])[0] == 2
    assert run_command(["check", files["b4prod"], "--quiet"])[0] == 0


def test_usage_errors():
    assert run_command(["frobnicate"])[0] == 2
    assert run_command(["check", "/nonexistent/file.ea"])[0] == 2
    assert run_command(["order", "--model", "boolean"])[0] == 2


def test_solve_c3_none(files, tmp_path):
    out = tmp_path / "r.json"
    code, rep = run_command(["solve", files["c3"], "--json", str(out), "--quiet"])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["verdict"] == "none"
    assert data["tables"] == []
    assert data["schema"] == 1


def test_solve_bool4_expect_unique(files):
    code, rep = run_command(["solve", files["bool4"], "--expect", "unique", "--quiet"])
    assert code == 0
    E = boolean(2)
    meet = boolean_meet(E)
    assert rep["tables"][0] == [[meet(a, b) for b in E.elements] for a in E.elements]


def test_solve_expectation_mismatch(files):
    assert run_command(["solve", files["c3"], "--expect", "unique", "--quiet"])[0] == 1


def test_solve_catalog_reference():
    assert run_command(["solve", "diamond", "--expect", "none", "--quiet"])[0] == 0


def test_sharp_and_quotient(files):
    code, rep = run_command(["sharp", files["c3"], "--quiet"])
    assert code == 0 and rep["sharp"] == ["0", "1"]
    code, rep = run_command(["quotient", files["bool4"], "x", "1", "--quiet"])
    assert code == 0 and rep["quotient"] == "x"
    assert run_command(["quotient", files["bool4"], "x", "y", "--quiet"])[0] == 1
    assert run_command(["quotient", files["c3"], "a", "1", "--quiet"])[0] == 2


def test_construct(tmp_path):
    out = tmp_path / "h.ea"
    code, rep = run_command(["construct", "hsum", "boolean:2", "chain:2", "-o", str(out),
                             "--quiet"])
    assert code == 0 and rep["size"] == 5
    assert run_command(["solve", str(out), "--expect", "none", "--quiet"])[0] == 0
    code, rep = run_command(["construct", "catalog", "chain", "3", "--quiet"])
    assert code == 0 and rep["size"] == 4


def test_order_expectations():
    assert run_command(["order", "--model", "omega", "--suite", "cond1", "--quiet"])[0] == 1
    assert run_command(["order", "--model", "omega", "--suite", "cond1", "--expect", "fail",
                        "--quiet"])[0] == 0
    assert run_command(["order", "--model", "boolean", "--suite", "identities", "--quiet"])[0] == 0


def test_hilbert_command():
    code, rep = run_command(["hilbert", "--dim", "2,3", "--samples", "30", "--suite", "thm51",
                             "--quiet"])
    assert code == 0
    assert [r["dim"] for r in rep["results"]] == [2, 3]


def test_fuzzy_command():
    code, rep = run_command(["fuzzy", "quotient", "p=1/4,q=0", "p=1/2,q=1/3", "--quiet"])
    assert code == 0 and rep["result"] == "p=1/2,q=0"
    assert run_command(["fuzzy", "quotient", "p=3/4", "p=1/2", "--quiet"])[0] == 1
    assert run_command(["fuzzy", "probe", "--candidate", "min", "--nmax", "6", "--expect", "fail",
                        "--quiet"])[0] == 0


def test_report_determinism(files, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        run_command(["order", "--model", "fuzzy", "--suite", "cond2", "--samples", "30",
                     "--seed", "5", "--json", str(p), "--quiet"])
    a, b = (json.loads(p.read_text()) for p in paths)
    a.pop("timestamp")
    b.pop("timestamp")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert "wall_time" not in a


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("SEA_SEED", "17")
    _, rep = run_command(["hilbert", "--dim", "2", "--samples", "5", "--quiet"])
    assert rep["seed"] == 17
    _, rep2 = run_command(["hilbert", "--dim", "2", "--samples", "5", "--seed", "17",
                           "--quiet"])
    assert rep["inputs_digest"] == rep2["inputs_digest"]


def test_digest_tracks_inputs(files):
    _, a = run_command(["solve", files["c3"], "--quiet"])
    _, b = run_command(["solve", files["c3"], "--quiet", "--limit", "5"])
    assert a["inputs_digest"] != b["inputs_digest"]


def test_timing_flag(files):
    _, rep = run_command(["check", files["c3"], "--timing", "--quiet"])
    assert rep["wall_time"] >= 0
