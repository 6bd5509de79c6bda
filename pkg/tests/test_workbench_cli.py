import json
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, strategies as st

from coringlab.bialgebra_hopf import check_bialgebra, find_antipode
from coringlab.exact_linalg import GF, QQ
from coringlab.workbench_cli import (BUILTINS, Workspace, ERROR_CODES, WorkspaceError, builtin_example, check_object,
                                     corrupted_examples, emit_example, main, normalize, parse_workspace,
                                     replay_witness, run_command, serialize_workspace, validate_workspace)

from conftest import F5

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"
WS_SCHEMA = json.loads((SCHEMAS / "workspace.schema.json").read_text())
REPORT_SCHEMA = json.loads((SCHEMAS / "report.schema.json").read_text())

MINIMAL = '{"field":{"type":"Q"},"algebras":{"k":{"dim":1,"mult":[[[ "1" ]]],"unit":["1"]}}}'


def error_code(text):
    with pytest.raises(WorkspaceError) as e:
        parse_workspace(text)
    assert e.value.code in ERROR_CODES
    return e.value.code


def ws_json(**colls):
    return json.dumps({"field": {"type": "Q"}, **colls})


# -- parser --------------------------------------------------------------------

def test_minimal_workspace():
    ws = parse_workspace(MINIMAL)
    assert ws.field == QQ and ws.algebras["k"].dim == 1


def test_error_codes():
    assert error_code('{"field": {"type": "Q"},') == "syntax-error"
    assert error_code(ws_json(algebras={"k": {"dim": 1, "mult": [[["1/0"]]], "unit": ["1"]}})) == "zero-denominator"
    assert error_code('{"field":{"type":"Fp","p":4}}') == "modulus-not-prime"
    assert error_code(ws_json(algebras={"k": {"dim": 1, "mult": [[["x"]]], "unit": ["1"]}})) == "invalid-scalar"
    assert error_code(ws_json(algebras={"k": {"dim": 2, "mult": [[["1"]]], "unit": ["1"]}})) == "dimension-mismatch"
    assert error_code(ws_json(bimodules={"M": {"left": "A", "right": "k", "dim": 1}})) == "unresolved-reference"
    assert error_code('{"field":{"type":"Q"},"algebras":{},"algebras":{}}') == "duplicate-name"
    assert error_code('{"field":{"type":"R"}}') in {"schema", "unsupported-field"}


def test_syntax_error_has_position():
    with pytest.raises(WorkspaceError) as e:
        parse_workspace('{\n "field": {"type": "Q"},\n}')
    assert "line 3" in e.value.message and "column" in e.value.message


def test_scalar_normalization():
    text = ws_json(algebras={"k": {"dim": 1, "mult": [[["2/2"]]], "unit": ["4/4"]}})
    data = json.loads(normalize(text))
    assert data["algebras"]["k"] == {"dim": 1, "mult": [[["1"]]], "unit": ["1"]}
    text = ws_json(algebras={"k": {"dim": 1, "mult": [[["-6/4"]]], "unit": ["1"]}})
    assert json.loads(normalize(text))["algebras"]["k"]["mult"] == [[["-3/2"]]]
    assert parse_workspace(text).algebras["k"].mult.tolist() == [[Fraction(-3, 2)]]


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=8, max_size=8),
       st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=2, max_size=2))
def test_round_trip_random_constants(cube, unit):
    # the parser does not impose algebra laws, so arbitrary constants must round-trip
    mult = [[[str(cube[4 * i + 2 * j + l]) for l in range(2)] for j in range(2)] for i in range(2)]
    text = ws_json(algebras={"A": {"dim": 2, "mult": mult, "unit": [str(x) for x in unit]}})
    once = normalize(text)
    assert normalize(once) == once
    A = parse_workspace(once).algebras["A"]
    assert [A.unit[i, 0] for i in range(2)] == unit


@pytest.mark.parametrize("name", BUILTINS)
def test_builtin_round_trip_and_schema(name):
    for F in (QQ, F5):
        text = emit_example(name, F)
        assert normalize(text) == text
        assert serialize_workspace(builtin_example(name, F)) == text
        jsonschema.validate(json.loads(text), WS_SCHEMA)


# -- builtins ------------------------------------------------------------------------

def builtin_fields(name):
    out = [QQ, F5, GF(3)]
    if name != "sweedler4":
        out.append(GF(2))
    return out


@pytest.mark.parametrize("name", BUILTINS)
def test_builtins_pass_checkers(name):
    for F in builtin_fields(name):
        rep = validate_workspace(builtin_example(name, F))
        assert rep.ok, (name, F, rep.first_failure())


def test_builtin_examples():
    H = builtin_example("kC2").bialgebras["kC2"]
    assert check_bialgebra(H).ok
    assert not find_antipode(builtin_example("monoid_idem").bialgebras["monoid_idem"]).found
    with pytest.raises(WorkspaceError) as e:
        builtin_example("nosuch")
    assert e.value.code == "unknown-example"
    with pytest.raises(WorkspaceError):
        builtin_example("sweedler4", GF(2))


# -- negative corpus and witness replay -----------------------------------------------

@pytest.mark.parametrize("F", [QQ, F5, GF(2)], ids=repr)
def test_corrupted_examples_fail_with_replayable_witnesses(F):
    corpus = corrupted_examples(F)
    assert len(corpus) >= 8
    for label, (kind, obj) in corpus.items():
        rep = check_object(kind, obj)
        assert not rep.ok, label
        law_witnesses = [c.witness for c in rep.checks if c.verdict == "fail" and "law" in c.witness]
        assert law_witnesses, label
        for w in law_witnesses:
            assert replay_witness(kind, obj, w), (label, w["law"])


def test_witness_does_not_replay_on_fixed_object():
    kind, bad = corrupted_examples(QQ)["kC3 with eps(g) = 0"]
    w = check_object(kind, bad).first_failure().witness
    good = builtin_example("kC3").bialgebras["kC3"]
    assert not replay_witness(kind, good, w)


# -- command line -------------------------------------------------------------------

def run(*argv):
    return run_command(list(argv))


def test_cli_documented_examples():
    out = run("hopf", "battery", "examples:kC2")
    assert out.code == 0 and out.report.data["summary"] == "unanimous yes"
    out = run("solve", "antipode", "examples:monoid_idem")
    assert out.code == 1
    w = out.report.get("antipode exists").witness
    assert w["augmented_rank"] > w["rank"]


def test_cli_exit_codes(tmp_path):
    ws = tmp_path / "ws.json"
    ws.write_text(emit_example("matrix2c"))
    assert run("check", str(ws), "coring", "nosuch").code == 2
    assert run("check", str(ws), "coring").code == 0
    assert run("check", str(tmp_path / "missing.json"), "coring").code == 2
    assert run("frobnicate").code == 2
    assert run("solve", "cointegral", str(ws)).code == 0
    assert run("solve", "cointegral", "examples:dual_kC2@F2").code == 1
    assert run("examples", "list").code == 0
    assert run("examples", "emit", "nosuch").code == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"field":{"type":"Fp","p":4}}')
    out = run("check", str(bad), "algebra", "--json")
    assert out.code == 2 and json.loads(out.text)["checks"][0]["witness"]["code"] == "modulus-not-prime"


def test_cli_other_commands():
    assert run("galois", "gamma", "examples:kC2").code == 0
    assert run("galois", "gamma", "examples:monoid_idem").code == 1
    assert run("galois", "can", "examples:kC2").code == 0
    assert run("fundamental", "examples:kC2").code == 0
    assert run("fundamental", "examples:monoid_idem").code == 1
    assert run("equiv", "coseparable", "examples:matrix2c").code == 0
    assert run("report", "examples:kC3").code == 0


def test_main_streams(capsys):
    assert main(["check", "examples:kC2", "bialgebra"]) == 0
    assert "pass" in capsys.readouterr().out
    assert main(["check", "examples:kC2", "coring", "nosuch"]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error [unresolved-reference]")


def test_probe_budget_env(monkeypatch):
    monkeypatch.setenv("HOPFLAB_PROBES", "1")
    out = run("hopf", "battery", "examples:kC2", "--json")
    assert out.code == 0
    monkeypatch.setenv("HOPFLAB_PROBES", "zero")
    assert run("hopf", "battery", "examples:kC2").code == 2


def test_determinism_and_report_schema():
    for argv in (["hopf", "battery", "examples:kC3"], ["solve", "antipode", "examples:monoid_idem"],
                 ["check", "examples:matrix2c", "coring"], ["examples", "list"]):
        a = run(*argv, "--json", "--no-timing")
        b = run(*argv, "--json", "--no-timing")
        assert a.text == b.text
        jsonschema.validate(json.loads(a.text), REPORT_SCHEMA)


def test_replay_subcommand(tmp_path):
    kind, bad = corrupted_examples(QQ)["kC3 with eps(g) = 0"]
    w = check_object(kind, bad).first_failure().witness
    wf = tmp_path / "w.json"
    wf.write_text(json.dumps(w))
    # the law holds on the well-formed kC3, so replay reports that the failure does not reproduce
    out = run("replay", "examples:kC3", "bialgebra", "--witness", str(wf))
    assert out.code == 0
    assert out.report.checks[0].notes == "law holds at the witnessed input"
    bad_ws = tmp_path / "bad.json"
    bad_ws.write_text(serialize_workspace(Workspace(QQ, algebras={"kC3": bad.algebra}, bialgebras={"kC3": bad})))
    out = run("replay", str(bad_ws), "bialgebra", "--witness", str(wf))
    assert out.code == 1 and out.report.checks[0].notes == "failure reproduced"
