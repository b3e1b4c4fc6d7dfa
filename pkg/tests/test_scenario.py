import json
import os

import pytest

from hopfcyclic.scenario import (
    DimensionMismatch, ParseError, ReferenceError, ReportDocument, emit,
    parse_scenario, parse_scenario_text, run,
)
from hopfcyclic.cli import main

HERE = os.path.dirname(__file__)
SCEN = os.path.join(HERE, "..", "src", "hopfcyclic", "scenarios")
GOLD = os.path.join(HERE, "golden")


def _scen(name):
    return os.path.join(SCEN, name + ".json")


def test_parse_trivial():
    doc = parse_scenario(_scen("trivial"))
    assert doc.field_name == "Q"
    assert len([c for c, _ in doc.objects.values()
                if c == "hopf_algebroids"]) == 1
    assert len(doc.tasks) == 2


def test_parse_pair():
    doc = parse_scenario(_scen("pair_e2"))
    assert sorted(doc.objects) == ["A", "H", "m"]
    assert sorted(doc.elements) == ["g", "x"]
    assert len(doc.tasks) == 5


def test_dangling_reference_named():
    text = json.dumps({"field": "Q",
                       "tasks": [{"kind": "validate", "object": "nope"}]})
    with pytest.raises(ReferenceError) as ei:
        parse_scenario_text(text)
    assert "nope" in str(ei.value)


def test_element_dimension_mismatch():
    with open(_scen("pair_e2")) as fh:
        data = json.load(fh)
    data["elements"]["x"] = ["0", "1", "0"]
    with pytest.raises(DimensionMismatch):
        parse_scenario_text(json.dumps(data))


def test_bad_field_and_bad_json():
    with pytest.raises(ParseError):
        parse_scenario_text("{not json")
    with pytest.raises(ParseError):
        parse_scenario_text(json.dumps({"field": "R"}))


def test_duplicate_name_rejected():
    text = json.dumps({
        "field": "Q",
        "algebras": {"H": {"preset": "scalar"}},
        "hopf_algebroids": {"H": {"preset": "trivial"}},
    })
    with pytest.raises(ParseError):
        parse_scenario_text(text)


def test_run_trivial_homology():
    doc = parse_scenario(_scen("trivial"))
    rep = run(doc)
    assert rep.ok
    hc = rep.tasks[1]
    assert hc["theory"] == "HC"
    assert [r["dim"] for r in hc["table"]] == [1, 0, 1, 0]


def test_run_pair_all_pass():
    doc = parse_scenario(_scen("pair_e2"))
    rep = run(doc)
    assert rep.ok, [t for t in rep.tasks if t["status"] != "pass"]
    assert [t["status"] for t in rep.tasks] == ["pass"] * 5


def test_char5_error_recorded_others_run():
    doc = parse_scenario(_scen("trivial"), field_override="F5")
    rep = run(doc)
    statuses = {t["kind"]: t["status"] for t in rep.tasks}
    assert statuses["validate"] == "pass"
    hc = [t for t in rep.tasks if t["kind"] == "homology"][0]
    assert hc["status"] == "error"
    assert hc["error"] == "CharNotZero"
    assert not rep.ok


def test_emit_empty_report():
    assert emit(ReportDocument()) == '{"version":1,"tasks":[]}'


def test_scenario_round_trip():
    for name in ("trivial", "pair_e2"):
        doc = parse_scenario(_scen(name))
        doc2 = parse_scenario_text(doc.to_json(), name=doc.name)
        assert doc2.data == doc.data
        assert emit(run(doc2)) == emit(run(doc))


def test_reports_match_goldens():
    for name in ("trivial", "pair_e2"):
        doc = parse_scenario(_scen(name))
        out = emit(run(doc)) + "\n"
        with open(os.path.join(GOLD, name + ".report.json")) as fh:
            assert out == fh.read(), name


def test_deterministic_across_runs():
    a = emit(run(parse_scenario(_scen("pair_e2"))))
    b = emit(run(parse_scenario(_scen("pair_e2"))))
    assert a == b


def test_parallel_matches_sequential():
    doc = parse_scenario(_scen("pair_e2"))
    seq = emit(run(doc))
    par = emit(run(parse_scenario(_scen("pair_e2")), parallel=True))
    assert seq == par


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["report", _scen("pair_e2")]) == 0
    capsys.readouterr()
    assert main(["homology", _scen("trivial"), "--field", "F5"]) == 1
    capsys.readouterr()
    assert main(["report", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": "Q", "tasks": [{"kind": "validate", '
                   '"object": "ghost"}]}')
    assert main(["report", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "ghost" in err


def test_cli_output_file_and_text(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["report", _scen("trivial"), "-o", str(out)]) == 0
    with open(os.path.join(GOLD, "trivial.report.json")) as fh:
        assert out.read_text() == fh.read()
    assert main(["validate", _scen("trivial"), "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert "total: 1 passed, 0 failed, 0 errors" in text


def test_verbs_filter_tasks():
    doc = parse_scenario(_scen("pair_e2"))
    rep = run(doc, kinds=("induced", "hopf_galois"))
    assert [t["kind"] for t in rep.tasks] == \
        ["induced", "hopf_galois", "hopf_galois"]


def test_explicit_scalar_tuple_and_string_forms():
    base = {
        "field": "Q",
        "algebras": {"A": {"dim": 2, "unit": ["1", "0"],
                           "mul": [[0, 0, 0, "1"], [0, 1, 1, "1/1"],
                                   [1, 0, 1, 1, 1]]}},
        "hopf_algebroids": {"H": {"pair_of": "A"}},
        "tasks": [{"kind": "validate", "object": "H"}],
    }
    rep = run(parse_scenario_text(json.dumps(base)))
    assert rep.ok
