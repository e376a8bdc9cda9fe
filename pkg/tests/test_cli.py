import json
from pathlib import Path

import pytest

from semiflat import reproduce
from semiflat import semiring as sr
from semiflat.analyze import run
from semiflat.cli import main
from semiflat.errors import AxiomViolation, BadCaps, ParseError, UnknownReference
from semiflat.reports import EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, SCHEMA, render
from semiflat.semiring import FiniteSemiring
from semiflat.workspace import config_from_dict, parse_workspace

ROOT = Path(__file__).resolve().parents[1]
DEMO = ROOT / "workspaces" / "demo.json"


def write(tmp_path, doc, name="ws.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


def test_parse_chain4_matrix_scan(tmp_path):
    p = write(tmp_path, {"semirings": ["chain:4"],
                         "analyses": [{"op": "matrix_scan", "semiring": "chain:4", "n": 2}]})
    cfg = parse_workspace(p)
    assert "chain:4" in cfg.semirings and cfg.analyses[0].op == "matrix_scan"


def test_unknown_reference(tmp_path):
    p = write(tmp_path, {"analyses": [{"op": "flatness", "subject": "nope", "target": "Z4"}]})
    with pytest.raises(UnknownReference):
        parse_workspace(p)


def test_negative_cap(tmp_path):
    with pytest.raises(BadCaps):
        parse_workspace(write(tmp_path, {"caps": {"tensor_cap": -3}}))
    with pytest.raises(BadCaps):
        config_from_dict({"caps": {"warp": 1}})


def test_parse_error_reports_line(tmp_path):
    p = write(tmp_path, '{\n  "semirings": [\n    "zmod:4",,\n  ]\n}')
    with pytest.raises(ParseError) as exc:
        parse_workspace(p)
    assert exc.value.line == 3


def test_bad_module_table_is_rejected():
    # Z/2 over Z/4 with 2.1 = 1, breaking (1 + 1).m = m + m
    doc = {"semimodules": [{"id": "M", "semiring": "zmod:4", "add": [[0, 1], [1, 0]],
                            "action": [[0, 0], [0, 1], [0, 1], [0, 1]]}]}
    with pytest.raises(AxiomViolation):
        config_from_dict(doc)


def test_empty_analysis_list_is_ok():
    report = run(config_from_dict({}))
    assert report.rows == [] and report.status == "ok" and report.exit_code() == EXIT_OK


def test_demo_workspace_verdicts():
    report = run(parse_workspace(DEMO))
    rows = {r.name: r for r in report.rows}
    assert report.status == "ok"
    assert rows["chain4-profile"].verdict["vn_regular"] is True
    assert rows["chain4-matrix"].verdict["non_regular"] == 1
    z = rows["z2-vs-z4"].verdict
    assert (z["m_flat"], z["i_flat"], z["e_flat"]) == (False, False, False)
    assert rows["z2-vs-z4"].witnesses["m"] == "{0,2}"
    assert rows["z4-ses"].verdict["short_exact"] is True
    assert rows["z4-sflatvon"].verdict["status"] == "witness-found"
    for r in report.rows:
        assert r.method and r.caps


def test_structured_output_is_deterministic():
    cfg = parse_workspace(DEMO)
    a = render(run(cfg), "structured")
    b = render(run(parse_workspace(DEMO), "analysis", jobs=4), "structured")
    assert a == b
    doc = json.loads(a)
    assert doc["schema"] == SCHEMA and [r["name"] for r in doc["rows"]][0] == "chain4-profile"
    assert all("seconds" not in r for r in doc["rows"])


def test_failing_analysis_does_not_abort_batch(tmp_path):
    p = write(tmp_path, {
        "semimodules": [{"id": "F", "semiring": "chain:3", "free": 2, "side": "right"},
                        {"id": "G", "semiring": "chain:3", "free": 2}],
        "analyses": [{"op": "tensor", "right": "F", "left": "G", "name": "too-big"},
                     {"op": "regularity", "semiring": "chain:3", "name": "fine"}],
        "caps": {"tensor_cap": 20}})
    report = run(parse_workspace(p))
    assert [r.status for r in report.rows] == ["inconclusive", "ok"]
    assert report.exit_code() == 3


def test_cli_analyze_and_validate(capsys):
    assert main(["validate", "--workspace", str(DEMO)]) == EXIT_OK
    assert main(["analyze", "--workspace", str(DEMO), "--format", "structured"]) == EXIT_OK
    out = capsys.readouterr().out
    assert SCHEMA in out


def test_cli_input_errors(tmp_path, capsys):
    assert main(["validate", "--workspace", str(tmp_path / "missing.json")]) == EXIT_INPUT
    assert main(["analyze", "--workspace", str(write(tmp_path, {"caps": {"slack": -1}}))]) == EXIT_INPUT
    assert main(["regularity", "--semiring", "chain:1"]) == EXIT_INPUT
    assert main(["flatness", "--subject", "zmod:4/bogus", "--target", "S"]) == EXIT_INPUT
    assert "error" in capsys.readouterr().err


def test_cli_flatness_and_tensor(capsys):
    code = main(["flatness", "--subject", "zmod:4/regular-right/by:0,2", "--target", "zmod:4/regular-left",
                 "--format", "structured"])
    assert code == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["rows"][0]["verdict"]["m_flat"] is False
    assert main(["tensor", "--right", "chain:3/regular-right", "--left", "chain:3/l2.0"]) == EXIT_OK
    assert main(["flatness", "--subject", "chain:3/r3.1", "--target", "S"]) == EXIT_OK
    assert main(["catalog", "list"]) == EXIT_OK
    assert "chain:4" in capsys.readouterr().out


def test_reproduce_only_matrix(capsys):
    assert main(["reproduce-paper", "--only", "matrix"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "matrix" in out and "chain3-summand" not in out


_REAL_CHAIN = sr.chain


def _broken_chain(n):
    good = _REAL_CHAIN(n)
    mul = [list(r) for r in good.mul]
    # one wrong table entry: the element at index 2 squares to zero
    mul[2][2] = 0
    return FiniteSemiring(good.name, good.add, tuple(tuple(r) for r in mul), good.labels)


@pytest.mark.parametrize("row", ["matrix", "chain3-summand"])
def test_fault_injection_fails_the_row(monkeypatch, capsys, row):
    monkeypatch.setattr(sr, "chain", _broken_chain)
    report = reproduce.reproduce_paper([row])
    assert report.rows[0].status != "ok"
    assert main(["reproduce-paper", "--only", row]) != EXIT_OK
    monkeypatch.undo()
    assert reproduce.reproduce_paper([row]).rows[0].status == "ok"


def test_reproduce_unknown_row():
    with pytest.raises(KeyError):
        reproduce.reproduce_paper(["nope"])
    assert EXIT_VIOLATION == 2
