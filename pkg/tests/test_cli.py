import io
import subprocess
import sys
from pathlib import Path

import pytest

from gradedcp.cli import EXIT_INPUT, EXIT_OK, EXIT_RESOURCE, main
from gradedcp.exactalg import ParseError
from gradedcp.fixtures import FIXTURES
from gradedcp.report import AnalysisReport
from gradedcp.verdict import GradedVerdict

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def verdicts(tsv: str) -> dict:
    return {v.property: v.status for v in AnalysisReport.from_tsv(tsv).verdicts}


def test_single_edge_graph():
    code, out, _ = run("analyze-graph", str(DATA / "single_edge.graph"), "--format", "tsv")
    assert code == EXIT_OK
    v = verdicts(out)
    assert v["strongly"] == "certified_no"
    assert v["epsilon_strongly"] == "certified_yes"
    assert v["semi_full[k=1,bimodule]"] == "certified_yes"
    assert v["semi_full[k=1,ideal]"] == "certified_yes"


def test_single_loop_graph():
    code, out, _ = run("analyze-graph", str(DATA / "single_loop.graph"), "--format", "tsv")
    assert code == EXIT_OK
    rep = AnalysisReport.from_tsv(out)
    strong = next(v for v in rep.verdicts if v.property == "strongly")
    assert strong.status == "certified_yes" and "1 =" in strong.witness


def test_five_vertex_semantics_note():
    code, out, _ = run("analyze-graph", str(DATA / "five_vertex.graph"), "--format", "tsv")
    assert code == EXIT_OK
    rep = AnalysisReport.from_tsv(out)
    assert any("semantics differ" in n for n in rep.notes)
    code, out, _ = run("analyze-graph", str(DATA / "five_vertex.graph"), "--semantics", "ideal", "--format", "tsv")
    assert not any(p.endswith("bimodule]") for p in verdicts(out))


def test_tsv_three_fields_and_round_trip():
    for cmd, name in (
        ("analyze-graph", "five_vertex.graph"),
        ("analyze-system", "single_edge.rsys"),
        ("analyze-cslp", "rose2_corner.cslp"),
    ):
        code, out, _ = run(cmd, str(DATA / name), "--format", "tsv", "--degree-bound", "2")
        assert code == EXIT_OK
        for line in out.splitlines():
            fields = line.split("\t")
            assert len(fields) == (2 if line.startswith("#") else 3)
        rep = AnalysisReport.from_tsv(out)
        assert rep.to_tsv() == out


def test_report_round_trip_object():
    rep = AnalysisReport.for_text("graph", "x.graph", "vertex v\n", {"D": 2})
    rep.add(GradedVerdict("strongly", "certified_no", "sink v:\tv != 0"))
    rep.add(GradedVerdict("symmetric", "inconclusive", note="bound"))
    rep.notes.append("a note")
    back = AnalysisReport.from_tsv(rep.to_tsv())
    assert back == rep.normalized()
    assert back.status("symmetric") == "inconclusive" and back.status("missing") is None


@pytest.mark.parametrize(
    "text",
    ["# kind\tgraph\textra\n", "# colour\tred\n", "strongly\tcertified_yes\n", "strongly\tmaybe\tx\n"],
)
def test_report_parse_errors(text):
    with pytest.raises(ParseError):
        AnalysisReport.from_tsv(text)


def test_deterministic():
    a = run("analyze-cslp", str(DATA / "swap.cslp"), "--format", "tsv")
    b = run("analyze-cslp", str(DATA / "swap.cslp"), "--format", "tsv")
    assert a == b
    a = run("analyze-graph", str(DATA / "rose2.graph"))
    assert a == run("analyze-graph", str(DATA / "rose2.graph"))


def test_system_report():
    code, out, _ = run("analyze-system", str(DATA / "single_edge.rsys"), "--format", "tsv")
    v = verdicts(out)
    assert code == EXIT_OK
    assert v["valid_system"] == v["unital"] == v["fs_prime"] == "certified_yes"
    assert v["faithful_ideal"] == "certified_yes"
    assert v["psi_surjective"] == "certified_no"
    # psi onto only v2, so the sufficient criterion has nothing to certify
    assert v["strongly"] == "inconclusive"


def test_cslp_report():
    code, out, _ = run("analyze-cslp", str(DATA / "rose2_corner.cslp"), "--format", "tsv", "--degree-bound", "2")
    rep = AnalysisReport.from_tsv(out)
    assert code == EXIT_OK
    assert rep.status("strongly") == "certified_yes"
    assert rep.status("artinian") == "certified_no"
    assert any("differs from e" in n for n in rep.notes)


def test_malformed_graph(tmp_path):
    p = tmp_path / "bad.graph"
    p.write_text("vertex v1\nedge f1 v1 v9\n")
    code, out, err = run("analyze-graph", str(p))
    assert code == EXIT_INPUT and out == ""
    assert "line 2" in err


def test_missing_file_and_bad_bounds(tmp_path):
    assert run("analyze-graph", str(tmp_path / "nope.graph"))[0] == EXIT_INPUT
    code, _, err = run("analyze-graph", str(DATA / "rose2.graph"), "--degree-bound", "0")
    assert code == EXIT_INPUT and "degree-bound" in err


def test_resource_cap(tmp_path):
    p = tmp_path / "big.rsys"
    p.write_text(
        "ring dim 1\nring unit 1\nmul 1 1 : 1\nmod Q dim 2\nQleft 1 1 : 1 0\nQleft 1 2 : 0 1\n"
        "Qright 1 1 : 1 0\nQright 2 1 : 0 1\nmod P dim 2\nPleft 1 1 : 1 0\nPleft 1 2 : 0 1\n"
        "Pright 1 1 : 1 0\nPright 2 1 : 0 1\npsi 1 1 : 1\npsi 2 2 : 1\n"
    )
    assert run("analyze-system", str(p))[0] == EXIT_OK
    code, _, err = run("analyze-system", str(p), "--tensor-cap", "4")
    assert code == EXIT_RESOURCE and "exceeds cap 4" in err


def test_verify_examples_list():
    code, out, _ = run("verify-examples", "--list")
    assert code == EXIT_OK
    assert out.split() == [fx.name for fx in FIXTURES]


def test_verify_examples_default_and_strict():
    code, out, _ = run("verify-examples")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert not any(line.startswith("FAIL") for line in lines)
    assert sum(line.startswith("PASS") for line in lines) == len(FIXTURES)
    assert any(line.startswith("INFO\tfive_vertex.f2f2star_two_sided") for line in lines)
    code, out, _ = run("verify-examples", "--strict-two-sided")
    assert any(line.startswith("DISCREPANCY\tfive_vertex.f2f2star_two_sided") for line in out.splitlines())


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "gradedcp", "analyze-graph", str(DATA / "single_edge.graph")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0 and "strongly" in res.stdout
