import json
import subprocess
import sys

import pytest

from cubic27.cli import main, run, to_json

FERMAT = "x^3+y^3+z^3+t^3"
CLEBSCH_LIKE = "x^2*t+y^2*z+z^2*y+t^2*x"


def out_of(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def test_aut_fermat_gf4(capsys):
    code, out = out_of(["aut", "--field", "GF(2^2)", "--cubic", FERMAT], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "ok"
    assert rep["results"]["aut_order"] == 25920
    assert rep["results"]["aut_label"] == "PSU4(F2)"


def test_iso_not_isomorphic_over_gf2(capsys):
    code, out = out_of(["iso", "--field", "GF(2^1)", "--cubic", CLEBSCH_LIKE, "--cubic2", FERMAT], capsys)
    assert code == 0
    assert json.loads(out)["results"]["status"] == "not isomorphic"


def test_iso_witness_over_gf4(capsys):
    code, out = out_of(["iso", "--field", "GF(2^2)", "--cubic", CLEBSCH_LIKE, "--cubic2", FERMAT], capsys)
    res = json.loads(out)["results"]
    assert res["status"] == "isomorphic"
    assert len(res["witness"]) == 4 and all(len(r) == 4 for r in res["witness"])


@pytest.mark.parametrize("argv", [
    ["aut", "--field", "GF(2^5)", "--cubic", "bogus(("],
    ["aut", "--field", "GF(3^2)", "--cubic", FERMAT],
    ["aut", "--field", "GF(2^13)", "--cubic", FERMAT],
    ["aut"],
    ["frobnicate"],
    ["verify", "no-such-suite"],
    ["orbits", "--model", "sphere"],
    ["aut", "--cubic", FERMAT, "--threads", "0"],
])
def test_bad_input_exits_2(argv, capsys):
    code, out = out_of(argv, capsys)
    rep = json.loads(out)
    assert code == 2
    assert rep["status"] == "error" and rep["error"]


def test_verify_failure_exits_1(capsys):
    code, out = out_of(["verify", "collineation"], capsys)
    rep = json.loads(out)
    assert code == 1 and rep["results"]["verdict"] == "fail"
    check = rep["results"]["suites"][0]["checks"][0]
    assert check["computed"] is False and check["expected"] is True


@pytest.mark.parametrize("suite", ["table1", "prop1.5", "weyl"], ids=["census", "fermat-odd", "weyl"])
def test_verify_passes(suite, capsys):
    code, out = out_of(["verify", suite], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["results"]["verdict"] == "pass"
    assert all(c["ok"] for s in rep["results"]["suites"] for c in s["checks"])


def test_extended_suite_skipped_without_flag(capsys):
    code, out = out_of(["verify", "a6"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["results"]["suites"][0]["status"] == "skipped"


def test_galois_report(capsys):
    code, out = out_of(["galois", "--cubic", CLEBSCH_LIKE], capsys)
    g = json.loads(out)["results"]["galois"]
    assert (g["order"], g["class"], g["fixed_lines"]) == (2, "A1", 15)


def test_lines_tsv(capsys):
    code, out = out_of(["lines", "--field", "GF(2^2)", "--cubic", FERMAT, "--out", "tsv"], capsys)
    rows = out.strip().splitlines()
    assert code == 0 and rows[0] == "class\tplucker"
    body = [r for r in rows[1:] if not r.startswith("#")]
    assert len(body) == 27
    assert sorted(r.split("\t")[0] for r in body)[:2] == ["E1", "E2"]


def test_orbits_and_blowup(capsys):
    code, out = out_of(["orbits", "--field", "GF(2^2)", "--model", "split"], capsys)
    assert code == 0 and json.loads(out)["results"]["orbit_classes"] == 1
    code, out = out_of(["blowup", "--field", "GF(2^1)", "--model", "weil"], capsys)
    res = json.loads(out)["results"]
    assert res["smooth"] is True and res["line_count"] == 27


def test_blowdown_report(capsys):
    code, out = out_of(["blowdown", "--cubic", CLEBSCH_LIKE], capsys)
    res = json.loads(out)["results"]
    assert code == 0 and res["model"].startswith("Weil") and len(res["points"]) == 5


def test_timing_only_on_request():
    _, rep = run(["aut", "--cubic", FERMAT])
    assert rep["timing"] is None
    _, rep = run(["aut", "--cubic", FERMAT, "--timing"])
    assert isinstance(rep["timing"], float)


def test_reports_are_byte_identical():
    argv = ["aut", "--field", "GF(2^1)", "--cubic", CLEBSCH_LIKE]
    outs = [subprocess.run([sys.executable, "-m", "cubic27.cli", *argv], capture_output=True).stdout
            for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]
    _, rep = run(argv)
    rep.pop("out")
    assert to_json(rep).encode() + b"\n" == outs[0]
