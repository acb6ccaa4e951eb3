import csv
import io
import json
import math
import subprocess
import sys

import pytest

from gmtlab.cli import main, resolve_tolerance, UsageError

PARABOLIC = "[[1,0],[1,0],[0,0],[1,0]]"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    return code, json.loads(out) if out else None


def test_classify_literal_parabolic():
    code, doc = run_json("classify", PARABOLIC)
    assert code == 0
    assert doc["results"]["kind"] == "parabolic"
    assert list(doc) == ["command", "inputs", "results", "residuals", "verdict", "tolerance"]


def test_classify_catalog_rho():
    code, doc = run_json("classify", "--catalog", "gamma", "--n", "4", "--gen", "rho")
    assert code == 0
    assert doc["results"]["kind"] == "elliptic"
    assert doc["results"]["order"] == [1, 4]


def test_classify_h1():
    code, doc = run_json("classify", "--catalog", "h1")
    assert code == 0 and doc["results"]["order"] == [1, 2]


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["classify", "[[1,0],[2,0],[1,0],[2,0]]"], 1),  # singular
        (["classify", "[[1,0],[2,0]"], 2),  # bad JSON
        (["classify"], 2),
        (["classify", "--catalog", "gamma", "--n", "3", "--gen", "rho"], 2),
        (["classify", "--catalog", "nope", "--gen", "x"], 2),
        (["gmt", PARABOLIC], 2),
        (["table", "--n-min", "7", "--n-max", "5"], 2),
        (["table", "--n-min", "3", "--n-max", "5"], 2),
        (["verify", "nope"], 2),
        (["frobnicate"], 2),
        ([], 2),
    ],
)
def test_exit_codes(argv, expected):
    code, _, _ = run(*argv)
    assert code == expected


def test_ambiguous_classification_fails():
    code, doc = run_json("classify", "[[1,0],[1e-6,0],[0,0],[1,0]]")
    assert code == 1
    assert doc["verdict"] == "fail"
    assert set(doc["results"]["candidates"]) == {"identity", "parabolic"}


def test_gmt_equality_at_four():
    code, doc = run_json("gmt", "gamma:4:rho", "gamma:4:b")
    assert code == 0
    assert doc["results"]["status"] == "Equality"
    assert abs(doc["results"]["value"] - 1) <= 1e-9


def test_gmt_strict_at_six():
    code, doc = run_json("gmt", "gamma:6:rho", "gamma:6:b")
    assert code == 0
    assert doc["results"]["status"] == "SatisfiedStrict"
    assert doc["results"]["value"] == pytest.approx(3 - 4 * math.sin(math.pi / 6) ** 2, abs=1e-9)


def test_gmt_not_applicable():
    code, doc = run_json("gmt", PARABOLIC, "[[1,0],[0,0],[0,1],[1,0]]")
    assert code == 0
    assert doc["results"]["status"] == "NotApplicable"
    assert doc["verdict"] == "not-applicable"


def test_gmt_violated_exits_one():
    code, doc = run_json("gmt", "gamma:4:rho", "[[1,0],[0.5,0],[-0.9,0],[0.55,0]]")
    assert code == 1
    assert doc["results"]["status"] == "Violated"
    # every failed verdict names the residual that broke
    assert any(not r["passed"] for r in doc["residuals"])


def test_table_csv():
    code, out, _ = run("table", "--n-min", "4", "--n-max", "8", "--csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "tr_sq_rho_re", "tr_sq_rho_im", "tr_comm_re", "tr_comm_im", "gmt", "bound", "abs_diff", "branch"]
    assert [int(r["n"]) for r in rows] == [4, 5, 6, 7, 8]
    assert float(rows[0]["gmt"]) == pytest.approx(1, abs=1e-9)
    assert float(rows[2]["gmt"]) == pytest.approx(2, abs=1e-9)
    assert all(float(r["abs_diff"]) <= 1e-9 for r in rows)


def test_table_json_and_text():
    code, doc = run_json("table", "--n-min", "4", "--n-max", "4")
    assert code == 0 and doc["results"][0]["branch"] == "sinh-/root+"
    code, out, _ = run("table", "--n-min", "4", "--n-max", "5")
    assert code == 0 and out.startswith("table: pass\n")


@pytest.mark.parametrize("target", ["eq2", "o1", "lemma3", "table1"])
def test_verify_targets(target):
    code, doc = run_json("verify", target)
    assert code == 0
    assert doc["verdict"] == "pass"
    assert all(r["value"] <= r["bound"] for r in doc["residuals"])


def test_verify_all_sorted():
    code, doc = run_json("verify", "all")
    assert code == 0
    names = [s["suite"] for s in doc["results"]]
    assert names == sorted(names) and "o4" in names


def test_verify_failure_exit_code():
    # a tolerance far below rounding error makes the identity checks fail
    code, doc = run_json("verify", "eq2", "--tol", "1e-17")
    assert code == 1 and doc["verdict"] == "fail"


def _write(tmp_path, doc):
    p = tmp_path / "c.json"
    p.write_text(json.dumps(doc))
    return str(p)


def test_conjugator_h1(tmp_path):
    f = _write(tmp_path, {"group": "gamma", "n": 4, "constraints": [["rho", "b"], ["b", "rho"]]})
    code, doc = run_json("conjugator", f)
    assert code == 0
    r = doc["results"]
    assert r["involution"] is True and r["case"] == "i"
    h = [complex(*e) for e in r["h"]]
    target = [0, 1j, 1j, 0]
    assert min(max(abs(x - y) for x, y in zip(h, target)), max(abs(x + y) for x, y in zip(h, target))) <= 1e-9


def test_conjugator_h2(tmp_path):
    f = _write(tmp_path, {"group": "gamma", "n": 4, "constraints": [["rho", "rho^-1"], ["b", "b^-1"]]})
    code, doc = run_json("conjugator", f)
    assert code == 0
    assert doc["results"]["involution"] is True and doc["results"]["case"] == "ii"


def test_conjugator_h3_with_pair(tmp_path):
    f = _write(
        tmp_path,
        {"group": "gamma", "n": 4, "constraints": [["b", "b rho^-1 b^-1"], ["b rho b^-1", "b^-1"]], "pair": ["b", "rho"]},
    )
    code, doc = run_json("conjugator", f)
    assert code == 0 and doc["results"]["case"] == "iii"


def test_conjugator_literals(tmp_path):
    rho = [[0.7071067811865476, 0.7071067811865476], [0, 0], [0, 0], [0.7071067811865476, -0.7071067811865476]]
    f = _write(tmp_path, {"constraints": [[rho, "gamma:4:rho"]]})
    code, doc = run_json("conjugator", f)
    # one elliptic constraint leaves a one-parameter family
    assert code == 1 and doc["results"]["null_space_dimension"] == 2


def test_conjugator_ambiguous(tmp_path):
    f = _write(tmp_path, {"group": "gamma", "n": 4, "constraints": [["rho", "rho"]]})
    code, doc = run_json("conjugator", f)
    assert code == 1
    assert doc["results"]["error"] == "AmbiguousSolution"
    assert doc["results"]["null_space_dimension"] == 2


@pytest.mark.parametrize("content", ["{", "[]", '{"constraints": []}', '{"constraints": [["rho"]]}'])
def test_conjugator_bad_files(tmp_path, content):
    p = tmp_path / "bad.json"
    p.write_text(content)
    code, _, err = run("conjugator", str(p))
    assert code == 2 and err


def test_conjugator_missing_file(tmp_path):
    assert run("conjugator", str(tmp_path / "absent.json"))[0] == 2


def test_catalog_export():
    code, doc = run_json("catalog", "o3")
    assert code == 0
    assert doc["results"]["relators"]["passed"] is True
    code, doc = run_json("catalog", "knot")
    assert code == 0 and doc["verdict"] == "not-applicable"
    code, doc = run_json("catalog", "list")
    assert "Gamma" in doc["results"]["groups"]
    assert run("catalog", "nope")[0] == 2


def test_tolerance_precedence(monkeypatch):
    monkeypatch.setenv("GMT_TOL", "1e-6")
    assert resolve_tolerance(None).absolute == 1e-6
    assert resolve_tolerance(1e-7).absolute == 1e-7
    monkeypatch.delenv("GMT_TOL")
    assert resolve_tolerance(None).absolute == 1e-9
    monkeypatch.setenv("GMT_TOL", "zero")
    with pytest.raises(UsageError):
        resolve_tolerance(None)
    code, doc = run_json("gmt", "h1", "gamma:4:rho", "--tol", "1e-7")
    assert doc["tolerance"]["absolute"] == 1e-7


def test_tolerance_env_reaches_report(monkeypatch):
    monkeypatch.setenv("GMT_TOL", "1e-6")
    code, doc = run_json("classify", "h1")
    assert doc["tolerance"]["absolute"] == 1e-6
    monkeypatch.setenv("GMT_TOL", "-1")
    assert run("classify", "h1")[0] == 2


def test_global_flags_before_subcommand():
    code, out, _ = run("--json", "classify", "h1")
    assert code == 0 and json.loads(out)["command"] == "classify"


def test_reports_are_deterministic():
    a = run("verify", "eq3", "--json")[1]
    b = run("verify", "eq3", "--json")[1]
    assert a == b
    assert a.endswith("\n")


def test_float_output_round_trips():
    _, out, _ = run("table", "--n-min", "5", "--n-max", "5", "--csv")
    value = list(csv.DictReader(io.StringIO(out)))[0]["gmt"]
    assert repr(float(value)) == value


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gmtlab.cli", "classify", PARABOLIC], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert "parabolic" in proc.stdout
