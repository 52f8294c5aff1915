import csv
import io
import json

import pytest

from binsegre import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_census_hyperplanes_json(capsys):
    code, out, err = run(capsys, "census", "--n", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"].startswith("binsegre.census/")
    assert [r["cardinality"] for r in doc["rows"]] == [9, 6]
    assert json.loads(err)["outcome"] == "pass"


def test_census_n4_rows(capsys, tmp_path):
    path = tmp_path / "h4.json"
    code, _, _ = run(capsys, "census", "--n", "4", "--out", str(path), "--report", str(tmp_path / "r.json"))
    assert code == 0
    doc = json.loads(path.read_text())
    assert len(doc["rows"]) == 29 and doc["total"] == 65535
    assert json.loads((tmp_path / "r.json").read_text())["artifacts"] == [str(path)]


def test_census_vlines_csv(capsys):
    code, out, _ = run(capsys, "census", "--n", "3", "--target", "vlines", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 41
    assert sum(int(r["cardinality"]) for r in rows) == 10795


def test_census_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert cli.main(["census", "--n", "3", "--format", "csv", "--out", str(p), "--report", str(tmp_path / "r")]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("argv", [
    ["census", "--n", "5"],
    ["census", "--n", "4", "--target", "vlines"],
    ["census", "--n", "2", "--format", "xml"],
    ["verify", "--scope", "t9"],
    ["verify", "--workers", "0"],
    ["quadric", "--n", "1"],
    ["blowup-check", "--n", "3", "--axis", "3"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


@pytest.mark.parametrize("scope", ["t1", "t7", "pg", "blowup"])
def test_verify_scopes(capsys, scope):
    code, out, _ = run(capsys, "verify", "--scope", scope)
    doc = json.loads(out)
    assert code == 0 and doc["outcome"] == "pass"
    assert all({"expected", "actual", "passed"} <= set(c) for c in doc["checks"])


def test_verify_t7_numbers(capsys):
    _, out, _ = run(capsys, "verify", "--scope", "t7")
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert checks["T7 generator count"]["actual"] == 2295
    assert len(checks["T7 image histogram"]["actual"]) == 6


def test_verify_all_with_workers(capsys):
    code, out, _ = run(capsys, "verify", "--workers", "2")
    doc = json.loads(out)
    assert code == 0 and doc["outcome"] == "pass"
    serial = [c["name"] for c in doc["checks"]]
    _, out1, _ = run(capsys, "verify")
    assert [c["name"] for c in json.loads(out1)["checks"]] == serial


@pytest.mark.parametrize("cmd", [["quadric", "--n", "3"], ["lgr", "--n", "3"], ["blowup-check", "--n", "3"],
                                 ["weights", "--n", "4"]])
def test_report_commands(capsys, cmd):
    code, out, _ = run(capsys, *cmd)
    doc = json.loads(out)
    assert code == 0 and doc["outcome"] == "pass" and doc["command"] == cmd[0]


def test_failure_exit_code(capsys, monkeypatch):
    from binsegre import report

    def broken():
        return [report.check_equal("forced mismatch", 1, 2)]

    monkeypatch.setitem(report.CHECKS, "t1", broken)
    code, out, err = run(capsys, "verify", "--scope", "t1")
    assert code == 1
    assert json.loads(out)["outcome"] == "fail"
    assert "forced mismatch" in err


def test_console_entry_point():
    from importlib.metadata import entry_points
    eps = {ep.name: ep.value for ep in entry_points(group="console_scripts")}
    assert eps.get("binsegre") == "binsegre.cli:main"
