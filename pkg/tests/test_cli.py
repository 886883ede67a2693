import csv
import json
import subprocess
import sys

import pytest

from zariski.cli import main


def run(capsys, *argv):
    code = main(["--compact", *argv])
    out = json.loads(capsys.readouterr().out)
    assert out["schema_version"] == 1
    return code, out


def test_session_flow(tmp_path, capsys):
    path = tmp_path / "s.json"
    assert run(capsys, "--session", str(path), "group", "G", "Z(4)^w")[0] == 0
    code, out = run(capsys, "--session", str(path), "round", "make", "4", "S")
    assert code == 0 and out["result"]["certificate"]["ok"]
    assert run(capsys, "--session", str(path), "let", "X", "S | 2S")[0] == 0

    code, out = run(capsys, "--session", str(path), "closure", "X")
    assert out["result"]["closed"] == "G"
    assert out["result"]["components"] == 1 and out["result"]["isolated"] == []
    assert run(capsys, "--session", str(path), "mval", "X")[1]["result"]["m"] == 2
    assert run(capsys, "--session", str(path), "curve", "X")[1]["result"]["curve"] is False
    assert run(capsys, "--session", str(path), "irreducible", "X")[1]["result"]["irreducible"] is True
    assert run(capsys, "--session", str(path), "dim", "X")[1]["result"]["dim"] == 2

    saved = json.loads(path.read_text())
    assert saved["groups"] == {"G": "Z(4)^w"}
    assert saved["sets"]["X"]["text"] == "round(4) | 2*round(4)"


def test_group_queries(capsys):
    assert run(capsys, "eo", "Z(8)")[1]["result"]["eo"] == 1
    assert run(capsys, "eo", "Z(4)^w + Z(2)^w")[1]["result"]["eo"] == 4
    assert run(capsys, "eo", "Z")[1]["result"]["eo"] == 0
    assert run(capsys, "exponent", "Z(4)^w + Z(3)")[1]["result"]["exponent"] == 12
    assert run(capsys, "torsion", "2", "Z(4)^w + Z(3)")[1]["result"]["torsion_subgroup"] == "Z(2)^w"


def test_set_queries(capsys):
    code, out = run(capsys, "--group", "Z(6)^w", "connected", "G[2] | G[3]")
    assert code == 0 and out["result"]["connected"] is True
    code, out = run(capsys, "--group", "Z(6)^w", "components", "G[2] | G[3]")
    assert sorted(c["closure"] for c in out["result"]["components"]) == ["G[2]", "G[3]"]
    assert run(capsys, "--group", "Z", "dense", "round(0) | {[Z_0=5]}")[1]["result"]["dense"] is True
    assert run(capsys, "--group", "Z", "potdense", "{[Z_0=5]}")[1]["result"]["potentially_dense"] is False
    assert run(capsys, "--group", "Zp(2,inf)^w", "dim", "G[0]")[1]["result"]["dim"] == "inf"


def test_round_check_and_trim(capsys):
    code, out = run(capsys, "--group", "Z(4)^w", "round", "check", "2*round(4)")
    (check,) = out["result"]["checks"]
    assert code == 0 and check["certificate"]["ok"] and check["certificate"]["count_bound"] == 1
    code, out = run(capsys, "--group", "Z(4)^w", "trim", "round(4)")
    assert code == 0 and out["result"]["certificate"]["disjoint"]
    assert out["result"]["halves"] == ["split(round(4), 0)", "split(round(4), 1)"]
    assert run(capsys, "--group", "Z(4)^w", "round", "check", "G[2]")[0] == 2


@pytest.mark.parametrize(
    "argv, code, status",
    [
        (["--group", "Z(4)^w", "closure", "round("], 1, "parse_error"),
        (["--group", "Z(4)^w", "closure", "round(1)"], 2, "domain_error"),
        (["closure", "G[2]"], 2, "domain_error"),
        (["--group", "Z", "realize", "round(0)", "--chars", "1", "--prefix", "10", "--eps", "0.001"], 3, "verification_failed"),
    ],
)
def test_exit_codes(capsys, argv, code, status):
    got, out = run(capsys, *argv)
    assert got == code and out["status"] == status
    if status == "parse_error":
        assert out["position"] == 6


def test_failed_command_does_not_touch_the_session(tmp_path, capsys):
    path = tmp_path / "s.json"
    run(capsys, "--session", str(path), "group", "G", "Z(4)^w")
    before = path.read_text()
    assert run(capsys, "--session", str(path), "let", "X", "round(3)")[0] == 2
    assert path.read_text() == before


def test_realize_with_csv(tmp_path, capsys):
    dump = tmp_path / "points.csv"
    code, out = run(
        capsys, "--group", "Z(4)^w", "realize", "round(4)", "--chars", "2", "--prefix", "500", "--csv", str(dump)
    )
    assert code == 0 and out["result"]["verdict"] == "PASS"
    rows = list(csv.reader(dump.open()))
    assert rows[0] == ["target", "index", "h0", "h1"] and len(rows) == 501


def test_oracle_run_with_junit(tmp_path, capsys):
    report = tmp_path / "j.xml"
    code, out = run(capsys, "oracle", "run", "--suite", "decomp", "--suite", "laws", "--junit", str(report))
    assert code == 0 and out["result"]["passed"]
    assert [r["suite"] for r in out["result"]["reports"]] == ["decomp", "laws"]
    assert report.read_text().startswith("<testsuite")


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("ZK_SEED", "7")
    assert run(capsys, "eo", "Z")[1]["config"]["seed"] == 7
    assert run(capsys, "--seed", "3", "eo", "Z")[1]["config"]["seed"] == 3


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "zariski.cli", "--compact", "eo", "Z(4)^w"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["eo"] == 4
