import json
import subprocess
import sys

import pytest

from carlitz_tower import cli


def run(*argv):
    return cli.run(list(argv))


def _chars(report):
    return {c["character"]: c for c in report["result"]["characters"]}


def test_theta_examples():
    code, rep = run("theta", "--q", "3", "--p", "t", "--level", "0", "--deg", "6")
    assert code == 0
    types = {c["type"]: c["theta"] for c in rep["result"]["characters"]}
    assert types[1] == "1"
    code, rep = run("theta", "--q", "2", "--p", "t^2+t+1")
    assert code == 0
    assert [c["theta"] for c in rep["result"]["characters"] if c["type"] == 2] == ["1 - X", "1 - X"]


def test_reducible_input():
    code, rep = run("theta", "--q", "2", "--p", "t^2+1")
    assert code == 2
    assert "t + 1" in rep["error"]


@pytest.mark.parametrize("argv", [["theta", "--q", "6", "--p", "t"], ["theta", "--q", "3", "--p", "t^2+t+"],
                                  ["theta", "--q", "3", "--p", "2t+1"], ["zeta", "--q", "10"],
                                  ["theta", "--q", "3", "--p", "t", "--level", "-1"]])
def test_bad_inputs(argv):
    code, rep = cli.run(argv)
    assert code == 2 and rep["exit_code"] == 2


def test_ceiling_exit_code():
    code, rep = run("theta", "--q", "5", "--p", "t", "--deg", "40")
    assert code == 3


def test_zeta_examples():
    code, rep = run("zeta", "--q", "2", "--jmax", "10")
    assert code == 0
    rows = rep["result"]["rows"]
    assert rows[0]["Z"] == "1"
    assert rows[1]["Z"] == "1 + X"
    assert all(r["degree_bound"] == "pass" for r in rows)


def test_verify_all_small():
    code, rep = run("verify", "--q", "3", "--p", "t", "--which", "all")
    assert code == 0 and rep["result"]["verdict"] == "pass"
    assert rep["result"]["suites"]["fitting"]["status"] == "pass"


def test_verify_acceptance_case():
    code, rep = run("verify", "--q", "2", "--p", "t^3+t+1", "--which", "all")
    assert code == 0
    fit = rep["result"]["suites"]["fitting"]
    assert fit["status"] == "pass" and fit["fitting"]["verdict"] == "pass"


def test_vadic_skip():
    code, rep = run("verify", "--q", "3", "--p", "t", "--which", "vadic", "--j", "4", "--i", "1")
    assert code == 0
    suite = rep["result"]["suites"]["vadic"]
    assert suite["status"] == "skipped" and suite["reason"] == "congruence precondition"


def test_curve_examples():
    for P in ("t", "t^2+t+1"):
        q = "3" if P == "t" else "2"
        code, rep = run("curve", "--q", q, "--p", P)
        assert code == 0
        assert rep["result"]["genus"] == 0 and rep["result"]["h"] == 1
    code, rep = run("curve", "--q", "2", "--p", "t^3+t+1", "--budget", "2^26")
    assert code == 0
    res = rep["result"]
    assert len(res["numerator"]) == 7 and res["paths_agree"] and res["golden"] == "match"


def test_cache_determinism(tmp_path):
    argv = ["theta", "--q", "2", "--p", "t^3+t+1", "--cache-dir", str(tmp_path)]
    code1, rep1 = cli.run(argv)
    code2, rep2 = cli.run(argv)
    assert code1 == code2 == 0
    assert rep2["meta"]["cache_hits"] >= 1
    assert cli.dumps(rep1["result"]) == cli.dumps(rep2["result"])
    code3, rep3 = cli.run(argv[:-2] + ["--no-cache"])
    assert cli.dumps(rep3["result"]) == cli.dumps(rep1["result"])


def test_main_writes_output(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["zeta", "--q", "3", "--jmax", "2", "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["schema"] == cli.SCHEMA and data["command"] == "zeta"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "carlitz_tower.cli", "zeta", "--q", "2", "--jmax", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["rows"][1]["Z"] == "1 + X"
