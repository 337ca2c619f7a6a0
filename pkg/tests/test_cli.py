import csv
import io
import json
import os
import subprocess
import sys

import pytest

from nckahler import cli
from nckahler.suites import Result


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in list(os.environ):
        if key.startswith(cli.ENV_PREFIX):
            monkeypatch.delenv(key)


def test_verify_default_run(capsys):
    code, out, _ = run(["verify", "--dim", "1", "--cutoff", "8", "--hbar", "1.0", "--seed", "0",
                        "--cases", "100", "--tolerance", "1e-10", "--output", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["suite"] == "all"
    assert doc["config"]["cutoff"] == 8
    statuses = {e["status"] for e in doc["entries"]}
    assert statuses <= {"PASS", "EXPECTED-NONZERO"}
    assert set(doc["entries"][0]) == set(cli.REPORT_FIELDS)


def test_negative_controls_suite(capsys):
    code, out, _ = run(["verify", "--suite", "negative-controls"], capsys)
    assert code == 0
    entries = json.loads(out)["entries"]
    neg = [e for e in entries if e["name"].startswith("negative.")]
    assert len(neg) == 3
    assert all(e["status"] == "EXPECTED-NONZERO" for e in neg)


def test_flow_harmonic_csv(capsys, tmp_path):
    code, out, _ = run(["flow", "--hamiltonian", "harmonic", "--omega", "1.0", "--t-end", "6.2832",
                        "--step", "1e-3", "--output", "csv", "--out-dir", str(tmp_path)], capsys)
    assert code == 0
    assert "\r" not in out
    rows = list(csv.DictReader(io.StringIO(out)))
    assert tuple(rows[0]) == cli.REPORT_FIELDS
    by_name = {r["name"]: r for r in rows}
    assert by_name["flow.return_to_start"]["status"] == "PASS"
    assert float(by_name["flow.return_to_start"]["residual"]) <= 1e-6
    assert (tmp_path / "report.csv").read_text() == out
    traj = list(csv.reader((tmp_path / "trajectory.csv").open()))
    n = (len(traj[0]) - 3) // 2
    assert traj[0] == ["t", *(f"re_z_{k}" for k in range(n)), *(f"im_z_{k}" for k in range(n)), "norm2", "energy"]
    assert float(traj[-1][0]) == pytest.approx(6.2832)


def test_flow_random_generator(capsys):
    code, out, _ = run(["flow", "--hamiltonian", "random", "--cutoff", "4", "--t-end", "1",
                        "--integrator", "split_exact"], capsys)
    assert code == 0
    names = [e["name"] for e in json.loads(out)["entries"]]
    assert "flow.return_to_start" not in names and "flow.heisenberg" in names


@pytest.mark.parametrize("cmd", ["reconstruct", "pullback", "geometry"])
def test_topic_subcommands(cmd, capsys, tmp_path):
    code, out, _ = run([cmd, "--out-dir", str(tmp_path)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["suite"] == cmd
    assert all(e["name"].startswith((cmd, "negative.")) for e in doc["entries"])
    assert (tmp_path / "report.json").read_text() == out


@pytest.mark.parametrize("argv", [
    ["verify", "--dim", "5"],
    ["verify", "--cutoff", "1"],
    ["verify", "--hbar", "0"],
    ["verify", "--hbar", "-1"],
    ["verify", "--cases", "0"],
    ["verify", "--tolerance", "-1e-3"],
    ["verify", "--suite", "nonsense"],
    ["verify", "--output", "xml"],
    ["verify", "--dim", "3", "--cutoff", "20"],
    ["flow", "--step", "0"],
    ["flow", "--hamiltonian", "cubic"],
    ["flow", "--integrator", "euler"],
    ["bogus"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2
    capsys.readouterr()


def test_env_and_config_precedence(capsys, tmp_path, monkeypatch):
    ini = tmp_path / "run.ini"
    ini.write_text("[nckahler]\ncutoff = 5\nseed = 3\n[verify]\nsuite = geometry\n")
    code, out, _ = run(["verify", "--config", str(ini)], capsys)
    cfg = json.loads(out)["config"]
    assert code == 0 and cfg["cutoff"] == 5 and cfg["seed"] == 3 and cfg["suite"] == "geometry"
    monkeypatch.setenv("NCKAHLER_CUTOFF", "6")
    _, out, _ = run(["verify", "--config", str(ini)], capsys)
    assert json.loads(out)["config"]["cutoff"] == 6
    _, out, _ = run(["verify", "--config", str(ini), "--cutoff", "7"], capsys)
    assert json.loads(out)["config"]["cutoff"] == 7
    monkeypatch.delenv("NCKAHLER_CUTOFF")
    monkeypatch.setenv("NCKAHLER_CONFIG", str(ini))
    _, out, _ = run(["verify"], capsys)
    assert json.loads(out)["config"]["seed"] == 3


def test_bad_config_files(capsys, tmp_path, monkeypatch):
    ini = tmp_path / "bad.ini"
    ini.write_text("[nckahler]\ncutof = 5\n")
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--config", str(ini)])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["verify", "--config", str(tmp_path / "missing.ini")])
    monkeypatch.setenv("NCKAHLER_SEED", "zero")
    with pytest.raises(SystemExit):
        cli.main(["verify"])
    capsys.readouterr()


def test_json_is_deterministic(capsys):
    argv = ["verify", "--seed", "4", "--cases", "20"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b
    _, c, _ = run(["verify", "--seed", "5", "--cases", "20"], capsys)
    assert c != a


def test_failure_exit_code(capsys, monkeypatch):
    bad = [Result("demo.entry", "a failing identity", 1.0, 1e-10, "FAIL"),
           Result("demo.other", "a passing identity", 0.0, 1e-10, "PASS")]
    monkeypatch.setattr(cli, "run_suite", lambda suite, cfg: bad)
    code, out, err = run(["verify"], capsys)
    assert code == 1
    assert "demo.entry" in err and "a failing identity" in err
    assert "demo.other" not in err


def test_nan_residual_renders_as_null():
    r = [Result("x", "ref", float("nan"), 1e-10, "FAIL")]
    doc = json.loads(cli.render("all", {"dim": 1, "out_dir": None}, r, "json"))
    assert doc["entries"][0]["residual"] is None
    assert "out_dir" not in doc["config"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nckahler.cli", "verify", "--suite", "negative-controls",
                           "--output", "csv"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith(",".join(cli.REPORT_FIELDS))
