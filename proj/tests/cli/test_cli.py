"""Runs the qsdc_sim binary and checks exit codes, stdout and written files."""

import csv
import json
import os
import subprocess

import pytest

SIM = os.environ.get("QSDC_SIM", "qsdc_sim")


def run(tmp_path, *args):
    return subprocess.run([SIM, *args], cwd=tmp_path, capture_output=True, text=True, timeout=300)


def test_noiseless_round_trip(tmp_path):
    r = run(tmp_path, "run-bidirectional", "--pairs", "256", "--sample-frac", "0.2", "--decoys", "16",
            "--message-hex", "deadbeef", "--seed", "7")
    assert r.returncode == 0, r.stderr
    assert "decoded deadbeef" in r.stdout
    t = json.loads((tmp_path / "transcript.json").read_text())
    assert t["message"]["decoded"]["hex"] == "deadbeef"
    assert t["status"] == "completed"


def test_intercept_resend_is_detected(tmp_path):
    r = run(tmp_path, "run-bidirectional", "--pairs", "256", "--message-hex", "deadbeef", "--seed", "7",
            "--attack", "intercept-resend", "--sample-frac", "0.5")
    assert r.returncode == 2
    assert "DETECTED" in r.stdout
    assert json.loads((tmp_path / "transcript.json").read_text())["status"] == "abort_at_sample_check"


def test_dishonest_server_is_detected(tmp_path):
    r = run(tmp_path, "run-bidirectional", "--message-hex", "ab", "--attack", "dishonest-server",
            "--lie-fraction", "1")
    assert r.returncode == 2
    assert "dishonest server" in r.stdout


def test_holevo_summary(tmp_path):
    r = run(tmp_path, "holevo", "--d", "0.25")
    assert r.returncode == 0
    assert "i0_closed 0.8113" in r.stdout
    assert "twice_i0 1.6226" in r.stdout


def test_sweep_writes_csv(tmp_path):
    r = run(tmp_path, "sweep", "--grid", "0,0.25,0.5", "--trials", "2000", "--seed", "3", "--csv", "out.csv")
    assert r.returncode == 0, r.stderr
    rows = list(csv.reader((tmp_path / "out.csv").open()))
    assert rows[0] == ["d", "error_rate_z", "error_rate_x", "i0_closed", "i0_numeric", "twice_i0"]
    assert len(rows) == 4
    assert float(rows[1][1]) == 0.0
    assert abs(float(rows[2][5]) - 1.6225562489182657) < 1e-12


def test_trojan_check(tmp_path):
    r = run(tmp_path, "trojan-check", "--extra-photons", "0", "--trials", "1000")
    assert r.returncode == 0
    assert "both_click_frequency 0.0000" in r.stdout


def test_swapping(tmp_path):
    r = run(tmp_path, "run-swapping", "--message-hex", "c3a5", "--seed", "1", "--transcript", "s.json")
    assert r.returncode == 0, r.stderr
    assert "decoded c3a5" in r.stdout
    assert json.loads((tmp_path / "s.json").read_text())["usable_groups"] == 8


def test_transcripts_are_byte_identical(tmp_path):
    args = ["run-bidirectional", "--message-hex", "0123", "--seed", "5", "--attack", "ancilla", "--d", "0.01",
            "--threshold", "1"]
    assert run(tmp_path, *args, "--transcript", "a.json").returncode == 0
    assert run(tmp_path, *args, "--transcript", "b.json").returncode == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_repetitions_do_not_depend_on_threads(tmp_path):
    args = ["run-bidirectional", "--message-hex", "0123", "--seed", "5", "--repetitions", "4"]
    assert run(tmp_path, *args, "--threads", "1", "--transcript", "a.json").returncode == 0
    assert run(tmp_path, *args, "--threads", "4", "--transcript", "b.json").returncode == 0
    a = (tmp_path / "a.json").read_bytes()
    assert a == (tmp_path / "b.json").read_bytes()
    assert len(json.loads(a)) == 4


def test_config_file_with_flag_override(tmp_path):
    (tmp_path / "cfg.json").write_text(json.dumps({
        "seed": 7, "message_hex": "ffff", "session": {"pairs": 128, "decoys": 8}}))
    r = run(tmp_path, "--config", "cfg.json", "run-bidirectional", "--message-hex", "deadbeef")
    assert r.returncode == 0, r.stderr
    t = json.loads((tmp_path / "transcript.json").read_text())
    assert t["config"]["n_pairs"] == 128
    assert t["message"]["input"]["hex"] == "deadbeef"


@pytest.mark.parametrize("args, needle", [
    (["run-bidirectional", "--message-hex", "ab", "--attack", "bogus"], "--attack"),
    (["run-bidirectional", "--message-hex", "ab", "--sample-frac", "1.5"], "--sample-frac"),
    (["run-bidirectional", "--message-hex", "ab", "--pairs", "-5"], "--pairs"),
    (["run-bidirectional", "--message-hex", "xyz"], "--message-hex"),
    (["run-bidirectional"], "--message-hex"),
    (["holevo", "--priors", "0.5,0.5"], "--priors"),
    (["frobnicate"], "subcommand"),
])
def test_usage_errors(tmp_path, args, needle):
    r = run(tmp_path, *args)
    assert r.returncode == 1
    assert needle in r.stdout + r.stderr


def test_bad_config_file(tmp_path):
    (tmp_path / "cfg.json").write_text(json.dumps({"session": {"pairs": -5}}))
    r = run(tmp_path, "--config", "cfg.json", "run-bidirectional", "--message-hex", "ab")
    assert r.returncode == 1
    assert "session.pairs" in r.stderr
