"""End-to-end tests of the command-line interface.

Everything goes through main(argv) in-process so exit codes and the
bytes on disk are exactly what a shell invocation would see.
"""

import json
import os

import numpy as np
import pytest

from ddb import DissipationMetric, InertiaModel, casimir, energy
from ddb.cli import SCHEMA_VERSION, main


INERTIA = InertiaModel(1.0, 1.3, 0.5)


def read(path):
    with open(path, "rb") as fh:
        return fh.read()


def write_config(tmp_path, name="custom.json", **overrides):
    payload = {
        "inertia": [1.0, 1.3, 0.5],
        "alpha": 0.5,
        "omega0": [0.0, 0.05, 1.0],
        "t0": 0.0,
        "t_end": 2.0,
        "h": 0.1,
    }
    payload.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


# --- run ---------------------------------------------------------------------


def test_run_defaults_write_expected_files(tmp_path, capsys):
    assert main(["run", "--out", str(tmp_path), "--t-end", "2"]) == 0
    names = sorted(os.listdir(tmp_path))
    assert names == ["A_ddb-cay.csv", "metrics.json", "timing.csv"]
    out = capsys.readouterr().out
    assert out.count("wrote ") == 3


def test_run_trajectory_csv_layout(tmp_path):
    assert main(["run", "--scenario", "A", "--out", str(tmp_path)]) == 0
    raw = read(tmp_path / "A_ddb-cay.csv")
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "t,M1,M2,M3,energy,casimir"
    assert len(lines) == 302  # header + 301 nodes for [0, 30] at h = 0.1
    first = lines[1].split(",")
    assert [float(x) for x in first[:4]] == [0.0, 0.0, 0.065, 0.5]


def test_run_trajectory_values_are_full_precision(tmp_path):
    assert main(["run", "--out", str(tmp_path), "--t-end", "2"]) == 0
    lines = read(tmp_path / "A_ddb-cay.csv").decode().splitlines()[1:]
    for line in lines:
        t, m1, m2, m3, e, c = (float(tok) for tok in line.split(","))
        m = np.array([m1, m2, m3])
        # stored energy and casimir agree with recomputation from M
        assert abs(energy(INERTIA, m) - e) <= 1e-12
        assert abs(casimir(m) - c) <= 1e-12
        # 17 significant digits round-trip through text exactly
        for tok in line.split(","):
            assert float(f"{float(tok):.17g}") == float(tok)


def test_run_reruns_are_byte_identical(tmp_path):
    out1, out2 = tmp_path / "one", tmp_path / "two"
    argv = ["run", "--scenario", "A", "--stepper", "ddb-exp", "--t-end", "3"]
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    assert read(out1 / "A_ddb-exp.csv") == read(out2 / "A_ddb-exp.csv")
    assert read(out1 / "metrics.json") == read(out2 / "metrics.json")


def test_run_json_format(tmp_path):
    assert main(
        ["run", "--out", str(tmp_path), "--t-end", "1", "--format", "json"]
    ) == 0
    payload = json.loads(read(tmp_path / "A_ddb-cay.json"))
    assert payload["schema_version"] == SCHEMA_VERSION
    assert payload["scenario"] == "A"
    assert payload["stepper"] == "ddb-cay"
    n = len(payload["t"])
    assert n == 11
    for key in ["M1", "M2", "M3", "energy", "casimir"]:
        assert len(payload[key]) == n


def test_run_multiple_steppers_and_timing(tmp_path):
    assert main(
        [
            "run",
            "--out",
            str(tmp_path),
            "--t-end",
            "1",
            "--stepper",
            "rk4",
            "--stepper",
            "mv",
        ]
    ) == 0
    lines = read(tmp_path / "timing.csv").decode().splitlines()
    assert lines[0] == "integrator,runtime_seconds"
    assert [ln.split(",")[0] for ln in lines[1:]] == ["rk4", "mv"]
    for ln in lines[1:]:
        assert float(ln.split(",")[1]) >= 0.0


def test_run_metrics_payload(tmp_path):
    assert main(
        ["run", "--out", str(tmp_path), "--t-end", "2", "--stepper", "all"]
    ) == 0
    payload = json.loads(read(tmp_path / "metrics.json"))
    assert payload["schema_version"] == SCHEMA_VERSION
    assert payload["scenario"] == "A"
    by_name = {m["stepper"]: m for m in payload["methods"]}
    assert set(by_name) == {
        "ddb-cay", "ddb-exp", "ddb-sym-cay", "ddb-sym-exp",
        "mv", "rk4", "lobatto3c", "reference",
    }
    for m in by_name.values():
        assert m["failure"] is None
        assert "runtime_seconds" not in m  # clock readings live in timing.csv only
    assert by_name["ddb-cay"]["final_error"] is not None
    assert by_name["ddb-cay"]["max_casimir_drift"] <= 1e-10
    assert by_name["rk4"]["max_casimir_drift"] > 0.0


def test_run_rejects_multiple_step_sizes(tmp_path):
    assert main(["run", "--out", str(tmp_path), "--h", "0.1,0.05"]) == 1


def test_run_solver_failure_exits_nonzero(tmp_path, capsys):
    config = write_config(
        tmp_path,
        inertia=[1.0, 1.0, 1.0],
        alpha=0.0,
        omega0=[0.0, 0.0, 1.0],
        t_end=2.0,
        h=1.0,
    )
    code = main(["run", "--config", config, "--stepper", "mv", "--out", str(tmp_path)])
    assert code == 1
    assert "error" in capsys.readouterr().err


# --- scenario sources --------------------------------------------------------


def test_unknown_scenario_exits_one(tmp_path, capsys):
    assert main(["run", "--scenario", "Z", "--out", str(tmp_path)]) == 1
    err = capsys.readouterr().err
    assert "unknown scenario" in err
    assert "A, B, C" in err


def test_scenario_and_config_are_exclusive(tmp_path):
    config = write_config(tmp_path)
    assert main(
        ["run", "--scenario", "A", "--config", config, "--out", str(tmp_path)]
    ) == 1


def test_unknown_stepper_exits_one(tmp_path, capsys):
    assert main(["run", "--stepper", "verlet", "--out", str(tmp_path)]) == 1
    assert "unknown stepper" in capsys.readouterr().err


def test_config_file_run_uses_file_name_and_steppers(tmp_path, capsys):
    config = write_config(tmp_path, steppers=["rk4", "lobatto3c"])
    out = tmp_path / "out"
    assert main(["run", "--config", config, "--out", str(out)]) == 0
    assert sorted(os.listdir(out)) == [
        "custom_lobatto3c.csv",
        "custom_rk4.csv",
        "metrics.json",
        "timing.csv",
    ]


def test_config_file_explicit_name_and_flag_override(tmp_path):
    config = write_config(tmp_path, name="body9", steppers=["rk4"])
    out = tmp_path / "out"
    # the --stepper flag beats the steppers key in the file
    assert main(
        ["run", "--config", config, "--stepper", "mv", "--out", str(out)]
    ) == 0
    assert sorted(os.listdir(out)) == ["body9_mv.csv", "metrics.json", "timing.csv"]


def test_config_file_unknown_key_exits_one(tmp_path, capsys):
    config = write_config(tmp_path, gravity=9.81)
    assert main(["run", "--config", config, "--out", str(tmp_path)]) == 1
    assert "gravity" in capsys.readouterr().err


def test_config_file_missing_key_exits_one(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"inertia": [1, 1, 1]}))
    assert main(["run", "--config", str(path), "--out", str(tmp_path)]) == 1
    assert "missing keys" in capsys.readouterr().err


def test_config_file_invalid_json_exits_one(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["run", "--config", str(path), "--out", str(tmp_path)]) == 1


def test_missing_config_file_exits_two(tmp_path):
    assert main(
        ["run", "--config", str(tmp_path / "absent.json"), "--out", str(tmp_path)]
    ) == 2


def test_unwritable_out_dir_exits_two(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["run", "--out", str(blocker / "sub")]) == 2


def test_t_end_before_start_exits_one(tmp_path):
    assert main(["run", "--out", str(tmp_path), "--t-end", "-1"]) == 1


def test_bad_h_exits_one(tmp_path):
    assert main(["run", "--out", str(tmp_path), "--h", "fast"]) == 1


# --- convergence -------------------------------------------------------------


def test_convergence_writes_profiles(tmp_path, capsys):
    assert main(
        [
            "convergence",
            "--scenario",
            "A",
            "--t-end",
            "5",
            "--stepper",
            "rk4",
            "--h",
            "0.2,0.1,0.05",
            "--out",
            str(tmp_path),
        ]
    ) == 0
    assert "slope" in capsys.readouterr().out
    lines = read(tmp_path / "A_rk4_convergence.csv").decode().splitlines()
    assert lines[0] == "h,error,excluded"
    assert len(lines) == 4
    payload = json.loads(read(tmp_path / "A_rk4_convergence.json"))
    assert payload["schema_version"] == SCHEMA_VERSION
    assert payload["stepper"] == "rk4"
    assert 3.7 <= payload["slope"] <= 4.3
    assert payload["h"] == [0.2, 0.1, 0.05]


def test_convergence_needs_three_step_sizes(tmp_path):
    assert main(
        ["convergence", "--out", str(tmp_path), "--h", "0.2,0.1"]
    ) == 1


def test_convergence_rejects_unsorted_h(tmp_path):
    assert main(
        ["convergence", "--out", str(tmp_path), "--h", "0.05,0.2,0.1", "--t-end", "2"]
    ) == 1


def test_convergence_config_h_list(tmp_path):
    config = write_config(tmp_path, t_end=2.0, h=[0.2, 0.1, 0.05], steppers=["rk4"])
    out = tmp_path / "out"
    assert main(["convergence", "--config", config, "--out", str(out)]) == 0
    assert "custom_rk4_convergence.csv" in os.listdir(out)


# --- compare and scenarios ---------------------------------------------------


def test_compare_defaults_to_all_steppers(tmp_path):
    assert main(["compare", "--out", str(tmp_path), "--t-end", "1"]) == 0
    lines = read(tmp_path / "timing.csv").decode().splitlines()
    assert len(lines) == 9  # header + 8 steppers
    trajectories = [n for n in os.listdir(tmp_path) if n.startswith("A_")]
    assert len(trajectories) == 8


def test_scenarios_list(capsys):
    assert main(["scenarios"]) == 0
    out = capsys.readouterr().out
    assert main(["scenarios", "list"]) == 0
    assert capsys.readouterr().out == out
    for token in ["A:", "B:", "C:", "inertia=(1.0, 1.3, 0.5)", "alpha=0.5"]:
        assert token in out
