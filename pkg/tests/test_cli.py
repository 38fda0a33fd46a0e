"""End-to-end checks of the command-line interface."""

import csv
import json
import math

import pytest

from adiabatic_dj.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_simulate_json_fidelity(capsys):
    code, out, _ = run_cli(
        ["simulate", "--n", "4", "--variant", "modified", "--T", "40", "--shots", "100"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["fidelity"] >= 0.99
    assert payload["n"] == 4 and payload["N"] == 16
    assert payload["schedule"] == "linear" and payload["T"] == 40.0
    assert abs(payload["min_gap_seen"] - 1 / math.sqrt(2)) < 1e-4
    assert payload["measurement"]["verdict"] == "constant"
    assert sum(payload["measurement"]["histogram"].values()) == 100


def test_simulate_deterministic_bytes(tmp_path, capsys):
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    for path in (out_a, out_b):
        code, _, _ = run_cli(
            ["simulate", "--n", "4", "--oracle-kind", "balanced", "--seed", "7",
             "--T", "40", "--output", str(path)],
            capsys,
        )
        assert code == 0
    assert out_a.read_bytes() == out_b.read_bytes()


def test_simulate_full_space_cap(capsys):
    code, _, err = run_cli(["simulate", "--n", "20", "--engine", "full-space"], capsys)
    assert code == 1
    assert "n <= 12" in err


def test_simulate_both_engines_agree(capsys):
    code, out, _ = run_cli(
        ["simulate", "--n", "3", "--engine", "both", "--T", "10", "--shots", "0"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["engine_disagreement"] < 1e-8
    assert "measurement" not in payload


def test_simulate_trace_csv(tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    code, _, _ = run_cli(
        ["simulate", "--n", "2", "--T", "5", "--trace-out", str(trace), "--output", "-"],
        capsys,
    )
    assert code == 0
    rows = list(csv.reader(trace.read_text().splitlines()))
    assert rows[0] == ["t", "s", "fid"]
    assert float(rows[1][0]) == 0.0 and float(rows[-1][0]) == 5.0
    assert abs(float(rows[1][2]) - 1.0) < 1e-9


def test_simulate_json_round_trips(tmp_path, capsys):
    out = tmp_path / "r.json"
    run_cli(["simulate", "--n", "3", "--T", "12", "--output", str(out)], capsys)
    payload = json.loads(out.read_text())
    again = json.loads(json.dumps(payload))
    assert again == payload


def test_gap_scan_modified(capsys):
    code, out, _ = run_cli(
        ["gap-scan", "--n", "2", "--variant", "modified", "--grid-points", "101"], capsys
    )
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["s", "e0", "e1", "gap", "gap_analytic"]
    body = [(float(r[0]), float(r[3]), float(r[4])) for r in rows[1:]]
    assert body[0][1] == 1.0
    gaps = [g for _, g, _ in body]
    s_min, g_min_val = min(((s, g) for s, g, _ in body), key=lambda p: p[1])
    assert abs(g_min_val - 1 / math.sqrt(2)) < 1e-4
    assert abs(s_min - 0.5) < 1e-9
    assert all(abs(g - ga) < 1e-9 for _, g, ga in body)


def test_gap_scan_original_constant(capsys):
    code, out, _ = run_cli(
        ["gap-scan", "--n", "4", "--variant", "original", "--oracle-kind", "constant",
         "--grid-points", "201"],
        capsys,
    )
    assert code == 0
    rows = list(csv.reader(out.splitlines()))[1:]
    assert abs(min(float(r[3]) for r in rows) - 0.25) < 1e-4


def test_gap_scan_round_trip(capsys):
    _, out, _ = run_cli(["gap-scan", "--n", "1", "--grid-points", "11"], capsys)
    rows = list(csv.reader(out.splitlines()))
    reparsed = [[float(v) for v in r] for r in rows[1:]]
    rewritten = "\n".join(",".join(f"{v:.12g}" for v in r) for r in reparsed)
    original_body = "\n".join(out.splitlines()[1:])
    assert rewritten == original_body


def test_sweep_tstar_constant_across_n(capsys):
    code, out, _ = run_cli(
        ["sweep", "--n", "2..6..2", "--target-fidelity", "0.99", "--t-max", "60"], capsys
    )
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["n", "N", "variant", "schedule", "T_or_Tstar", "fidelity", "min_gap"]
    stars = [float(r[4]) for r in rows[1:]]
    assert len(stars) == 3
    assert max(stars) / min(stars) < 1.10
    assert all(float(r[5]) >= 0.99 for r in rows[1:])


def test_sweep_fixed_T_grid_sorted(capsys):
    code, out, _ = run_cli(["sweep", "--n", "3,2", "--T", "10,5"], capsys)
    assert code == 0
    rows = list(csv.reader(out.splitlines()))[1:]
    keys = [(int(r[0]), float(r[4])) for r in rows]
    assert keys == sorted(keys)
    assert len(rows) == 4


def test_sweep_empty_range(capsys):
    code, out, _ = run_cli(["sweep", "--n", "", "--T", "10"], capsys)
    assert code == 0
    assert out.splitlines() == ["n,N,variant,schedule,T_or_Tstar,fidelity,min_gap"]


def test_sweep_grid_cap(capsys):
    code, _, err = run_cli(["sweep", "--n", "1..10", "--T", "1,2", "--max-grid", "5"], capsys)
    assert code == 1
    assert "max_grid" in err


def test_sweep_workers_same_bytes(tmp_path, capsys):
    serial = tmp_path / "serial.csv"
    parallel = tmp_path / "parallel.csv"
    base = ["sweep", "--n", "2..5", "--T", "5,10", "--engine", "effective-2d"]
    assert run_cli(base + ["--output", str(serial)], capsys)[0] == 0
    assert run_cli(base + ["--workers", "3", "--output", str(parallel)], capsys)[0] == 0
    assert serial.read_bytes() == parallel.read_bytes()


def test_sweep_local_schedule(capsys):
    code, out, _ = run_cli(
        ["sweep", "--n", "2,4", "--schedule", "local-adiabatic", "--variant", "original",
         "--oracle-kind", "constant", "--epsilon", "0.1"],
        capsys,
    )
    assert code == 0
    rows = list(csv.reader(out.splitlines()))[1:]
    times = {int(r[0]): float(r[4]) for r in rows}
    assert abs(times[4] / times[2] - 2.0) < 0.3


def test_classify_verdicts(capsys):
    code, out, _ = run_cli(
        ["classify", "--n", "3", "--oracle-kind", "balanced", "--seed", "4",
         "--T", "40", "--shots", "200"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "balanced"
    assert payload["confidence"] > 0.9
    assert sum(payload["histogram"].values()) == 200


def test_classify_from_table(capsys):
    code, out, _ = run_cli(
        ["classify", "--n", "2", "--oracle-kind", "from-table", "--truth-table", "n=2:6",
         "--T", "40", "--shots", "64"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "balanced"


def test_classify_invalid_table_is_validation_error(capsys):
    code, _, err = run_cli(
        ["classify", "--n", "2", "--oracle-kind", "from-table", "--truth-table", "n=2:1",
         "--T", "10"],
        capsys,
    )
    assert code == 1
    assert "constant nor balanced" in err


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# experiment defaults\n"
        "n = 3\n"
        "oracle_kind = balanced\n"
        "seed = 9\n"
        "T = 20\n"
        "shots = 0\n"
    )
    code, out, _ = run_cli(["simulate", "--config", str(cfg)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 3 and payload["T"] == 20.0 and payload["oracle_kind"] == "balanced"
    # flags win over the file
    code, out, _ = run_cli(["simulate", "--config", str(cfg), "--T", "10"], capsys)
    assert json.loads(out)["T"] == 10.0


def test_config_file_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("frobnicate = 3\n")
    code, _, err = run_cli(["simulate", "--config", str(cfg)], capsys)
    assert code == 1
    assert "frobnicate" in err


def test_outdir_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ADIABATIC_DJ_OUTDIR", str(tmp_path))
    code, _, _ = run_cli(["simulate", "--n", "2", "--T", "5", "--output", "sub/out.json"], capsys)
    assert code == 0
    assert (tmp_path / "sub" / "out.json").exists()


def test_unknown_flag_is_exit_1(capsys):
    code, _, err = run_cli(["simulate", "--does-not-exist", "1"], capsys)
    assert code == 1


def test_simulate_requires_single_n(capsys):
    code, _, err = run_cli(["simulate", "--n", "2..4"], capsys)
    assert code == 1
    assert "exactly one n" in err
