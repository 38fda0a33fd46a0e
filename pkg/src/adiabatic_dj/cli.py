"""Command-line front end: simulate, gap-scan, sweep, classify.

Every run is a deterministic function of its configuration (seeds
included): floats are printed with 12 significant digits, JSON keys are
sorted, CSV uses LF endings, and sweep rows are sorted after any parallel
execution. Options may come from flags or from a `key = value` config file
(flags win). Relative output paths resolve under $ADIABATIC_DJ_OUTDIR when
it is set. Exit codes: 0 success, 1 validation error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import evolution, hamiltonian, measurement, oracle, states
from .errors import AdiabaticDJError, ValidationError

FULL_SPACE_MAX_N = 12

_ENGINE_CHOICES = ("full-space", "effective-2d", "both")
_ORACLE_CHOICES = ("constant", "balanced", "from-table")


@dataclass
class ExperimentConfig:
    """One experiment description, after range expansion and validation."""

    n_values: list[int]
    oracle_kind: str
    constant_value: int
    truth_table: Optional[str]
    seed: int
    variant: states.Variant
    schedule: evolution.ScheduleKind
    T_values: list[float]
    epsilon: float
    steps_per_unit_time: int
    shots: int
    engine: str
    output: str
    trace_out: Optional[str] = None
    grid_points: int = 1001
    target_fidelity: Optional[float] = None
    tol: float = 0.01
    t_max: float = 200.0
    scan_dt: float = 0.5
    workers: int = 1
    max_grid: int = 512


# ---------------------------------------------------------------------------
# parsing helpers


def _parse_int_list(text: str) -> list[int]:
    """"4", "2,4,6", "2..10", or "2..10..2"; empty string means empty list."""
    text = text.strip()
    if not text:
        return []
    if ".." in text:
        parts = text.split("..")
        if len(parts) not in (2, 3):
            raise ValueError(f"bad integer range {text!r}")
        lo, hi = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
        if step < 1:
            raise ValueError("range step must be >= 1")
        return list(range(lo, hi + 1, step))
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _parse_float_list(text: str) -> list[float]:
    text = text.strip()
    if not text:
        return []
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _round_floats(obj):
    """Clamp every float to 12 significant digits so output re-parses to
    exactly what was printed."""
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def load_config_file(path: str) -> dict[str, str]:
    """Parse `key = value` lines; '#' starts a comment, blanks are skipped."""
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip().lower().replace("-", "_")] = value.strip()
    return values


_CONFIG_FIELDS = {
    "n": str,
    "oracle_kind": str,
    "constant_value": int,
    "truth_table": str,
    "seed": int,
    "variant": str,
    "schedule": str,
    "t": str,
    "epsilon": float,
    "steps_per_unit_time": int,
    "shots": int,
    "engine": str,
    "output": str,
    "trace_out": str,
    "grid_points": int,
    "target_fidelity": float,
    "tol": float,
    "t_max": float,
    "scan_dt": float,
    "workers": int,
    "max_grid": int,
}


def _merged(args: argparse.Namespace) -> dict:
    """Flags override config-file values, which override defaults."""
    file_values: dict[str, str] = {}
    if getattr(args, "config", None):
        file_values = load_config_file(args.config)
        unknown = set(file_values) - set(_CONFIG_FIELDS)
        if unknown:
            raise ValidationError(f"unknown config keys: {', '.join(sorted(unknown))}")

    merged: dict = {}
    problems: list[str] = []
    for key, cast in _CONFIG_FIELDS.items():
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            merged[key] = flag_value
        elif key in file_values:
            try:
                merged[key] = cast(file_values[key])
            except ValueError as exc:
                problems.append(f"{key}: {exc}")
    if problems:
        raise ValidationError("invalid config values: " + "; ".join(problems))
    return merged


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    m = _merged(args)
    problems: list[str] = []

    def take(key, default):
        return m.get(key, default)

    try:
        n_values = _parse_int_list(str(take("n", "4")))
    except ValueError as exc:
        problems.append(f"n: {exc}")
        n_values = []
    try:
        T_values = _parse_float_list(str(take("t", "40")))
    except ValueError as exc:
        problems.append(f"T: {exc}")
        T_values = []

    oracle_kind = str(take("oracle_kind", "constant")).lower()
    if oracle_kind not in _ORACLE_CHOICES:
        problems.append(f"oracle_kind: must be one of {_ORACLE_CHOICES}, got {oracle_kind!r}")

    variant_name = str(take("variant", "modified")).lower()
    try:
        variant = states.Variant(variant_name)
    except ValueError:
        problems.append(f"variant: must be 'original' or 'modified', got {variant_name!r}")
        variant = states.Variant.MODIFIED

    schedule_name = str(take("schedule", "linear")).lower()
    try:
        schedule = evolution.ScheduleKind(schedule_name)
    except ValueError:
        problems.append(f"schedule: must be 'linear' or 'local-adiabatic', got {schedule_name!r}")
        schedule = evolution.ScheduleKind.LINEAR

    engine = str(take("engine", "effective-2d")).lower()
    if engine not in _ENGINE_CHOICES:
        problems.append(f"engine: must be one of {_ENGINE_CHOICES}, got {engine!r}")

    cfg = ExperimentConfig(
        n_values=n_values,
        oracle_kind=oracle_kind,
        constant_value=int(take("constant_value", 0)),
        truth_table=take("truth_table", None),
        seed=int(take("seed", 0)),
        variant=variant,
        schedule=schedule,
        T_values=T_values,
        epsilon=float(take("epsilon", 0.1)),
        steps_per_unit_time=int(take("steps_per_unit_time", 200)),
        shots=int(take("shots", 1024)),
        engine=engine,
        output=str(take("output", "-")),
        trace_out=take("trace_out", None),
        grid_points=int(take("grid_points", 1001)),
        target_fidelity=take("target_fidelity", None),
        tol=float(take("tol", 0.01)),
        t_max=float(take("t_max", 200.0)),
        scan_dt=float(take("scan_dt", 0.5)),
        workers=int(take("workers", 1)),
        max_grid=int(take("max_grid", 512)),
    )

    for n in cfg.n_values:
        if not 1 <= n <= oracle.MAX_QUBITS:
            problems.append(f"n: {n} outside 1..{oracle.MAX_QUBITS}")
    if cfg.engine in ("full-space", "both"):
        too_big = [n for n in cfg.n_values if n > FULL_SPACE_MAX_N]
        if too_big:
            problems.append(
                f"engine: the full-space engine is capped at n <= {FULL_SPACE_MAX_N}; "
                f"got n = {too_big}"
            )
    if cfg.oracle_kind == "from-table":
        if not cfg.truth_table:
            problems.append("truth_table: required when oracle_kind = from-table")
    if cfg.constant_value not in (0, 1):
        problems.append(f"constant_value: must be 0 or 1, got {cfg.constant_value}")
    if not 0.0 < cfg.epsilon < 1.0:
        problems.append(f"epsilon: must lie in (0, 1), got {cfg.epsilon}")
    if cfg.steps_per_unit_time < 1:
        problems.append("steps_per_unit_time: must be >= 1")
    if cfg.shots < 0:
        problems.append("shots: must be >= 0")
    if any(T <= 0 for T in cfg.T_values):
        problems.append(f"T: values must be positive, got {cfg.T_values}")
    if cfg.target_fidelity is not None and not 0.5 <= float(cfg.target_fidelity) < 1.0:
        problems.append(f"target_fidelity: must lie in [0.5, 1), got {cfg.target_fidelity}")
    if cfg.workers < 1:
        problems.append("workers: must be >= 1")
    if cfg.grid_points < 2:
        problems.append("grid_points: must be >= 2")

    if problems:
        raise ValidationError("invalid configuration: " + "; ".join(problems))
    return cfg


# ---------------------------------------------------------------------------
# experiment assembly


def _build_oracle(cfg: ExperimentConfig, n: int) -> oracle.BooleanOracle:
    if cfg.oracle_kind == "constant":
        return oracle.make_constant(n, cfg.constant_value)
    if cfg.oracle_kind == "balanced":
        return oracle.make_balanced(n, cfg.seed)
    table = oracle.from_string(cfg.truth_table)
    if table.n != n:
        raise ValidationError(
            f"truth_table: table is for n={table.n} but the run requests n={n}"
        )
    return table


def _build_schedule(
    cfg: ExperimentConfig, h: hamiltonian.ProjectorInterpolation, T: Optional[float]
) -> evolution.Schedule:
    if cfg.schedule is evolution.ScheduleKind.LINEAR:
        if T is None:
            raise ValidationError("T: required for the linear schedule")
        return evolution.linear_schedule(T)
    local = evolution.build_local_schedule(h, cfg.epsilon)
    if T is not None:
        local = evolution.rescale_schedule(local, T)
    return local


def _steps_for(cfg: ExperimentConfig, T: float) -> int:
    return max(1, math.ceil(cfg.steps_per_unit_time * T))


def _run_single(cfg: ExperimentConfig, n: int, T: Optional[float]):
    """Oracle, interpolation, schedule, and the evolutions one config asks for."""
    orc = _build_oracle(cfg, n)
    h = hamiltonian.variant_interpolation(orc, cfg.variant)
    schedule = _build_schedule(cfg, h, T)
    steps = _steps_for(cfg, schedule.T)
    results = {}
    if cfg.engine in ("full-space", "both"):
        results["full-space"] = evolution.evolve_full(h, schedule, steps=steps)
    if cfg.engine in ("effective-2d", "both"):
        results["effective-2d"] = evolution.evolve_effective(h, schedule, steps=steps)
    primary = results.get(cfg.engine) or results["full-space"]
    return orc, h, schedule, steps, results, primary


def _resolve_path(path: str) -> Path:
    p = Path(path)
    if not p.is_absolute():
        base = os.environ.get("ADIABATIC_DJ_OUTDIR")
        if base:
            p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _emit_text(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        _resolve_path(output).write_text(text, newline="")


def _emit_json(payload: dict, output: str) -> None:
    _emit_text(json.dumps(_round_floats(payload), sort_keys=True, indent=2) + "\n", output)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _trace_csv(result: evolution.EvolutionResult) -> str:
    return _csv_text(["t", "s", "fid"], [[p.t, p.s, p.fidelity] for p in result.trace])


# ---------------------------------------------------------------------------
# subcommands


def cmd_simulate(cfg: ExperimentConfig) -> int:
    if len(cfg.n_values) != 1:
        raise ValidationError(f"n: simulate takes exactly one n, got {cfg.n_values}")
    if len(cfg.T_values) > 1:
        raise ValidationError(f"T: simulate takes at most one T, got {cfg.T_values}")
    n = cfg.n_values[0]
    T = cfg.T_values[0] if cfg.T_values else None
    orc, h, schedule, steps, results, primary = _run_single(cfg, n, T)

    payload = {
        "n": n,
        "N": orc.N,
        "oracle": oracle.to_string(orc),
        "oracle_kind": orc.kind.value,
        "variant": cfg.variant.value,
        "schedule": cfg.schedule.value,
        "T": schedule.T,
        "steps": steps,
        "seed": cfg.seed,
        "engine": cfg.engine,
        "fidelity": primary.fidelity,
        "min_gap_seen": primary.min_gap_seen,
    }
    if cfg.schedule is evolution.ScheduleKind.LOCAL_ADIABATIC:
        payload["epsilon"] = cfg.epsilon
    if cfg.engine == "both":
        payload["fidelity_full"] = results["full-space"].fidelity
        payload["fidelity_effective"] = results["effective-2d"].fidelity
        payload["engine_disagreement"] = abs(
            results["full-space"].fidelity - results["effective-2d"].fidelity
        )
    if cfg.shots > 0:
        record = measurement.measure(primary.final_state, cfg.shots, cfg.seed, cfg.variant)
        payload["measurement"] = {
            "shots": record.shots,
            "verdict": record.verdict.value,
            "confidence": record.confidence,
            "histogram": {str(k): v for k, v in sorted(record.histogram.items())},
        }
    _emit_json(payload, cfg.output)
    if cfg.trace_out:
        _emit_text(_trace_csv(primary), cfg.trace_out)
    return 0


def cmd_gap_scan(cfg: ExperimentConfig) -> int:
    if len(cfg.n_values) != 1:
        raise ValidationError(f"n: gap-scan takes exactly one n, got {cfg.n_values}")
    n = cfg.n_values[0]
    if n > FULL_SPACE_MAX_N:
        raise ValidationError(
            f"n: gap-scan diagonalizes the dense matrix and is capped at n <= {FULL_SPACE_MAX_N}"
        )
    orc = _build_oracle(cfg, n)
    h = hamiltonian.variant_interpolation(orc, cfg.variant)
    rows = []
    for i in range(cfg.grid_points):
        s = i / (cfg.grid_points - 1)
        numeric = hamiltonian.gap_numeric(h, s)
        analytic = hamiltonian.gap_analytic(h, s)
        rows.append([s, numeric.e0, numeric.e1, numeric.gap, analytic.gap])
    _emit_text(_csv_text(["s", "e0", "e1", "gap", "gap_analytic"], rows), cfg.output)
    return 0


def _sweep_point(payload: tuple) -> dict:
    cfg_dict, n, T = payload
    cfg = ExperimentConfig(**cfg_dict)
    orc = _build_oracle(cfg, n)
    h = hamiltonian.variant_interpolation(orc, cfg.variant)
    engine = (
        evolution.Engine.FULL_SPACE if cfg.engine == "full-space" else evolution.Engine.EFFECTIVE_2D
    )
    if cfg.target_fidelity is not None:
        t_star = evolution.minimal_time(
            h,
            float(cfg.target_fidelity),
            cfg.schedule,
            cfg.tol,
            engine=engine,
            epsilon_ref=cfg.epsilon,
            t_max=cfg.t_max,
            scan_dt=cfg.scan_dt,
            steps_per_unit=cfg.steps_per_unit_time,
        )
        if t_star > 0:
            schedule = _build_schedule(cfg, h, t_star)
            result = evolution.evolve(h, schedule, engine, steps=_steps_for(cfg, t_star))
            fidelity, min_gap = result.fidelity, result.min_gap_seen
        else:
            fidelity, min_gap = h.c * h.c, hamiltonian.g_min(h)
        T_out = t_star
    else:
        schedule = _build_schedule(cfg, h, T)
        result = evolution.evolve(h, schedule, engine, steps=_steps_for(cfg, schedule.T))
        fidelity, min_gap = result.fidelity, result.min_gap_seen
        T_out = schedule.T
    return {
        "n": n,
        "N": orc.N,
        "variant": cfg.variant.value,
        "schedule": cfg.schedule.value,
        "T_or_Tstar": T_out,
        "fidelity": fidelity,
        "min_gap": min_gap,
    }


def cmd_sweep(cfg: ExperimentConfig) -> int:
    if cfg.engine == "both":
        raise ValidationError("engine: sweep needs a single engine (full-space or effective-2d)")
    if cfg.target_fidelity is not None or cfg.schedule is evolution.ScheduleKind.LOCAL_ADIABATIC:
        points = [(n, None) for n in cfg.n_values]
    else:
        if not cfg.T_values:
            raise ValidationError("T: sweep with a linear schedule needs at least one T")
        points = [(n, T) for n in cfg.n_values for T in cfg.T_values]
    if len(points) > cfg.max_grid:
        raise ValidationError(
            f"max_grid: sweep grid has {len(points)} points, above the cap {cfg.max_grid}"
        )

    cfg_dict = dict(cfg.__dict__)
    payloads = [(cfg_dict, n, T) for n, T in points]
    if cfg.workers > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_sweep_point, payloads))
    else:
        rows = [_sweep_point(p) for p in payloads]

    rows.sort(key=lambda r: (r["n"], r["T_or_Tstar"]))
    header = ["n", "N", "variant", "schedule", "T_or_Tstar", "fidelity", "min_gap"]
    _emit_text(_csv_text(header, [[r[k] for k in header] for r in rows]), cfg.output)
    return 0


def cmd_classify(cfg: ExperimentConfig) -> int:
    if len(cfg.n_values) != 1:
        raise ValidationError(f"n: classify takes exactly one n, got {cfg.n_values}")
    if cfg.shots < 1:
        raise ValidationError("shots: classify needs at least one shot")
    n = cfg.n_values[0]
    T = cfg.T_values[0] if cfg.T_values else None
    orc, h, schedule, steps, results, primary = _run_single(cfg, n, T)
    record = measurement.measure(primary.final_state, cfg.shots, cfg.seed, cfg.variant)
    payload = {
        "n": n,
        "oracle": oracle.to_string(orc),
        "oracle_kind": orc.kind.value,
        "variant": cfg.variant.value,
        "T": schedule.T,
        "fidelity": primary.fidelity,
        "shots": record.shots,
        "verdict": record.verdict.value,
        "confidence": record.confidence,
        "histogram": {str(k): v for k, v in sorted(record.histogram.items())},
    }
    _emit_json(payload, cfg.output)
    return 0


# ---------------------------------------------------------------------------
# argument parsing and entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); validation errors are exit 1
        raise ValidationError(message)


def _add_experiment_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value config file; flags override it")
    p.add_argument("--n", help="qubit count: int, comma list, or lo..hi[..step]")
    p.add_argument("--oracle-kind", dest="oracle_kind", choices=_ORACLE_CHOICES)
    p.add_argument("--constant-value", dest="constant_value", type=int, choices=(0, 1))
    p.add_argument("--truth-table", dest="truth_table", help='explicit table, e.g. "n=2:6"')
    p.add_argument("--seed", type=int, help="seed for balanced-table placement and sampling")
    p.add_argument("--variant", choices=[v.value for v in states.Variant])
    p.add_argument("--schedule", choices=[k.value for k in evolution.ScheduleKind])
    p.add_argument("--T", dest="t", help="total time: float or comma list")
    p.add_argument("--epsilon", type=float, help="adiabatic accuracy parameter")
    p.add_argument("--steps-per-unit-time", dest="steps_per_unit_time", type=int)
    p.add_argument("--shots", type=int, help="measurement shots (0 skips measurement)")
    p.add_argument("--engine", choices=_ENGINE_CHOICES)
    p.add_argument("--output", help="output path, '-' for stdout")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="adiabatic-dj", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one evolution and emit a JSON result")
    _add_experiment_options(p_sim)
    p_sim.add_argument("--trace-out", dest="trace_out", help="also write a t,s,fid CSV trace")
    p_sim.set_defaults(func=cmd_simulate)

    p_gap = sub.add_parser("gap-scan", help="CSV of numeric and analytic spectra over s")
    _add_experiment_options(p_gap)
    p_gap.add_argument("--grid-points", dest="grid_points", type=int)
    p_gap.set_defaults(func=cmd_gap_scan)

    p_sweep = sub.add_parser("sweep", help="grid-run fidelities or minimal times to CSV")
    _add_experiment_options(p_sweep)
    p_sweep.add_argument(
        "--target-fidelity", dest="target_fidelity", type=float,
        help="search the minimal T reaching this fidelity instead of using --T",
    )
    p_sweep.add_argument("--tol", type=float, help="bisection tolerance for the minimal T")
    p_sweep.add_argument("--t-max", dest="t_max", type=float)
    p_sweep.add_argument("--scan-dt", dest="scan_dt", type=float)
    p_sweep.add_argument("--workers", type=int, help="parallel grid workers")
    p_sweep.add_argument("--max-grid", dest="max_grid", type=int)
    p_sweep.set_defaults(func=cmd_sweep)

    p_cls = sub.add_parser("classify", help="evolve, measure, and print the verdict JSON")
    _add_experiment_options(p_cls)
    p_cls.set_defaults(func=cmd_classify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        cfg = build_config(args)
        return args.func(cfg)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AdiabaticDJError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
