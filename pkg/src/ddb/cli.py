"""Command-line front end.

Subcommands:

  run          integrate one scenario, write one trajectory file per
               stepper plus metrics.json and timing.csv
  convergence  step-size sweep against the adaptive reference
  compare      run alias defaulting to every stepper side by side
  scenarios    list the built-in configurations

All files land in the --out directory (default '.').  Trajectories are
CSV by default (columns t,M1,M2,M3,energy,casimir, 17 significant
digits, LF line endings) or JSON with --format json; either way reruns
are byte-identical.  JSON files embed schema_version so downstream
readers can reject incompatible layouts.

Exit status: 0 on success; 1 for solver failures and invalid inputs
(unknown scenario or stepper, bad step-size list, malformed config);
2 for I/O failures (unreadable config, unwritable output).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .dynamics import DissipationMetric, InertiaModel
from .errors import StepFailure, StepSizeUnderflow, UnknownScenario
from .harness import (
    DEFAULT_CONVERGENCE_H,
    SCENARIO_NAMES,
    ScenarioConfig,
    builtin_scenario,
    compare_methods,
    convergence_study,
)
from .integrators import STEPPER_NAMES, stepper_from_name

SCHEMA_VERSION = "1"

CONFIG_KEYS = {"name", "inertia", "alpha", "omega0", "t0", "t_end", "h", "steppers"}
REQUIRED_CONFIG_KEYS = CONFIG_KEYS - {"name", "steppers"}


class ConfigError(ValueError):
    """Invalid user input (flags or config content); exits with status 1."""


class IOFailure(RuntimeError):
    """Filesystem problem reading or writing; exits with status 2."""


@dataclass(frozen=True)
class RunManifest:
    """Resolved invocation: scenario, steppers, grid, and output policy.

    Exactly one scenario source: a built-in name or a config file path.
    Outputs are deterministic functions of the manifest (seedless), so
    identical invocations rewrite identical bytes.
    """

    scenario: ScenarioConfig
    steppers: tuple
    h_values: tuple
    out_dir: str
    out_format: str
    deterministic: bool = True


def _write_atomic(path: str, data: str) -> None:
    """Write via a temp file in the target directory, then rename over."""
    directory = os.path.dirname(path) or "."
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    except OSError as exc:
        raise IOFailure(f"cannot write in {directory}: {exc}") from exc
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except OSError as exc:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise IOFailure(f"cannot write {path}: {exc}") from exc
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def trajectory_csv(record) -> str:
    lines = ["t,M1,M2,M3,energy,casimir"]
    for t, m, e, c in zip(
        record.times, record.momenta, record.energies, record.casimirs
    ):
        lines.append(
            ",".join([_fmt(t), _fmt(m[0]), _fmt(m[1]), _fmt(m[2]), _fmt(e), _fmt(c)])
        )
    return "\n".join(lines) + "\n"


def trajectory_json(scenario_name: str, record) -> str:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "scenario": scenario_name,
        "stepper": record.stepper,
        "t": [float(t) for t in record.times],
        "M1": [float(m[0]) for m in record.momenta],
        "M2": [float(m[1]) for m in record.momenta],
        "M3": [float(m[2]) for m in record.momenta],
        "energy": [float(e) for e in record.energies],
        "casimir": [float(c) for c in record.casimirs],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def convergence_csv(result) -> str:
    lines = ["h,error,excluded"]
    for h, err, ex in zip(result.hs, result.errors, result.excluded):
        lines.append(",".join([_fmt(h), _fmt(err), "true" if ex else "false"]))
    return "\n".join(lines) + "\n"


def convergence_json(scenario_name: str, result) -> str:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "scenario": scenario_name,
        "stepper": result.stepper,
        "h": list(result.hs),
        "error": list(result.errors),
        "excluded": list(result.excluded),
        "slope": result.slope,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def metrics_json(report) -> str:
    methods = []
    for m in report.methods:
        methods.append(
            {
                "stepper": m.stepper,
                "final_momentum": list(m.final_momentum)
                if m.final_momentum is not None
                else None,
                "final_energy": m.final_energy,
                "final_error": m.final_error,
                "max_casimir_drift": m.max_casimir_drift,
                "max_energy_increase": m.max_energy_increase,
                "distance_to_limit": m.distance_to_limit,
                "d_circle": m.d_circle,
                "d_plane": m.d_plane,
                "failure": m.failure,
            }
        )
    payload = {
        "schema_version": SCHEMA_VERSION,
        "scenario": report.scenario,
        "methods": methods,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def timing_csv(report) -> str:
    lines = ["integrator,runtime_seconds"]
    for m in report.methods:
        lines.append(f"{m.stepper},{_fmt(m.runtime_seconds)}")
    return "\n".join(lines) + "\n"


def load_scenario_file(path: str):
    """Parse a scenario JSON file; unknown keys are an error.

    Returns (ScenarioConfig, steppers) where steppers is the optional
    stepper-name list from the file, used when no --stepper flag is given.
    """
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise IOFailure(f"cannot read scenario file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: scenario file must hold a JSON object")
    unknown = set(raw) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
    missing = REQUIRED_CONFIG_KEYS - set(raw)
    if missing:
        raise ConfigError(f"{path}: missing keys {sorted(missing)}")
    try:
        inertia = InertiaModel(*[float(x) for x in raw["inertia"]])
        metric = DissipationMetric.isotropic(float(raw["alpha"]))
        omega0 = tuple(float(x) for x in raw["omega0"])
        if len(omega0) != 3:
            raise ValueError("omega0 must have three components")
        h = raw["h"]
        h = tuple(float(x) for x in h) if isinstance(h, list) else float(h)
        config = ScenarioConfig(
            name=str(raw.get("name", os.path.splitext(os.path.basename(path))[0])),
            inertia=inertia,
            metric=metric,
            omega0=omega0,
            t0=float(raw["t0"]),
            t_end=float(raw["t_end"]),
            h=h,
        )
        steppers = raw.get("steppers")
        if steppers is not None:
            steppers = [str(s) for s in steppers]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return config, steppers


def _resolve_scenario(args):
    """Return (scenario, steppers-from-config-file-or-None)."""
    config_steppers = None
    if args.config is not None and args.scenario is not None:
        raise ConfigError("pass either --scenario or --config, not both")
    if args.config is not None:
        scenario, config_steppers = load_scenario_file(args.config)
    else:
        name = args.scenario if args.scenario is not None else "A"
        try:
            scenario = builtin_scenario(name)
        except UnknownScenario as exc:
            raise ConfigError(
                f"unknown scenario {name!r}; choose from "
                f"{', '.join(SCENARIO_NAMES)} or pass --config"
            ) from exc
    if args.t_end is not None:
        if args.t_end <= scenario.t0:
            raise ConfigError("--t-end must lie after the scenario start time")
        scenario = replace(scenario, t_end=args.t_end)
    return scenario, config_steppers


def _resolve_steppers(tokens: Sequence[str]) -> tuple:
    names = []
    for token in tokens:
        expanded = STEPPER_NAMES if token == "all" else (token,)
        for name in expanded:
            if name not in names:
                names.append(name)
    try:
        return tuple(stepper_from_name(name) for name in names)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_h_list(text: str) -> tuple:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise ConfigError(f"bad --h value {text!r}: {exc}") from exc
    if not values:
        raise ConfigError(f"bad --h value {text!r}: no step sizes")
    return values


def _build_manifest(args, default_steppers) -> RunManifest:
    scenario, config_steppers = _resolve_scenario(args)
    # Flag wins over config-file stepper list; built-in default comes last.
    tokens = args.stepper or config_steppers or default_steppers
    steppers = _resolve_steppers(tokens)
    if args.h is not None:
        h_values = _parse_h_list(args.h)
    elif isinstance(scenario.h, tuple):
        h_values = scenario.h
    else:
        h_values = (scenario.h,)
    try:
        os.makedirs(args.out, exist_ok=True)
    except OSError as exc:
        raise IOFailure(f"cannot create output directory {args.out}: {exc}") from exc
    return RunManifest(
        scenario=scenario,
        steppers=steppers,
        h_values=h_values,
        out_dir=args.out,
        out_format=args.format,
    )


def _cmd_run(args) -> int:
    manifest = _build_manifest(args, default_steppers=["ddb-cay"])
    if len(manifest.h_values) != 1:
        raise ConfigError("run takes exactly one step size")
    scenario = manifest.scenario
    report, records = compare_methods(
        scenario, manifest.steppers, manifest.h_values[0]
    )
    for name, record in records.items():
        if manifest.out_format == "json":
            path = os.path.join(manifest.out_dir, f"{scenario.name}_{name}.json")
            _write_atomic(path, trajectory_json(scenario.name, record))
        else:
            path = os.path.join(manifest.out_dir, f"{scenario.name}_{name}.csv")
            _write_atomic(path, trajectory_csv(record))
        print(f"wrote {path}")
    _write_atomic(os.path.join(manifest.out_dir, "metrics.json"), metrics_json(report))
    _write_atomic(os.path.join(manifest.out_dir, "timing.csv"), timing_csv(report))
    print(f"wrote {os.path.join(manifest.out_dir, 'metrics.json')}")
    print(f"wrote {os.path.join(manifest.out_dir, 'timing.csv')}")
    failures = [m for m in report.methods if m.failure is not None]
    for m in failures:
        print(f"error: {m.stepper}: {m.failure}", file=sys.stderr)
    return 1 if failures else 0


def _cmd_convergence(args) -> int:
    manifest = _build_manifest(args, default_steppers=["ddb-cay"])
    scenario = manifest.scenario
    hs = manifest.h_values
    if args.h is None and len(hs) == 1:
        hs = DEFAULT_CONVERGENCE_H
    if len(hs) < 3:
        raise ConfigError("convergence needs at least three step sizes")
    try:
        results = convergence_study(scenario, manifest.steppers, hs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    for result in results:
        base = os.path.join(
            manifest.out_dir, f"{scenario.name}_{result.stepper}_convergence"
        )
        _write_atomic(base + ".csv", convergence_csv(result))
        _write_atomic(base + ".json", convergence_json(scenario.name, result))
        slope = "n/a" if result.slope is None else f"{result.slope:.3f}"
        print(f"wrote {base}.csv and .json (slope {slope})")
    return 0


def _cmd_compare(args) -> int:
    args.stepper = args.stepper or ["all"]
    return _cmd_run(args)


def _cmd_scenarios(args) -> int:
    for name in SCENARIO_NAMES:
        sc = builtin_scenario(name)
        moments = tuple(float(x) for x in sc.inertia.moments)
        print(
            f"{name}: inertia={moments} alpha={sc.metric.matrix[0][0]:g} "
            f"omega0={sc.omega0} t=[{sc.t0:g},{sc.t_end:g}] h={sc.h:g}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddb",
        description="Structure-preserving integrators for the dissipative rigid body.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--scenario", help="built-in scenario name (A, B, C)")
        p.add_argument("--config", help="scenario JSON file instead of --scenario")
        # no argparse choices: an unknown name must exit 1, not argparse's 2
        p.add_argument(
            "--stepper",
            action="append",
            default=None,
            metavar="NAME",
            help=f"stepper to run; repeatable, one of {', '.join(STEPPER_NAMES)} "
            "or 'all' for every stepper",
        )
        p.add_argument("--h", help="step size; comma-separated list for sweeps")
        p.add_argument(
            "--t-end", dest="t_end", type=float, help="override scenario end time"
        )
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument(
            "--format",
            choices=["csv", "json"],
            default="csv",
            help="trajectory file format (summaries are always JSON + CSV)",
        )

    p_run = sub.add_parser("run", help="integrate a scenario and write trajectories")
    add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_conv = sub.add_parser("convergence", help="step-size sweep against reference")
    add_common(p_conv)
    p_conv.set_defaults(func=_cmd_convergence)

    p_cmp = sub.add_parser("compare", help="run every requested stepper side by side")
    add_common(p_cmp)
    p_cmp.set_defaults(func=_cmd_compare)

    p_list = sub.add_parser("scenarios", help="list built-in scenarios")
    p_list.add_argument(
        "action", nargs="?", default="list", choices=["list"], help="listing action"
    )
    p_list.set_defaults(func=_cmd_scenarios)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (StepFailure, StepSizeUnderflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
