"""Command-line front end: sweeps, optimisation curves, simulation, validation.

Commands emit CSV (12 significant digits, comma-separated, '\n' line
endings) or, with --json, a single JSON document carrying the same data
plus `schema_version`.  --plot writes a gnuplot script next to the CSV
referencing it by relative path; nothing is ever rendered here.

Exit codes: 0 success, 2 bad arguments, 3 numerical failure,
4 validation failure.
"""

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .bath import OhmicSpectrum
from .dephasing import (
    decoherence_factor_dT_profile,
    decoherence_factor_profile,
)
from .estimate import EstimationError, EstimationRun, cramer_rao_check
from .metrology import qfi_dephasing, qsnr
from .optimize import OptimizerConfig, optimal_temperature, optimal_time
from .quadrature import QuadratureConfig, QuadratureError
from .validate import run_validation

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_BAD_ARGS = 2
EXIT_NUMERICAL = 3
EXIT_VALIDATION = 4


class CliError(ValueError):
    pass


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _sweep(lo, hi, points, scale):
    if lo >= hi:
        raise CliError(f"sweep needs lo < hi, got [{lo}, {hi}]")
    if points < 2:
        raise CliError("sweep needs at least 2 points")
    if scale == "log":
        if lo <= 0.0:
            raise CliError("log scale requires a positive lower bound")
        return np.geomspace(lo, hi, points)
    if scale == "linear":
        return np.linspace(lo, hi, points)
    raise CliError(f"unknown scale {scale!r} (use linear|log)")


def _load_config(path):
    config = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        config[key.replace("-", "_")] = value
    if "json" in config:  # flag is --json, dest is json_out
        config["json_out"] = config.pop("json")
    return config


def _resolve(args, config, name, cast, default=None, required=False):
    value = getattr(args, name, None)
    if value is None and name in config:
        value = config[name]
    if value is None:
        value = default
    if value is None:
        if required:
            raise CliError(f"missing required option --{name.replace('_', '-')}")
        return None
    if isinstance(value, str) and cast is not str:
        if cast is bool:
            return value.strip().lower() in ("1", "true", "yes", "on")
        try:
            return cast(value)
        except ValueError as exc:
            raise CliError(f"bad value for --{name.replace('_', '-')}: {value!r}") from exc
    return cast(value) if not isinstance(value, bool) and cast is not str else value


def _apply_common(args, config):
    # config may default the output flags as well; explicit flags win
    args.out = _resolve(args, config, "out", str)
    args.json_out = _resolve(args, config, "json_out", bool, False)
    args.plot = _resolve(args, config, "plot", bool, False)


def _emit(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _emit_table(command, params, columns, rows, args, plot_logx=False):
    if args.json_out:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "params": params,
            "columns": columns,
            "rows": [[(v if isinstance(v, str) else float(v)) for v in row] for row in rows],
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
        return
    lines = [",".join(columns)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    _emit("\n".join(lines) + "\n", args.out)
    if args.plot:
        if not args.out:
            raise CliError("--plot requires --out (the script references the CSV)")
        _write_plot_script(args.out, command, columns, plot_logx)


def _write_plot_script(csv_path, command, columns, logx):
    csv = Path(csv_path)
    script = csv.with_suffix(csv.suffix + ".gp")
    rel = csv.name
    lines = [
        f"# gnuplot script for the {command} output; run from this directory",
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set xlabel '{columns[0]}'",
    ]
    if logx:
        lines.append("set logscale x")
    if command == "qfi-surface":
        lines += [
            "set dgrid3d 40,40",
            "set hidden3d",
            f"splot '{rel}' using 1:2:3 with lines",
        ]
    else:
        numeric = [i for i, name in enumerate(columns[1:], start=2) if name != "kind"]
        plots = ", ".join(f"'{rel}' using 1:{i} with lines" for i in numeric)
        lines.append(f"plot {plots}")
    script.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _qfi_rows_for_time(spec, temps, t, qcfg):
    gammas = decoherence_factor_profile(spec, temps, t, qcfg)
    dgammas = decoherence_factor_dT_profile(spec, temps, t, qcfg)
    return [qfi_dephasing(g, dg) for g, dg in zip(gammas, dgammas)]


def cmd_gamma(args, config):
    s = _resolve(args, config, "s", float, required=True)
    T = _resolve(args, config, "temp", float, required=True)
    spec = OhmicSpectrum(s)
    scale = _resolve(args, config, "scale", str, "linear")
    sweep = _sweep(
        _resolve(args, config, "t_min", float, 0.0),
        _resolve(args, config, "t_max", float, 10.0),
        _resolve(args, config, "points", int, 41),
        scale,
    )
    qcfg = QuadratureConfig()
    rows = []
    for t in sweep:
        g = decoherence_factor_profile(spec, [T], float(t), qcfg)[0]
        dg = decoherence_factor_dT_profile(spec, [T], float(t), qcfg)[0]
        rows.append((float(t), float(g), float(dg)))
    params = {"s": s, "temp": T}
    _emit_table("gamma", params, ["t", "gamma", "dgamma_dT"], rows, args,
                plot_logx=scale == "log")
    return EXIT_OK


def cmd_qfi_surface(args, config):
    s = _resolve(args, config, "s", float, required=True)
    spec = OhmicSpectrum(s)
    temps = _sweep(
        _resolve(args, config, "temp_min", float, 0.01),
        _resolve(args, config, "temp_max", float, 10.0),
        _resolve(args, config, "temp_points", int, 20),
        _resolve(args, config, "temp_scale", str, "log"),
    )
    times = _sweep(
        _resolve(args, config, "t_min", float, 0.1),
        _resolve(args, config, "t_max", float, 50.0),
        _resolve(args, config, "points", int, 20),
        _resolve(args, config, "scale", str, "log"),
    )
    qcfg = QuadratureConfig()
    H = np.empty((temps.size, times.size))
    for j, t in enumerate(times):
        H[:, j] = _qfi_rows_for_time(spec, temps, float(t), qcfg)
    rows = [
        (float(T), float(t), float(H[i, j]), float(T * T * H[i, j]))
        for i, T in enumerate(temps)
        for j, t in enumerate(times)
    ]
    _emit_table("qfi-surface", {"s": s}, ["T", "t", "H", "Q"], rows, args)
    return EXIT_OK


def _optimum_sweep(args, config):
    s = _resolve(args, config, "s", float, required=True)
    spec = OhmicSpectrum(s)
    qcfg = QuadratureConfig()
    grid_points = _resolve(args, config, "grid_points", int, 120)
    return spec, qcfg, grid_points, s


def cmd_topt(args, config):
    spec, qcfg, grid_points, s = _optimum_sweep(args, config)
    temps = _sweep(
        _resolve(args, config, "temp_min", float, 0.01),
        _resolve(args, config, "temp_max", float, 10.0),
        _resolve(args, config, "temp_points", int, 10),
        _resolve(args, config, "temp_scale", str, "log"),
    )
    ocfg = OptimizerConfig(bracket_lo=1e-2, bracket_hi=1e3, grid_points=grid_points)
    rows = []
    for T in temps:
        res = optimal_time(spec, float(T), ocfg, qcfg)
        rows.append((float(T), res.x_opt, res.f_opt, res.kind.value))
    _emit_table("topt", {"s": s}, ["T", "t_opt", "H_opt", "kind"], rows, args, plot_logx=True)
    return EXIT_OK


def cmd_tempopt(args, config):
    spec, qcfg, grid_points, s = _optimum_sweep(args, config)
    times = _sweep(
        _resolve(args, config, "t_min", float, 0.5),
        _resolve(args, config, "t_max", float, 50.0),
        _resolve(args, config, "points", int, 10),
        _resolve(args, config, "scale", str, "log"),
    )
    ocfg = OptimizerConfig(bracket_lo=1e-3, bracket_hi=1e2, grid_points=grid_points)
    rows = []
    for t in times:
        res = optimal_temperature(spec, float(t), ocfg, qcfg)
        rows.append((float(t), res.x_opt, res.f_opt, res.kind.value))
    _emit_table("tempopt", {"s": s}, ["t", "T_opt", "H_opt", "kind"], rows, args, plot_logx=True)
    return EXIT_OK


def cmd_qsnr(args, config):
    raw = _resolve(args, config, "s_list", str, required=True)
    try:
        s_values = [float(part) for part in raw.split(",") if part.strip()]
    except ValueError as exc:
        raise CliError(f"bad --s-list: {raw!r}") from exc
    if not s_values:
        raise CliError("--s-list is empty")
    temps = _sweep(
        _resolve(args, config, "temp_min", float, 0.01),
        _resolve(args, config, "temp_max", float, 10.0),
        _resolve(args, config, "temp_points", int, 10),
        _resolve(args, config, "temp_scale", str, "log"),
    )
    grid_points = _resolve(args, config, "grid_points", int, 120)
    qcfg = QuadratureConfig()
    ocfg = OptimizerConfig(bracket_lo=1e-2, bracket_hi=1e3, grid_points=grid_points)
    rows = []
    for s in s_values:
        spec = OhmicSpectrum(s)
        for T in temps:
            res = optimal_time(spec, float(T), ocfg, qcfg)
            rows.append((s, float(T), qsnr(float(T), res.f_opt)))
    _emit_table("qsnr", {"s_list": s_values}, ["s", "T", "Q_opt"], rows, args, plot_logx=True)
    return EXIT_OK


def cmd_coherence(args, config):
    s = _resolve(args, config, "s", float, required=True)
    T = _resolve(args, config, "temp", float, required=True)
    spec = OhmicSpectrum(s)
    times = _sweep(
        _resolve(args, config, "t_min", float, 0.1),
        _resolve(args, config, "t_max", float, 50.0),
        _resolve(args, config, "points", int, 40),
        _resolve(args, config, "scale", str, "log"),
    )
    qcfg = QuadratureConfig()
    rows = []
    for t in times:
        g = decoherence_factor_profile(spec, [T], float(t), qcfg)[0]
        dg = decoherence_factor_dT_profile(spec, [T], float(t), qcfg)[0]
        rows.append((float(t), qfi_dephasing(float(g), float(dg)), math.exp(-float(g))))
    _emit_table("coherence", {"s": s, "temp": T}, ["t", "H", "rc"], rows, args, plot_logx=True)
    return EXIT_OK


def cmd_simulate(args, config):
    s = _resolve(args, config, "s", float, required=True)
    T = _resolve(args, config, "temp", float, required=True)
    t_raw = _resolve(args, config, "t", str, "auto")
    t = None if str(t_raw).strip().lower() == "auto" else float(t_raw)
    run = EstimationRun(
        true_T=T,
        t=t,
        M=_resolve(args, config, "shots", int, 10_000),
        n_reps=_resolve(args, config, "reps", int, 100),
        seed=_resolve(args, config, "seed", int, 0),
    )
    spec = OhmicSpectrum(s)
    report = cramer_rao_check(run, spec, QuadratureConfig())
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "simulate",
        "params": {
            "s": s, "temp": T, "t": "auto" if t is None else t,
            "shots": run.M, "reps": run.n_reps, "seed": run.seed,
        },
        "report": {
            "t": report.t,
            "qfi": report.qfi,
            "mean_estimate": report.mean_estimate,
            "variance": report.variance,
            "crb": report.crb,
            "ratio": report.ratio,
            "n_degenerate": report.n_degenerate,
        },
    }
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_validate(args, config):
    results = run_validation()
    all_passed = all(r.passed for r in results)
    if args.json_out:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": "validate",
            "passed": all_passed,
            "checks": [
                {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
            ],
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    else:
        width = max(len(r.name) for r in results)
        lines = [
            f"{'PASS' if r.passed else 'FAIL'}  {r.name.ljust(width)}  {r.detail}"
            for r in results
        ]
        lines.append(f"{'ALL CHECKS PASSED' if all_passed else 'VALIDATION FAILED'}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if all_passed else EXIT_VALIDATION


_COMMANDS = {
    "gamma": cmd_gamma,
    "qfi-surface": cmd_qfi_surface,
    "topt": cmd_topt,
    "tempopt": cmd_tempopt,
    "qsnr": cmd_qsnr,
    "coherence": cmd_coherence,
    "simulate": cmd_simulate,
    "validate": cmd_validate,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qubit-thermometry",
        description="Dephasing thermometry of Ohmic-family environments "
        "(cutoff-rescaled units).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, flags):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", default=None, help="key = value defaults file")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--json", dest="json_out", action="store_const", const=True,
                       default=None, help="emit a JSON document instead of CSV")
        p.add_argument("--plot", action="store_const", const=True, default=None,
                       help="also write a gnuplot script next to the CSV")
        for flag, kw in flags:
            p.add_argument(flag, default=None, **kw)
        return p

    t_sweep = [
        ("--t-min", {"type": float, "help": "sweep start"}),
        ("--t-max", {"type": float, "help": "sweep end"}),
        ("--points", {"type": int, "help": "sweep size"}),
        ("--scale", {"choices": ["linear", "log"], "help": "sweep spacing"}),
    ]
    temp_sweep = [
        ("--temp-min", {"type": float, "help": "temperature sweep start"}),
        ("--temp-max", {"type": float, "help": "temperature sweep end"}),
        ("--temp-points", {"type": int, "help": "temperature sweep size"}),
        ("--temp-scale", {"choices": ["linear", "log"], "help": "temperature spacing"}),
    ]
    s_flag = [("--s", {"type": float, "help": "ohmicity parameter"})]
    temp_flag = [("--temp", {"type": float, "help": "bath temperature"})]
    grid_flag = [("--grid-points", {"type": int, "help": "optimizer coarse-grid size"})]

    add("gamma", "decoherence factor along a time sweep", s_flag + temp_flag + t_sweep)
    add("qfi-surface", "QFI over a (T, t) grid", s_flag + temp_sweep + t_sweep)
    add("topt", "optimal interaction time vs temperature", s_flag + temp_sweep + grid_flag)
    add("tempopt", "optimal temperature vs interaction time", s_flag + t_sweep + grid_flag)
    add("qsnr", "QSNR at the optimal time vs temperature",
        [("--s-list", {"type": str, "help": "comma-separated ohmicity values"})]
        + temp_sweep + grid_flag)
    add("coherence", "QFI and residual coherence along a time sweep",
        s_flag + temp_flag + t_sweep)
    add("simulate", "Monte Carlo Cramér-Rao experiment (JSON report)",
        s_flag + temp_flag + [
            ("--t", {"type": str, "help": "interaction time or 'auto'"}),
            ("--shots", {"type": int, "help": "outcomes per experiment (M)"}),
            ("--reps", {"type": int, "help": "number of experiments"}),
            ("--seed", {"type": int, "help": "64-bit RNG seed"}),
        ])
    add("validate", "run the invariant suite and exit 0 iff it passes", [])
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_BAD_ARGS
    config = {}
    try:
        if args.config:
            config = _load_config(args.config)
        _apply_common(args, config)
        return _COMMANDS[args.command](args, config)
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except (QuadratureError, EstimationError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
