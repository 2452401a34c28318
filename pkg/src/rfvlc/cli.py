"""Command-line front end: metric sweeps and CSV emission.

Subcommands:
  prp-sweep    packet reception probability vs distance
  dor-sweep    delay outage rate vs delay threshold, at fixed distances
  rate-sweep   achievable data rate vs distance
  validate     parse and check a configuration, print violations

All numeric CSV fields are printed with 9 significant digits so that
golden-file comparisons are exact; outputs are byte-identical across runs
and worker counts for equal manifests.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from dataclasses import replace

from . import __version__
from .config import config_digest, parse_config
from .engine import SWEEP_DISTANCE, SWEEP_T_TH, SweepSpec, SweepTable, run_sweep
from .errors import ConfigError, InvalidArgumentError
from .metrics import MODE_LA, MODE_NON_LA, MODE_PURE_RF, MODE_PURE_VLC, MODES
from .scenario import ScenarioConfig, WeatherCondition

_DEFAULT_PRP_DISTANCES = tuple(float(d) for d in range(10, 251, 10))
_DEFAULT_RATE_DISTANCES = (50.0, 100.0, 150.0, 200.0, 250.0)
_DEFAULT_DOR_DISTANCES = (50.0, 200.0)
_DEFAULT_T_TH_MS = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 7.5, 10.0)


def _fmt(x: float) -> str:
    return format(x, ".9g")


def _parse_list(text: str, cast=float) -> tuple:
    try:
        return tuple(cast(part.strip()) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"bad list {text!r}: {exc}") from None


def _load(args) -> tuple[ScenarioConfig, SweepSpec]:
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = ""
    config, spec = parse_config(text)
    if args.seed is not None:
        spec = replace(spec, master_seed=args.seed)
    if args.trials is not None:
        spec = replace(spec, n_trials=args.trials)
    if args.weather:
        try:
            spec = replace(spec, weathers=tuple(
                WeatherCondition.preset(k) for k in _parse_list(args.weather, str)))
        except InvalidArgumentError as exc:
            raise ConfigError(str(exc)) from None
    if args.modes:
        modes = _parse_list(args.modes, str)
        for m in modes:
            if m not in MODES:
                raise ConfigError(f"unknown mode {m!r}")
        spec = replace(spec, modes=modes)
    return config, spec


class _OutputSet:
    """Tracks files written by one command; removes them all on failure.

    Used as a context manager: leaving the block via an exception deletes
    every file written so far, so a failed run never leaves partial CSVs.
    """

    def __init__(self, out_dir: str):
        self.out_dir = out_dir
        self.paths: list[str] = []
        os.makedirs(out_dir, exist_ok=True)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is not None:
            self.discard_all()
        return False

    def write_text(self, name: str, text: str) -> str:
        path = os.path.join(self.out_dir, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        self.paths.append(path)
        return path

    def discard_all(self):
        for path in self.paths:
            try:
                os.remove(path)
            except OSError:
                pass


def _write_manifest(out: _OutputSet, args, config, spec, subcommand: str):
    manifest = {
        "tool": "rfvlc",
        "tool_version": __version__,
        "subcommand": subcommand,
        "config_path": args.config or "",
        "output_dir": args.out,
        "master_seed": spec.master_seed,
        "n_trials": spec.n_trials,
        "config_sha256": config_digest(config, spec),
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    out.write_text("run.manifest", json.dumps(manifest, indent=2) + "\n")


def _estimate_fields(est) -> list[str]:
    return [_fmt(est.value), _fmt(est.stderr), _fmt(est.ci95_low),
            _fmt(est.ci95_high), str(est.n_trials)]


def _distance_csv(table: SweepTable, metric: str, value_header: str) -> str:
    lines = [f"distance_m,weather,mode,{value_header},stderr,ci95_low,ci95_high,n_trials"]
    for row in table.rows:
        if row.metric != metric:
            continue
        lines.append(",".join([_fmt(row.sweep_value), row.weather, row.mode]
                              + _estimate_fields(row.estimate)))
    return "\n".join(lines) + "\n"


def _gnuplot_files(out: _OutputSet, table: SweepTable, metric: str, stem: str):
    """One whitespace-delimited file per (weather, mode) curve."""
    curves: dict[tuple[str, str], list[str]] = {}
    for row in table.rows:
        if row.metric != metric:
            continue
        curves.setdefault((row.weather, row.mode), []).append(
            f"{_fmt(row.sweep_value)} {_fmt(row.estimate.value)} "
            f"{_fmt(row.estimate.stderr)}")
    for (weather, mode), lines in curves.items():
        out.write_text(f"{stem}_{weather}_{mode}.dat", "\n".join(lines) + "\n")


def cmd_prp_sweep(args) -> int:
    config, spec = _load(args)
    spec = replace(spec, variable=SWEEP_DISTANCE,
                   values=_parse_list(args.distances))
    with _OutputSet(args.out) as out:
        table = run_sweep(config, spec, n_workers=args.workers)
        out.write_text("prp_sweep.csv", _distance_csv(table, "prp", "prp"))
        if args.gnuplot:
            _gnuplot_files(out, table, "prp", "prp")
        _write_manifest(out, args, config, spec, "prp-sweep")
    return 0


def cmd_rate_sweep(args) -> int:
    config, spec = _load(args)
    if not args.modes:
        spec = replace(spec, modes=(MODE_PURE_VLC, MODE_PURE_RF, MODE_LA,
                                    MODE_NON_LA))
    spec = replace(spec, variable=SWEEP_DISTANCE,
                   values=_parse_list(args.distances))
    with _OutputSet(args.out) as out:
        table = run_sweep(config, spec, n_workers=args.workers)
        out.write_text("rate_sweep.csv",
                       _distance_csv(table, "rate_mbps", "rate_mbps"))
        if args.gnuplot:
            _gnuplot_files(out, table, "rate_mbps", "rate")
        _write_manifest(out, args, config, spec, "rate-sweep")
    return 0


def cmd_dor_sweep(args) -> int:
    config, spec = _load(args)
    t_th_ms = _parse_list(args.t_th_ms)
    distances = _parse_list(args.distances)
    with _OutputSet(args.out) as out:
        lines = ["t_th_ms,distance_m,weather,mode,dor,stderr,ci95_low,ci95_high,n_trials"]
        tables = []
        for distance in distances:
            dspec = replace(spec, variable=SWEEP_T_TH,
                            values=tuple(t / 1000.0 for t in t_th_ms))
            table = run_sweep(config.with_distance(distance), dspec,
                              n_workers=args.workers)
            tables.append((distance, table))
            for row in table.rows:
                lines.append(",".join(
                    [_fmt(row.sweep_value * 1000.0), _fmt(distance),
                     row.weather, row.mode] + _estimate_fields(row.estimate)))
        out.write_text("dor_sweep.csv", "\n".join(lines) + "\n")
        if args.gnuplot:
            for distance, table in tables:
                _gnuplot_files(out, table, "dor", f"dor_{_fmt(distance)}m")
        _write_manifest(out, args, config, spec, "dor-sweep")
    return 0


def cmd_validate(args) -> int:
    from .scenario import validate as validate_config
    config, spec = _load(args)
    problems = validate_config(config) + spec.check()
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return 1
    print("ok")
    return 0


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="path to key = value configuration file")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                   help="master seed override (64-bit)")
    p.add_argument("--trials", type=int, default=None,
                   help="trials per sweep point")
    p.add_argument("--weather", default="",
                   help="comma list of clear,rain,fog,dry_snow")
    p.add_argument("--modes", default="",
                   help="comma list of pure_vlc,pure_rf,la,non_la")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel worker processes (results are identical "
                        "for any worker count)")
    p.add_argument("--gnuplot", action="store_true",
                   help="also emit whitespace-delimited per-curve files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rfvlc",
        description="Monte Carlo simulator for hybrid RF-VLC V2I uplinks "
                    "at a road intersection")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("prp-sweep", help="packet reception probability vs distance")
    _add_common(p)
    p.add_argument("--distances",
                   default=",".join(_fmt(d) for d in _DEFAULT_PRP_DISTANCES))
    p.set_defaults(func=cmd_prp_sweep)

    p = sub.add_parser("dor-sweep", help="delay outage rate vs delay threshold")
    _add_common(p)
    p.add_argument("--distances",
                   default=",".join(_fmt(d) for d in _DEFAULT_DOR_DISTANCES))
    p.add_argument("--t-th-ms", dest="t_th_ms",
                   default=",".join(_fmt(t) for t in _DEFAULT_T_TH_MS))
    p.set_defaults(func=cmd_dor_sweep)

    p = sub.add_parser("rate-sweep", help="achievable data rate vs distance")
    _add_common(p)
    p.add_argument("--distances",
                   default=",".join(_fmt(d) for d in _DEFAULT_RATE_DISTANCES))
    p.set_defaults(func=cmd_rate_sweep)

    p = sub.add_parser("validate", help="check a configuration file")
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
