"""Command-line entry point.

Subcommands: evaluate, sweep, optimize, reproduce-figure, presets, validate.
Exit codes: 0 success, 2 usage error, 3 configuration error, 4 unstable
resonator, 5 optimization failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .config import (
    PRESETS,
    ConfigError,
    get_path,
    get_preset,
    parse_config,
    parse_quantity,
    set_path,
    validate_config,
    SCHEMA,
)
from .figures import FIGURE_IDS, reproduce_figure
from .model import STATUS_UNSTABLE, evaluate_operating_point
from .output import Column, operating_point_report, write_curve_file
from .sweep import Axis, OptimizationError, SweepSpec, find_optimum, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 3
EXIT_UNSTABLE = 4
EXIT_OPTIMIZATION = 5


def _out_dir(args) -> Path:
    d = args.out_dir or os.environ.get("RBSWIPT_OUT_DIR", ".")
    path = Path(d)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _load_config(args):
    cfg = get_preset(args.preset)
    if getattr(args, "config", None):
        text = Path(args.config).read_text()
        cfg = parse_config(text, base=cfg)
    for item in getattr(args, "set", None) or []:
        if "=" not in item:
            raise ConfigError(f"--set expects path=value, got {item!r}")
        path, value = (p.strip() for p in item.split("=", 1))
        section, _, key = path.partition(".")
        if section not in SCHEMA or key not in SCHEMA[section]:
            raise ConfigError(f"unknown parameter path {path!r}")
        kind = SCHEMA[section][key][0]
        set_path(cfg, path, parse_quantity(value, kind))
    if getattr(args, "p_in", None) is not None:
        cfg["link"]["p_in"] = parse_quantity(args.p_in, "power")
    validate_config(cfg)
    return cfg


def _parse_axis(text: str) -> Axis:
    """Axis syntax: path:lo:hi[:count[:spacing]] with lo/hi in SI units."""
    parts = text.split(":")
    if len(parts) < 3:
        raise ConfigError(
            f"axis must be path:lo:hi[:count[:spacing]], got {text!r}")
    path, lo, hi = parts[0], float(parts[1]), float(parts[2])
    count = int(parts[3]) if len(parts) > 3 else 121
    spacing = parts[4] if len(parts) > 4 else "linear"
    return Axis(path, lo, hi, count, spacing)


def _cfg_spec(args, axes: list[Axis]) -> SweepSpec:
    cfg = _load_config(args)
    preset = get_preset(args.preset)
    overrides = []
    for section in cfg:
        for key in cfg[section]:
            path = f"{section}.{key}"
            if key not in preset.get(section, {}) or \
                    cfg[section][key] != preset[section][key]:
                overrides.append((path, cfg[section][key]))
    return SweepSpec(scenario=args.preset, axis1=axes[0],
                     axis2=axes[1] if len(axes) > 1 else None,
                     overrides=tuple(overrides))


def cmd_evaluate(args) -> int:
    cfg = _load_config(args)
    op = evaluate_operating_point(cfg)
    sys.stdout.write(operating_point_report(op))
    return EXIT_UNSTABLE if op.status == STATUS_UNSTABLE else EXIT_OK


def cmd_sweep(args) -> int:
    axes = [_parse_axis(a) for a in args.axis]
    if len(axes) > 2:
        raise ConfigError("at most two axes are supported")
    spec = _cfg_spec(args, axes)
    result = run_sweep(spec, workers=args.workers)
    quantities = args.quantity or ["p_beam"]
    columns = [Column(spec.axis1.path, "", [])]
    if spec.axis2 is not None:
        columns.append(Column(spec.axis2.path, "", []))
    for q in quantities:
        columns.append(Column(q, "", []))
    columns.append(Column("status", "", []))
    n2 = len(result.axis2_values) if result.axis2_values else 1
    for idx, p in enumerate(result.points):
        i, j = divmod(idx, n2)
        col = 0
        columns[col].values.append(result.axis1_values[i]); col += 1
        if result.axis2_values:
            columns[col].values.append(result.axis2_values[j]); col += 1
        for q in quantities:
            columns[col].values.append(getattr(p, q)); col += 1
        columns[col].values.append(p.status)
    out = _out_dir(args) / args.output
    write_curve_file(out, args.preset, result.config, columns)
    print(f"wrote {out} ({len(result.points)} points, "
          f"{sum(1 for p in result.points if p.status == STATUS_UNSTABLE)} unstable)")
    if all(p.status == STATUS_UNSTABLE for p in result.points):
        print("warning: every grid point is unstable", file=sys.stderr)
    return EXIT_OK


def cmd_optimize(args) -> int:
    spec = _cfg_spec(args, [_parse_axis(a) for a in args.axis])
    params, value = find_optimum(spec, args.objective, args.sense)
    for path, v in params.items():
        print(f"{path} = {v!r}")
    print(f"{args.objective} = {value!r}")
    return EXIT_OK


def cmd_reproduce_figure(args) -> int:
    out = _out_dir(args)
    reproduce_figure(args.id, out, points=args.points, workers=args.workers)
    print(f"wrote {out / f'fig{args.id}.csv'} and "
          f"{out / f'fig{args.id}.plot.json'}")
    return EXIT_OK


def cmd_presets(args) -> int:
    for name in sorted(PRESETS):
        print(name)
    return EXIT_OK


def cmd_validate(args) -> int:
    if args.config:
        parse_config(Path(args.config).read_text(), base=get_preset(args.preset))
        print(f"{args.config}: ok")
    else:
        for name in sorted(PRESETS):
            get_preset(name)
            print(f"{name}: ok")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbswipt",
        description="Resonant-beam SWIPT link simulator and design search")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        p.add_argument("--preset", default="paper-2022",
                       help="named preset supplying defaults")
        if config:
            p.add_argument("--config", help="config file overlaying the preset")
            p.add_argument("--set", action="append", metavar="PATH=VALUE",
                           help="override one parameter, e.g. 'gain.l=0.2 um'")
        p.add_argument("--out-dir", help="output directory "
                       "(default: $RBSWIPT_OUT_DIR or .)")

    p = sub.add_parser("evaluate", help="evaluate a single operating point")
    common(p)
    p.add_argument("--p-in", help="input power, e.g. '150W'")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="run a parameter sweep")
    common(p)
    p.add_argument("--axis", action="append", required=True,
                   metavar="PATH:LO:HI[:COUNT[:SPACING]]",
                   help="swept axis (SI units); repeat for a 2-D grid")
    p.add_argument("--quantity", action="append",
                   help="operating-point fields to emit (default p_beam)")
    p.add_argument("--output", default="sweep.csv")
    p.add_argument("--workers", type=int, default=0)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="grid + golden-section design search")
    common(p)
    p.add_argument("--axis", action="append", required=True,
                   metavar="PATH:LO:HI[:COUNT[:SPACING]]")
    p.add_argument("--objective", default="p_beam")
    p.add_argument("--sense", choices=("max", "min"), default="max")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("reproduce-figure",
                       help="emit curve data for a named figure scenario")
    common(p, config=False)
    p.add_argument("id", choices=FIGURE_IDS)
    p.add_argument("--points", type=int, default=121)
    p.add_argument("--workers", type=int, default=0)
    p.set_defaults(func=cmd_reproduce_figure)

    p = sub.add_parser("presets", help="list available presets")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("validate", help="validate presets or a config file")
    common(p)
    p.set_defaults(func=cmd_validate)

    return parser


def run_cli(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OptimizationError as e:
        print(f"optimization failed: {e}", file=sys.stderr)
        return EXIT_OPTIMIZATION


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
