"""Command-line entry point.

Subcommands map onto the scenario catalog; ``figures <name>`` runs the
named preset, ``list`` prints the catalog.  Parameter precedence is
scenario defaults < config file < explicit command-line flags.  The config
file is flat ``key = value`` text with ``#`` comments.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .scenarios import ScenarioConfig, list_scenarios, run

__all__ = ["main", "parse_config"]

_PARAM_FLAGS = {
    "slits": ["m", "a", "sigma_x", "sigma_xi"],
    "entangled": ["m", "a", "b", "sigma_x", "sigma_xi"],
    "schmidt": ["m", "a", "b", "sigma_x", "sigma_xi"],
    "coherence": ["a", "sigma_x", "phi"],
    "ammonia": ["isotope", "mass"],
    "qubits": ["mass", "g0_max", "n_sweep"],
    "tomography": ["a", "sigma_x", "n_points"],
}

_INT_PARAMS = {"m", "n_sweep", "n_points"}
_STR_PARAMS = {"isotope"}


def parse_config(path: Path) -> dict:
    """Flat key = value file; values become int, float or str."""
    values: dict = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, text = line.partition("=")
        key = key.strip()
        text = text.strip()
        if not key:
            raise ValueError(f"{path}:{lineno}: empty key")
        for caster in (int, float):
            try:
                values[key] = caster(text)
                break
            except ValueError:
                continue
        else:
            values[key] = text
    return values


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", type=Path, default=None, help="flat key = value config file")
    parser.add_argument("--out", type=Path, default=Path("qmodes-out"), help="output directory")
    parser.add_argument("--format", choices=("csv", "json"), default=None, help="data file format")
    parser.add_argument("--grid-points", type=int, default=None, help="grid size (default 1024)")
    parser.add_argument(
        "--seed", type=int, default=None, help="reserved; all computations are deterministic"
    )


def _add_param_flags(parser: argparse.ArgumentParser, names: list[str]):
    for name in names:
        flag = "--" + name.replace("_", "-")
        if name in _STR_PARAMS:
            parser.add_argument(flag, type=str, default=None)
        elif name in _INT_PARAMS:
            parser.add_argument(flag, type=int, default=None)
        else:
            parser.add_argument(flag, type=float, default=None)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmodes",
        description="Interference, Schmidt-mode and tunneling scenario runner",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    list_p = sub.add_parser("list", help="print the scenario catalog")
    list_p.set_defaults(scenario=None)

    figures = sub.add_parser("figures", help="run a named figure-data scenario")
    figures.add_argument("name", help="scenario name, e.g. fig3 (see 'qmodes list')")
    _add_common(figures)

    for command, flags in _PARAM_FLAGS.items():
        p = sub.add_parser(command, help=f"run the {command} scenario")
        _add_common(p)
        _add_param_flags(p, flags)
    return parser


def _collect_params(args: argparse.Namespace, names: list[str]) -> dict:
    out = {}
    for name in names:
        value = getattr(args, name, None)
        if value is not None:
            out[name] = value
    return out


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "list":
        for name, summary in list_scenarios().items():
            print(f"{name:16s} {summary}")
        return 0

    scenario_name = args.name if args.command == "figures" else args.command
    params: dict = {}
    fmt = "csv"
    grid_points = 1024
    try:
        if args.config is not None:
            config_values = parse_config(args.config)
            fmt = config_values.pop("format", fmt)
            grid_points = int(config_values.pop("grid_points", grid_points))
            config_values.pop("seed", None)
            params.update(config_values)
        if args.command != "figures":
            params.update(_collect_params(args, _PARAM_FLAGS[args.command]))
        if args.format is not None:
            fmt = args.format
        if args.grid_points is not None:
            grid_points = args.grid_points

        config = ScenarioConfig(scenario_name, args.out, fmt, grid_points, params)
        report = run(config)
    except (ValueError, OSError, np.linalg.LinAlgError) as exc:
        print(f"qmodes: error: {exc}", file=sys.stderr)
        return 2

    print(f"scenario {report.scenario}: wrote {len(report.files)} file(s) to {args.out}")
    for key, value in report.scalars.items():
        if isinstance(value, float):
            print(f"  {key} = {value:.6g}")
        else:
            print(f"  {key} = {value}")
    print(f"  wall time: {report.wall_time_s:.3f} s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
