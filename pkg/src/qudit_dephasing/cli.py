"""Command-line front end.

    qudit-dephasing run <preset|config.yaml> [--out-dir DIR] [--steps N] [--t-max T]
    qudit-dephasing sweep <preset|config.yaml> --axis a0 --values 0.994 0.995 ...
    qudit-dephasing verify-weyl <preset|config.yaml> [--root 3 1]
    qudit-dephasing list-presets

Exit codes: 0 success, 2 config error, 3 numerical-contract violation, 4 I/O.
The default output directory comes from ``$QUDIT_DEPHASING_OUT`` (else ``./results``).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from .cartan import build_cartan_basis
from .errors import ConfigError, InvalidRootError, NumericalContractError, StepSizeError
from .scenario import (
    SWEEP_AXES,
    ResultTable,
    list_presets,
    parse_time,
    resolve,
    run_scenario,
    run_sweep,
    verify_weyl,
    write_tables,
)

ENV_OUT = "QUDIT_DEPHASING_OUT"
EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4


def default_out_dir() -> str:
    import os

    return os.environ.get(ENV_OUT, "results")


def _load(args):
    s = resolve(args.scenario)
    changes = {}
    if args.steps is not None:
        changes["steps"] = args.steps
    if args.t_max is not None:
        changes["t_max"] = parse_time(args.t_max, "--t-max")
    return dataclasses.replace(s, **changes) if changes else s


def _sweep_values(args):
    if args.axis == "zeta":
        if args.grid:
            lo, hi, n = float(args.grid[0]), float(args.grid[1]), int(args.grid[2])
            ax = np.linspace(lo, hi, n)
            return [(x, y) for y in ax for x in ax]
        try:
            return [tuple(float(x) for x in v.split(",")) for v in args.values or []]
        except ValueError:
            raise ConfigError("zeta values look like 0.3,0.3", "--values") from None
    try:
        conv = int if args.axis == "weight_index" else float
        return [conv(v) for v in args.values or []]
    except ValueError:
        raise ConfigError(f"bad value for axis {args.axis}", "--values") from None


def cmd_run(args) -> int:
    s = _load(args)
    paths = write_tables(run_scenario(s), args.out_dir, s.name)
    for p in paths:
        print(p)
    return EXIT_OK


def cmd_sweep(args) -> int:
    s = _load(args)
    tables = run_sweep(s, args.axis, _sweep_values(args), workers=args.workers)
    for p in write_tables(tables, args.out_dir, f"{s.name}_sweep-{args.axis}"):
        print(p)
    return EXIT_OK


def cmd_verify_weyl(args) -> int:
    s = _load(args)
    basis = build_cartan_basis(3)
    alpha = basis.root(*args.root)
    rep = verify_weyl(s, alpha)
    rows = [(k, v) for k, v in rep.deviations.items()]
    rows += [("sector_transformed_1", rep.sector_transformed[0]), ("sector_transformed_2", rep.sector_transformed[1])]
    meta = {
        "root": f"alpha_{args.root[0]}{args.root[1]}",
        "transformed_zeta": ";".join(",".join(f"{x:.17g}" for x in z) for z in rep.transformed.zetas),
        "transformed_weight": rep.transformed.weight_index,
    }
    tab = ResultTable("weyl", ("quantity", "value"), rows, "max absolute deviations", meta)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{s.name}_weyl.csv"
    tab.to_csv(path)
    print(path)
    for k, v in rep.deviations.items():
        print(f"{k:20s} {v:.3e}")
    if rep.max_deviation > args.tol:
        print(f"max deviation {rep.max_deviation:.3e} exceeds {args.tol:g}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_list_presets(args) -> int:
    root = resources.files("qudit_dephasing") / "presets"
    for name in list_presets():
        first = (root / f"{name}.yaml").read_text().splitlines()[0]
        print(f"{name:20s} {first.lstrip('# ').strip()}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qudit-dephasing", description="Dephasing of two entangled qudits.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("scenario", help="preset name or path to a YAML config")
        sp.add_argument("--out-dir", default=default_out_dir(), help=f"output directory (default ${ENV_OUT} or ./results)")
        sp.add_argument("--steps", type=int, help="override the number of time steps")
        sp.add_argument("--t-max", help="override the final time, e.g. 12pi or 37.7")

    sp = sub.add_parser("run", help="run a preset or config file")
    common(sp)
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("sweep", help="sweep one parameter")
    common(sp)
    sp.add_argument("--axis", choices=SWEEP_AXES, required=True)
    sp.add_argument("--values", nargs="+", help="axis values; zeta values as 0.3,0.3")
    sp.add_argument("--grid", nargs=3, metavar=("LO", "HI", "N"), help="square zeta grid instead of --values")
    sp.add_argument("--workers", type=int, default=None, help="process-pool size (1 = in-process)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify-weyl", help="compare a scenario with its Weyl reflection")
    common(sp)
    sp.add_argument("--root", nargs=2, type=int, default=[3, 1], metavar=("I", "J"), help="root alpha_IJ (default 3 1)")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.set_defaults(func=cmd_verify_weyl)

    sp = sub.add_parser("list-presets", help="list shipped presets")
    sp.set_defaults(func=cmd_list_presets)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StepSizeError as exc:
        print(f"numerical contract violated: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, InvalidRootError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalContractError, ArithmeticError) as exc:
        print(f"numerical contract violated: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
