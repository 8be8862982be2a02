"""Run every figure preset and write its CSV tables.

    python3 scripts/reproduce_figures.py [--out-dir results] [--only fig-geo]
"""

import argparse
import time

from qudit_dephasing.scenario import list_presets, load_preset, run_scenario, write_tables


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--out-dir", default="results")
    p.add_argument("--only", default="fig-", help="preset name prefix")
    args = p.parse_args()
    for name in list_presets():
        if not name.startswith(args.only):
            continue
        t0 = time.perf_counter()
        paths = write_tables(run_scenario(load_preset(name)), args.out_dir, name)
        print(f"{name:18s} {time.perf_counter() - t0:6.2f} s  -> {', '.join(p.name for p in paths)}")


if __name__ == "__main__":
    main()
