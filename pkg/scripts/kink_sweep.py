"""Kink position versus initial state at zeta = (0.3, 0.3).

Prints, for each a0, the time of the concurrence kink, the time of the
smallest eigenvalue gap around it, and their separation in grid steps.
"""

import argparse

import numpy as np

from qudit_dephasing import Scenario, run_sweep


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--a0", nargs="+", type=float, default=[0.993, 0.994, 0.995, 0.996, 0.997, 1.0])
    p.add_argument("--steps", type=int, default=4000)
    p.add_argument("--workers", type=int, default=None)
    args = p.parse_args()
    base = Scenario(zetas=((0.3, 0.3),), outputs=("kink",), steps=args.steps)
    tab = run_sweep(base, "a0", args.a0, workers=args.workers)["kink"]
    print(f"{'a0':>7} {'t_peak/pi':>10} {'t_gap/pi':>10} {'gap':>10} {'steps':>6}")
    for row in tab.rows:
        a0, _, tp, tg, gap, _, sep = row
        if tp == "none":
            print(f"{a0:7.3f} {'-':>10} {'-':>10} {'-':>10} {'-':>6}")
        else:
            print(f"{a0:7.3f} {tp / np.pi:10.3f} {tg / np.pi:10.3f} {gap:10.2e} {sep:6d}")


if __name__ == "__main__":
    main()
