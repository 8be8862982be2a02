"""Per-period geometric-phase increments for a maximally entangled start.

One row per coupling, one column per period of the free evolution; the
isolated system steps by 2 pi/3, decohered runs drift to pi (pattern a)
or to 0 (pattern b).
"""

import argparse

import numpy as np

from qudit_dephasing import DiagonalState, OperationSpec, build_cartan_basis, closed_trajectory, track_spectrum
from qudit_dephasing.geometry import geometric_phase_series, jump_heights


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--weight", type=int, default=1)
    p.add_argument("--periods", type=int, default=6)
    args = p.parse_args()
    b = build_cartan_basis(3)
    s = DiagonalState.mes(3)
    t = np.linspace(0, 2 * np.pi * args.periods, 667 * args.periods + 1)
    for z in [(0.0, 0.0), (0.15, 0.15), (0.2, 0.2), (0.3, 0.3)]:
        tk = track_spectrum(closed_trajectory(s, z, t), s)
        j = jump_heights(geometric_phase_series(tk, OperationSpec(args.weight), b))
        print(f"zeta={z!s:12s} " + " ".join(f"{x:7.4f}" for x in j))


if __name__ == "__main__":
    main()
