"""Character map of the dominant decay region over the coupling plane.

Each cell shows the label of the weight contained in the region (1, 2, 3),
'.' on a boundary and 'o' at the origin.
"""

import argparse

import numpy as np

from qudit_dephasing import classify_region


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=41)
    p.add_argument("--extent", type=float, default=0.5)
    args = p.parse_args()
    ax = np.linspace(-args.extent, args.extent, args.n)
    for z2 in ax[::-1]:
        line = []
        for z1 in ax:
            if abs(z1) < 1e-12 and abs(z2) < 1e-12:
                line.append("o")
                continue
            reg = classify_region((z1, z2))
            line.append("." if reg.boundary else str(reg.weight_label))
        print("".join(line))


if __name__ == "__main__":
    main()
