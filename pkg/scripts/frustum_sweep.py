#!/usr/bin/env python3
"""Sweep the two-point success probability over the frustum height family.

For each height h in (0, 2) the two-point value has the closed form
1 - (2 / d) * floor_volume * mean_height, evaluated here in both dimensions
and written as plot-ready columns (h, q2_2d, q2_3d).  The 2D values span
(1/3, 1/2) and the 3D values span (1/2, 2/3), approaching the prism limits
as h -> 0 and the cone limits as h -> 2.

Usage: python3 scripts/frustum_sweep.py [--steps 50] [--out sweep.dat]
"""

import argparse
import sys

from floorconvex.bodies import floor_volume, frustum, mean_height


def q2_exact(body) -> float:
    return 1.0 - (2.0 / body.dimension) * floor_volume(body) \
        * mean_height(body)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=50)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    sink = sys.stdout if args.out == "-" else open(args.out, "w")
    print("# h  q2_2d  q2_3d", file=sink)
    for i in range(1, args.steps):
        h = 2.0 * i / args.steps
        v2 = q2_exact(frustum(h, 2))
        v3 = q2_exact(frustum(h, 3))
        print(f"{h:.4f}  {v2:.8f}  {v3:.8f}", file=sink)
    if sink is not sys.stdout:
        sink.close()
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
