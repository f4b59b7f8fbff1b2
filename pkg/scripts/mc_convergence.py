#!/usr/bin/env python3
"""Monte Carlo convergence sweep for a built-in body against the exact value.

Writes a CSV with columns (samples, estimate, std_error, abs_error, z) so the
1/sqrt(N) decay can be plotted directly.

Usage: python3 scripts/mc_convergence.py --body triangle --n 3 \
           --max-samples 1000000 --out convergence.csv
"""

import argparse
import csv
import sys

from floorconvex import sequences as sq
from floorconvex.bodies import builtin_body
from floorconvex.mc import estimate_Q

EXACT = {"triangle": sq.t_closed, "square": sq.q_closed,
         "parabola": sq.p_closed}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--body", default="triangle", choices=sorted(EXACT))
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--max-samples", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default="-", help="output CSV path ('-' stdout)")
    args = ap.parse_args()

    body = builtin_body(args.body)
    exact = float(EXACT[args.body](args.n))
    sizes = []
    size = 1000
    while size <= args.max_samples:
        sizes.append(size)
        size *= 4

    sink = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    writer = csv.writer(sink)
    writer.writerow(["samples", "estimate", "std_error", "abs_error", "z"])
    for n_samples in sizes:
        r = estimate_Q(body, args.n, n_samples, seed=args.seed,
                       workers=args.workers)
        err = r.estimate - exact
        z = err / r.std_error if r.std_error else float("nan")
        writer.writerow([n_samples, f"{r.estimate:.8f}",
                         f"{r.std_error:.3e}", f"{abs(err):.3e}", f"{z:+.2f}"])
    if sink is not sys.stdout:
        sink.close()
        print(f"wrote {args.out} (exact value {exact:.10g})")


if __name__ == "__main__":
    main()
