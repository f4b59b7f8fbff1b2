#!/usr/bin/env python3
"""Run every verification suite and write a JSON report.

Equivalent to `floorconvex verify --suite all` but kept as a script so the
trial counts for an overnight run live in one place.

Usage: python3 scripts/verify_all.py [--seed 0] [--trials 50] \
           [--samples 500000] [--out report.json]
"""

import argparse
import sys

from floorconvex import harness


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--samples", type=int, default=500_000)
    ap.add_argument("--out", default="report.json")
    args = ap.parse_args()

    reports = harness.run_suites(sorted(harness.SUITES), seed=args.seed,
                                 trials=args.trials, samples=args.samples)
    for rep in reports:
        print(rep.summary())
    with open(args.out, "w") as fh:
        fh.write(harness.reports_to_json(reports))
    print(f"wrote {args.out}")
    return 0 if all(r.passed for r in reports) else 2


if __name__ == "__main__":
    sys.exit(main())
