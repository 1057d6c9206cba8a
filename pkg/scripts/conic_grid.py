"""Predictor vs oracle on conic configurations; writes one CSV row per cell."""

import argparse
import csv
import sys

from resurgence.algebra import parse_field
from resurgence.oracle import crossvalidate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[5, 6, 7, 8, 9])
    ap.add_argument("--m-max", type=int, default=4)
    ap.add_argument("--r-max", type=int, default=4)
    ap.add_argument("--field", default="p:2147483647")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    F = parse_field(args.field)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "m", "r", "predicted", "oracle", "agree", "method", "seconds"])
    disagreements = 0
    for n in args.n:
        for row in crossvalidate("conic", n, args.m_max, args.r_max, field=F, jobs=args.jobs):
            disagreements += not row["agree"]
            w.writerow([n, row["m"], row["r"], row["predicted"], row["oracle"], row["agree"], row["method"], row["seconds"]])
    print(f"# disagreements: {disagreements}", file=sys.stderr)
    return 1 if disagreements else 0


if __name__ == "__main__":
    sys.exit(main())
