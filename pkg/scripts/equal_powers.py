"""Is I^(r) = I^r for r <= r_max?  Explores configurations with resurgence 1.

Reports what the oracle finds; no claim about the general question is made.
"""

import argparse
import sys

from resurgence import closedform as cf
from resurgence.algebra import parse_field
from resurgence.fatpoints import FatPointScheme, make_config
from resurgence.oracle import BudgetExceeded, contains_bruteforce

CONFIGS = [("conic", 2), ("conic", 4), ("conic", 6), ("conic", 8), ("generic", 2), ("generic", 4), ("generic", 6)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r-max", type=int, default=3)
    ap.add_argument("--field", default="p:2147483647")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    F = parse_field(args.field)
    print("kind  n  rho  " + "  ".join(f"r={r}" for r in range(1, args.r_max + 1)))
    for kind, n in CONFIGS:
        cfg = make_config(kind, n, field=F, seed=args.seed, check_m=args.r_max)
        Z = FatPointScheme.uniform(cfg)
        rho = cf.resurgence("conic" if kind == "conic" else "general", n)
        cells = []
        for r in range(1, args.r_max + 1):
            try:
                cells.append("equal" if contains_bruteforce(Z, r, r).result else "differ")
            except BudgetExceeded:
                cells.append("skipped")
        print(f"{kind}  {n}  {rho}  " + "  ".join(cells))
    return 0


if __name__ == "__main__":
    sys.exit(main())
