"""Oracle runs at the boundary (m, r) of the general-point criteria, n = 6..9."""

import argparse
import sys
import time

from resurgence import closedform as cf
from resurgence.algebra import parse_field
from resurgence.fatpoints import FatPointScheme, make_config
from resurgence.oracle import BudgetExceeded, contains_bruteforce

# cells on or next to the line where each criterion switches
CASES = {
    6: [(3, 2), (4, 4), (5, 4), (7, 6)],
    7: [(3, 3), (8, 7), (9, 8)],
    8: [(2, 2), (4, 3), (5, 4)],
    9: [(2, 2), (3, 2), (3, 3), (5, 4)],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", default="p:2147483647")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--budget", type=int, default=None)
    args = ap.parse_args()
    F = parse_field(args.field)
    bad = 0
    print("n  m  r  predicted  oracle  witness_degree  seconds")
    for n, cells in CASES.items():
        for m, r in cells:
            Z = FatPointScheme.uniform(make_config("generic", n, field=F, seed=args.seed, check_m=max(m, r)))
            start = time.perf_counter()
            try:
                rep = contains_bruteforce(Z, m, r, budget=args.budget)
            except BudgetExceeded as exc:
                print(f"{n}  {m}  {r}  skipped: {exc}")
                continue
            pred = cf.contains_general(n, m, r).contains
            bad += pred != rep.result
            deg = rep.witness.degree if rep.witness is not None else "-"
            print(f"{n}  {m}  {r}  {pred}  {rep.result}  {deg}  {time.perf_counter() - start:.2f}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
