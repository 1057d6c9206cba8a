"""alpha(I^(m)) by brute force against the closed-form table, general points."""

import argparse
import sys

from resurgence import closedform as cf
from resurgence.algebra import parse_field
from resurgence.fatpoints import FatPointScheme, make_config
from resurgence.oracle import alpha_bruteforce


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=list(range(1, 10)))
    ap.add_argument("--m-max", type=int, default=4)
    ap.add_argument("--field", default="p:2147483647")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    F = parse_field(args.field)
    bad = 0
    print("n  gamma  " + "  ".join(f"m={m}" for m in range(1, args.m_max + 1)))
    for n in args.n:
        Z = FatPointScheme.uniform(make_config("generic", n, field=F, seed=args.seed, check_m=args.m_max))
        cells = []
        for m in range(1, args.m_max + 1):
            got, want = alpha_bruteforce(Z, m), cf.alpha_symbolic("general", n, m)
            bad += got != want
            cells.append(f"{got}" if got == want else f"{got}!={want}")
        print(f"{n}  {cf.gamma_value('general', n)}  " + "  ".join(cells))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
