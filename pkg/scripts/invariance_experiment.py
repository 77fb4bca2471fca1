#!/usr/bin/env python3
"""Sweep the similarity-invariance probe over a grid of incidence matrices
and polynomials, printing a failure table (all zeros if the invariant really
is a similarity invariant, which it is)."""

import argparse

from afcurves.af_invariant import invariance_probe, validate_incidence
from afcurves.exact_linalg import parse_matrix, parse_poly

MATRICES = ("5,2;2,1", "2,1;1,1", "3,2;1,1", "2,1;1,0", "7,3;2,1")
POLYNOMIALS = ("-1,1", "1,1", "-1,-1,1", "1,-2,0,1", "-1,0,0,1")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1729)
    args = ap.parse_args()

    width = 24
    header = "matrix".ljust(12) + "".join(p.ljust(width) for p in POLYNOMIALS)
    print(header)
    print("-" * len(header))
    for mtext in MATRICES:
        a = validate_incidence(parse_matrix(mtext))
        cells = []
        for ptext in POLYNOMIALS:
            report = invariance_probe(
                a, parse_poly(ptext), trials=args.trials, seed=args.seed
            )
            cells.append(f"{report.failures}/{report.trials} ({report.group})")
        print(mtext.ljust(12) + "".join(c.ljust(width) for c in cells))


if __name__ == "__main__":
    main()
