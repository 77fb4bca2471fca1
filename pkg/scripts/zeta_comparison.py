#!/usr/bin/env python3
"""Tabulate the curve-side and operator-side local zeta data for one
curve/matrix pair across a range of odd primes.

The interesting output is the pair of cardinality sequences per prime: the
naive determinant normalization of the operator side does not reproduce the
curve counts (the first good prime already disagrees), so the script prints
both columns and leaves the verdict to the reader."""

import argparse

from afcurves.af_invariant import validate_incidence
from afcurves.elliptic import parse_curve_spec
from afcurves.exact_linalg import parse_matrix
from afcurves.zeta import BadReduction, UnsupportedCharacteristic, compare_local, is_prime


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--curve", default="lambda=-1")
    ap.add_argument("--matrix", default="5,2;2,1")
    ap.add_argument("--max-prime", type=int, default=30)
    ap.add_argument("--order", type=int, default=3)
    ap.add_argument("--alpha", type=int, choices=(-1, 0, 1), default=None)
    args = ap.parse_args()

    curve, _ = parse_curve_spec(args.curve)
    a = validate_incidence(parse_matrix(args.matrix))
    print(f"curve: {curve}")
    print(f"matrix: {args.matrix}   tr(A)^2 - 4 = {a.m.trace() ** 2 - 4}")
    print()
    for p in range(2, args.max_prime + 1):
        if not is_prime(p):
            continue
        try:
            report = compare_local(curve, a, p, args.order, alpha=args.alpha)
        except (BadReduction, UnsupportedCharacteristic) as exc:
            print(f"p={p:>3}: skipped ({type(exc).__name__}: {exc})")
            continue
        print(
            f"p={p:>3}: a_p={report.a_p:>4}  "
            f"curve {list(report.curve_counts)}  "
            f"operator {list(report.operator_counts)}  "
            f"match {list(report.match_flags)}"
        )


if __name__ == "__main__":
    main()
