#!/usr/bin/env python3
"""Recompute the CM table from the bundled corpus and print each column.

For every corpus entry this prints the ring/label, the integral curve model,
its j-invariant, the torsion subgroup by Lutz-Nagell, the incidence matrix
from the continued fraction, and the Bowen-Franks style invariant, plus the
match verdict."""

import sys
from pathlib import Path

from afcurves.corpus import load_corpus, run_corpus
from afcurves.exact_linalg import format_matrix

DEFAULT = Path(__file__).resolve().parent.parent / "data" / "cm_corpus.json"


def main() -> int:
    path = sys.argv[1] if len(sys.argv) > 1 else str(DEFAULT)
    reports = run_corpus(load_corpus(path))
    failures = 0
    for r in reports:
        if r.error is not None:
            print(f"{r.entry.label}: ERROR {r.error}")
            failures += 1
            continue
        print(f"label:     {r.entry.label}")
        print(f"curve:     {r.curve}")
        print(f"j:         {r.j_invariant}")
        print(f"torsion:   {r.computed_torsion}")
        print(f"matrix A:  {format_matrix(r.incidence.m)}")
        for v in r.verdicts:
            print(f"invariant: Ab at {v.polynomial} = {v.group}  [{v.verdict}]")
        if r.expected_match is not None:
            status = "as expected" if r.expected_match else "UNEXPECTED"
            print(f"expected:  {r.entry.expected_torsion}  ({status})")
            failures += 0 if r.expected_match else 1
        print()
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
