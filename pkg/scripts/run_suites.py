#!/usr/bin/env python3
"""Run every verification suite at full desk scale and print a summary table.

Exits 0 when everything passes, 2 otherwise.
"""

import argparse
import sys

from parakat.verify import (
    search_accidental,
    suite_bijections,
    suite_coincidence,
    suite_convexity,
    suite_counts,
    suite_lifts,
    suite_polynomials,
    suite_tables,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=6, help="range for the tuple-level suites")
    parser.add_argument("--shape-max-n", type=int, default=4, help="range for the tableau-level suites")
    parser.add_argument("--max-col", type=int, default=3)
    parser.add_argument("--all-shapes", action="store_true")
    args = parser.parse_args()

    reports = [
        suite_tables(),
        suite_bijections(args.max_n),
        suite_counts(args.max_n, poly_max_n=args.shape_max_n),
        suite_convexity(args.shape_max_n, args.max_col, args.all_shapes),
        suite_coincidence(args.shape_max_n, args.max_col, args.all_shapes),
        suite_polynomials(args.shape_max_n, args.max_col, args.all_shapes),
        suite_lifts(min(args.max_n, 5)),
        search_accidental(args.shape_max_n, args.max_col, all_shapes=args.all_shapes),
    ]
    width = max(len(r.suite) for r in reports)
    for r in reports:
        print(f"{r.suite:<{width}}  {r.verdict:<4}  {r.instances:>7} instances  {r.wall_time:7.2f}s")
        for c in r.counterexamples[:3]:
            print(f"  counterexample: {c}")
    return 0 if all(r.passed for r in reports) else 2


if __name__ == "__main__":
    sys.exit(main())
