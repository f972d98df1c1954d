#!/usr/bin/env python3
"""Print the parabolic Catalan numbers for every divider set up to a bound."""

import argparse
import sys

from parakat.rperms import count_cnr
from parakat.verify import subsets_of_interval


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=6)
    args = parser.parse_args()

    for n in range(1, args.max_n + 1):
        total = 0
        print(f"n = {n}")
        for r in subsets_of_interval(n):
            c = count_cnr(n, r)
            total += c
            label = "{" + ",".join(map(str, r)) + "}"
            print(f"  R = {label:<16} {c:>8}")
        print(f"  total over all R: {total}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
