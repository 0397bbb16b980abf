#!/usr/bin/env python3
"""Print the stratum cardinalities of the absolutely free algebra (all
terms) and the free algebra (normal forms) for small generator counts.

Usage: python scripts/stratification_table.py [MAX_M] [MAX_N]
"""

import sys

from maltsev.rewriting import count_M
from maltsev.terms import count_W


def main() -> int:
    max_m = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    max_n = int(sys.argv[2]) if len(sys.argv) > 2 else 4
    print(f"{'m':>3} {'n':>3} {'|W_n| (terms of depth n)':>28} {'|M_n| (classes, depth <= n)':>30}")
    for m in range(1, max_m + 1):
        for n in range(max_n + 1):
            print(f"{m:>3} {n:>3} {count_W(m, n):>28} {count_M(m, n):>30}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
