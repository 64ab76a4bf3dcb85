#!/usr/bin/env python3
"""Cycle-equation grid scan.

Evaluates both cycle equations over the parameter grid, writes every
nonnegative-integer hit as CSV (with its reconstruction verdict), and
summarizes the genuine hits on stderr.

    python scripts/scan_equations.py --i-max 5 --alpha-max 16 --m-max 16 > hits.csv
"""

import argparse
import sys

from syracuse.cycles import scan_cycle_equations, scan_to_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--i-max", type=int, default=5)
    parser.add_argument("--alpha-max", type=int, default=16)
    parser.add_argument("--m-max", type=int, default=16)
    args = parser.parse_args()

    result = scan_cycle_equations(args.i_max, args.alpha_max, args.m_max)
    sys.stdout.write(scan_to_csv(result))
    genuine = result.genuine
    print(
        f"{len(result.hits)} integer hits, {len(genuine)} genuine "
        f"(values: {sorted({h.value for h in genuine})})",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
