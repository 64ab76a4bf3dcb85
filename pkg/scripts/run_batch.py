#!/usr/bin/env python3
"""Batch oneness verification sweep.

Runs batch_verify over one or more ranges and prints a JSON report line
per run, so results can be collected with standard tooling:

    python scripts/run_batch.py --hi 100000000 --workers 8
    python scripts/run_batch.py --hi 1000000 --cutoff full-trace --sieve
"""

import argparse
import sys

from syracuse.verify import BatchConfig, batch_report_to_json, batch_verify


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lo", type=int, default=1)
    parser.add_argument("--hi", type=int, required=True)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument(
        "--cutoff", choices=("drop-below-start", "full-trace"), default="drop-below-start"
    )
    parser.add_argument("--sieve", action="store_true")
    parser.add_argument("--budget", type=int, default=10**6)
    parser.add_argument("--chunk-size", type=int, default=1 << 22)
    args = parser.parse_args()

    report = batch_verify(
        BatchConfig(
            lo=args.lo,
            hi=args.hi,
            workers=args.workers,
            cutoff=args.cutoff,
            sieve=args.sieve,
            budget=args.budget,
            chunk_size=args.chunk_size,
        )
    )
    print(batch_report_to_json(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
