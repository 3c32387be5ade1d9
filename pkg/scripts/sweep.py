"""Exhaustive conformance sweep for one cardinality.

    python3 scripts/sweep.py --n 4 --max-order 4 --workers 4
"""
import argparse

from decklab.io import dumps
from decklab.sweep import sweep_theorem


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--max-order", type=int, default=3)
    ap.add_argument("--min-order", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    print(dumps(sweep_theorem(args.n, args.max_order, args.workers, args.min_order)))


if __name__ == "__main__":
    main()
