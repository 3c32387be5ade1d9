"""Run the acceptance criteria and print one line per criterion.

    python3 scripts/run_acceptance.py --workers 4 --json out.json
"""
import argparse
import sys
import time
from pathlib import Path

from decklab.checks import CRITERIA, DEFAULT_SEED, run_criterion
from decklab.io import dumps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--only", type=int, nargs="*", default=sorted(CRITERIA))
    ap.add_argument("--json", type=Path, help="write the full reports here")
    args = ap.parse_args()
    reports = []
    for k in args.only:
        t0 = time.perf_counter()
        r = run_criterion(k, args.workers, args.seed)
        dt = time.perf_counter() - t0
        reports.append(r)
        print(f"criterion {k:2d} {'PASS' if r['passed'] else 'FAIL'}  {r['name']}  ({dt:.1f}s)", flush=True)
    if args.json:
        args.json.write_text(dumps({"seed": args.seed, "criteria": reports}) + "\n")
    sys.exit(0 if all(r["passed"] for r in reports) else 2)


if __name__ == "__main__":
    main()
