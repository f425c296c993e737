#!/usr/bin/env python3
"""Run the full theorem-check suite and print a per-check summary table.

Usage: python scripts/run_verification.py [seed] [count] [report.json]
"""

import json
import sys

from cevian.verify import run_suite


def main() -> int:
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 42
    count = int(sys.argv[2]) if len(sys.argv) > 2 else 25
    out = sys.argv[3] if len(sys.argv) > 3 else None

    report = run_suite(seed, count)
    print(f"seed={seed} count={count} configs={count}+fixtures elapsed={report.elapsed:.1f}s")
    print(f"{'check':40s} {'pass':>5s} {'fail':>5s} {'skip':>5s}")
    for check_id, tally in sorted(report.tallies().items()):
        print(
            f"{check_id:40s} {tally['pass']:5d} {tally['fail']:5d} {tally['skip']:5d}"
        )
    for failure in report.failures():
        print("FAIL", failure.check_id, failure.config, failure.witness)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=2)
        print(f"wrote {out}")
    return 0 if report.ok() else 1


if __name__ == "__main__":
    sys.exit(main())
