#!/usr/bin/env python3
"""Run every reproduction check and print a one-line summary per id.

Usage: python scripts/reproduce_all.py [id ...]
Exit code 0 when everything passes or is skipped.
"""

import sys
import time

sys.path.insert(0, "src")

from ctlab.reproduce import CHECKS, run_check


def main(argv):
    ids = argv or sorted(CHECKS)
    failures = 0
    for name in ids:
        start = time.time()
        out = run_check(name)
        status = out["status"]
        note = ""
        if status == "skipped":
            note = " (" + out.get("reason", "")[:60] + ")"
        elif status != "pass":
            failures += 1
            note = " <-- FAIL"
        print(f"{name:24s} {status:8s} {time.time() - start:7.1f}s{note}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
