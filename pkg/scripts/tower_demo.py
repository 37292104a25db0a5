#!/usr/bin/env python3
"""Build tower covers for a few small solvable groups and print the
certificates.

Usage: python scripts/tower_demo.py [p]
"""

import json
import sys
import time

sys.path.insert(0, "src")

from ctlab.errors import DegenerateStep
from ctlab.forge import cyclic
from ctlab.gagola import gagola_tower
from ctlab.permgroup import group_from_generators
from ctlab.perms import parse_cycles


def main(argv):
    p = int(argv[0]) if argv else 5
    s3 = group_from_generators(
        3, [parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)])
    sources = [("C2", cyclic(2)), ("C3", cyclic(3)), ("C6", cyclic(6)),
               ("S3", s3)]
    for name, g in sources:
        start = time.time()
        try:
            cert = gagola_tower(g, p)
        except DegenerateStep as exc:
            print(f"{name} at p={p}: degenerate ({exc})")
            continue
        data = cert.to_json()
        print(f"{name} at p={p}: |H| = {data['tower_order']}, "
              f"|Z| = {data['center_order']}, "
              f"witness degree {data['witness_degree']}, "
              f"verified = {data['verified']} "
              f"({time.time() - start:.1f}s)")
        print(json.dumps(data["steps"], indent=1))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
