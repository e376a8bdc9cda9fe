"""Scan n x n matrices over a catalog semiring for von Neumann regularity."""

import argparse
import sys

from semiflat.regularity import matrix_regularity_scan
from semiflat.semiring import parse_semiring_id


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("semiring", nargs="?", default="chain:4")
    ap.add_argument("-n", type=int, default=2)
    ap.add_argument("--show", type=int, default=10, help="how many non-regular matrices to print")
    args = ap.parse_args(argv)

    S = parse_semiring_id(args.semiring)
    scan = matrix_regularity_scan(S, args.n)
    print(f"M_{scan.n}({scan.semiring}): {scan.examined} matrices, {len(scan.non_regular)} not regular")
    for A in scan.non_regular[:args.show]:
        print("  " + " | ".join(" ".join(S.labels[x] for x in row) for row in A))
    return 0


if __name__ == "__main__":
    sys.exit(main())
