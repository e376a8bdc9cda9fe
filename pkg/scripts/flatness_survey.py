"""Classify every small right module over a catalog semiring by m/i/e-flatness."""

import argparse
import sys

from semiflat.flatness import FLAVOURS, TensorCache, flatness_survey
from semiflat.semiring import parse_semiring_id


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("semiring", help="catalog id, e.g. chain:3 or zmod:4")
    ap.add_argument("--bound", type=int, default=3, help="largest module size surveyed")
    ap.add_argument("--cap", type=int, default=24, help="tensor size cap")
    args = ap.parse_args(argv)

    S = parse_semiring_id(args.semiring)
    r = flatness_survey(S, args.bound, TensorCache(cap=args.cap))
    print(f"{r.semiring}: {len(r.entries)} right modules of size <= {r.size_bound}")
    for e in r.entries:
        flags = " ".join(f"{k}={e.member(k)}" for k in FLAVOURS)
        print(f"  {e.module.name:<24} {flags}")
    for key, names in r.strictness.items():
        if names:
            print(f"strictness {key}: {', '.join(names)}")
    print(f"inconclusive pairs: {r.inconclusive}")
    for v in r.violations:
        print(f"VIOLATION {v}")
    return 2 if r.violations else 0


if __name__ == "__main__":
    sys.exit(main())
