"""Run the reproduction rows and print a report; exit code follows the CLI convention."""

import argparse
import sys

from semiflat.reports import render
from semiflat.reproduce import ROWS, reproduce_paper


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("rows", nargs="*", help=f"subset of rows (default: all): {', '.join(ROWS)}")
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    ap.add_argument("--timing", action="store_true")
    args = ap.parse_args(argv)

    unknown = [r for r in args.rows if r not in ROWS]
    if unknown:
        print(f"error: unknown rows {unknown}", file=sys.stderr)
        return 4
    report = reproduce_paper(args.rows or None)
    print(render(report, args.format, timing=args.timing))
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
