"""Render one figure from one simulator result table.

Usage::

    plot <kind> <csv> -o <figure.png>

Exit status is 0 on success, 1 when the input cannot be plotted (bad
header, empty table, unreadable or unwritable path), and 2 for usage
errors.  A header mismatch prints the column diff to stderr.
"""

from __future__ import annotations

import argparse
import sys

from .families import FAMILY_BY_KIND
from .tables import SCHEMAS, TableError, load_columns

from matplotlib import pyplot as plt  # after .families selects Agg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render a figure from a simulator result table "
                    "(CSV in, image out).")
    parser.add_argument("kind", choices=sorted(SCHEMAS),
                        help="which result table the CSV holds")
    parser.add_argument("csv", help="path of the CSV file to plot")
    parser.add_argument("-o", "--out", required=True,
                        help="output image path (the extension selects "
                             "the format)")
    parser.add_argument("--dpi", type=int, default=150,
                        help="raster resolution (default: %(default)s)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        table = load_columns(args.kind, args.csv)
    except TableError as exc:
        print(exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"cannot read {args.csv}: {exc.strerror or exc}",
              file=sys.stderr)
        return 1
    fig = FAMILY_BY_KIND[args.kind].render(args.kind, table)
    try:
        fig.savefig(args.out, dpi=args.dpi)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc.strerror or exc}",
              file=sys.stderr)
        return 1
    finally:
        plt.close(fig)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
