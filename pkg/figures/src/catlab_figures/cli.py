"""Batch rendering entry point: render <kind> --in <csv> --out <png|svg>."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import KINDS, FigureSpec, render
from .schemas import SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catlab-render", description=__doc__)
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("--in", dest="csv_path", required=True)
    parser.add_argument("--out", dest="out_path", required=True)
    parser.add_argument("--cdf", dest="cdf_path",
                        help="companion cumulative-distribution CSV (fig4/5/6)")
    parser.add_argument("--boundary", dest="boundary_path",
                        help="reachable-set boundary CSV overlay (fig4)")
    parser.add_argument("--title")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        spec = FigureSpec(kind=args.kind, csv_path=Path(args.csv_path),
                          out_path=Path(args.out_path),
                          cdf_path=Path(args.cdf_path) if args.cdf_path else None,
                          boundary_path=Path(args.boundary_path)
                          if args.boundary_path else None,
                          title=args.title)
        out, checksum = render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{out} sha256:{checksum}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
