"""plotview command line: render one figure per invocation.

    plotview spectrum   --csv a.csv [--csv b.csv ...] [--overlay cond.csv] --out fig.png
    plotview heatmap    --csv grid.csv [--no-overlay] --out fig.png
    plotview cutoff-map --csv map.csv --out fig.png
"""

from __future__ import annotations

import argparse
import sys

from .figures import FigureSpec, render
from .reader import PlotDataError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotview", description="Render figures from wgscatter CSV outputs."
    )
    sub = parser.add_subparsers(dest="kind", required=True)
    for name, multi in (("spectrum", True), ("heatmap", False), ("cutoff-map", False)):
        cmd = sub.add_parser(name)
        cmd.add_argument(
            "--csv",
            action="append",
            required=True,
            help="input CSV" + (" (repeatable)" if multi else ""),
        )
        cmd.add_argument("--out", required=True, help="output image path (PNG)")
        cmd.add_argument("--overlay", default=None, help="conditions CSV for root markers")
        cmd.add_argument(
            "--no-overlay", action="store_true", help="suppress loci/marker overlays"
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        kind=args.kind.replace("-", "_"),
        csv_paths=tuple(args.csv),
        out_path=args.out,
        overlay_path=args.overlay,
        show_overlays=not args.no_overlay,
    )
    try:
        render(spec)
    except (PlotDataError, OSError) as exc:
        print(f"plotview error: {exc}", file=sys.stderr)
        return 1
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
