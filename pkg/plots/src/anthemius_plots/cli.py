"""CLI: render one figure from a harness CSV.

    plots --in results.csv --kind throughput --out fig.png
"""

from __future__ import annotations

import argparse
import sys

import matplotlib.pyplot as plt

from .charts import KINDS, ChartSpec, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plots", description="Benchmark CSV to figure")
    parser.add_argument("--in", dest="input_csv", required=True, metavar="CSV")
    parser.add_argument("--kind", choices=KINDS, required=True)
    parser.add_argument("--out", dest="output", required=True, metavar="IMAGE")
    parser.add_argument(
        "--group-by",
        default="builder,engine",
        help="comma-separated grouping columns (default: builder,engine)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec_kwargs = dict(
        input_csv=args.input_csv,
        kind=args.kind,
        output=args.output,
        group_by=tuple(col.strip() for col in args.group_by.split(",") if col.strip()),
    )
    try:
        fig = render(ChartSpec(**spec_kwargs))
        plt.close(fig)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
