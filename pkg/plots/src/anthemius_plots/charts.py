"""Render benchmark figures from the harness CSV schema.

Two figure kinds: throughput-vs-threads line charts (one line per builder and
engine) and latency box plots built from the precomputed percentile columns
(median line, p25/p75 box, p10/p90 whiskers). Input is only the documented
CSV; this package never imports the benchmark code.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

# The harness CSV schema, fixed.
SCHEMA = [
    "builder",
    "engine",
    "workload",
    "c",
    "mode",
    "seed",
    "blocks",
    "throughput_txps",
    "sched_s",
    "exec_s",
    "p10",
    "p25",
    "p50",
    "p75",
    "p90",
]

KINDS = ("throughput", "latency")


class SchemaError(ValueError):
    """The CSV does not match the documented schema."""


@dataclass(frozen=True)
class ChartSpec:
    """What to draw: input CSV, figure kind, grouping columns, output path."""

    input_csv: str | Path
    kind: str
    output: str | Path
    group_by: tuple[str, ...] = ("builder", "engine")

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; choose one of {KINDS}")
        for column in self.group_by:
            if column not in SCHEMA:
                raise SchemaError(f"group-by column {column!r} is not in the CSV schema")


def load_rows(path: str | Path) -> list[dict]:
    """Read and validate harness CSV rows; raises SchemaError on mismatch."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in SCHEMA:
            if column not in header:
                raise SchemaError(f"missing column {column!r}")
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            try:
                row = {
                    **raw,
                    "c": int(raw["c"]),
                    "throughput_txps": float(raw["throughput_txps"]),
                    **{p: float(raw[p]) for p in ("p10", "p25", "p50", "p75", "p90")},
                }
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"line {lineno}: {exc}") from None
            if not row["p10"] <= row["p25"] <= row["p50"] <= row["p75"] <= row["p90"]:
                raise SchemaError(f"line {lineno}: percentile columns are not ordered")
            rows.append(row)
    return rows


def _group_key(row: dict, columns: tuple[str, ...]) -> tuple:
    return tuple(str(row[c]) for c in columns)


def render(spec: ChartSpec):
    """Draw the figure described by ``spec`` and write it to ``spec.output``.

    Returns the matplotlib figure (mainly so tests can inspect artists).
    An input with no data rows produces an empty-axes figure.
    """
    rows = load_rows(spec.input_csv)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if spec.kind == "throughput":
        _render_throughput(ax, rows, spec.group_by)
    else:
        _render_latency(ax, rows, spec.group_by)
    fig.tight_layout()
    fig.savefig(spec.output)
    return fig


def _render_throughput(ax, rows, group_by):
    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        groups.setdefault(_group_key(row, group_by), []).append(row)
    for key in sorted(groups):
        series = sorted(groups[key], key=lambda r: r["c"])
        ax.plot(
            [r["c"] for r in series],
            [r["throughput_txps"] for r in series],
            marker="o",
            label="/".join(key),
        )
    ax.set_xlabel("worker threads")
    ax.set_ylabel("throughput (tx/s)")
    if groups:
        ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)


def _render_latency(ax, rows, group_by):
    stats = []
    for row in rows:
        label = "/".join(_group_key(row, group_by)) + f" c={row['c']}"
        stats.append(
            {
                "label": label,
                "med": row["p50"],
                "q1": row["p25"],
                "q3": row["p75"],
                "whislo": row["p10"],
                "whishi": row["p90"],
            }
        )
    if stats:
        result = ax.bxp(stats, showfliers=False, patch_artist=True)
        for box in result["boxes"]:
            box.set_facecolor("#9ecae1")
        ax.tick_params(axis="x", rotation=75, labelsize=7)
    ax.set_ylabel("latency (s)")
    ax.grid(True, axis="y", alpha=0.3)
