#!/usr/bin/env python3
"""Render sweep figures from an experiment CSV.

Reads the CSV written by the experiment runner and draws one line per
method: mean of the chosen measure versus the sweep column, with 95%
errorbars under the normal approximation (1.96 * sd / sqrt(k), zero when
a cell has a single replicate).  This layer is display only; it never
recomputes scores, so the same CSV always yields the same image.

Usage:
    python3 plots/render.py --csv results.csv --y score --x n --out fig.png
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

MARKERS = "osD^v<>PX*"


def load_rows(path: str) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def aggregate(
    rows: list[dict[str, str]],
    x_col: str,
    y_col: str,
    methods: list[str] | None,
) -> dict[str, list[tuple[float, float, float]]]:
    """Per method: sorted (x, mean, halfwidth) triples; nan cells dropped."""
    cells: dict[tuple[str, float], list[float]] = {}
    order: list[str] = []
    for row in rows:
        method = row["method"]
        if methods is not None and method not in methods:
            continue
        if method not in order:
            order.append(method)
        y = float(row[y_col])
        if math.isnan(y):
            continue
        cells.setdefault((method, float(row[x_col])), []).append(y)
    series: dict[str, list[tuple[float, float, float]]] = {m: [] for m in order}
    for (method, x), ys in cells.items():
        k = len(ys)
        mean = sum(ys) / k
        if k > 1:
            var = sum((y - mean) ** 2 for y in ys) / (k - 1)
            half = 1.96 * math.sqrt(var / k)
        else:
            half = 0.0
        series[method].append((x, mean, half))
    for points in series.values():
        points.sort()
    return series


def render(series: dict[str, list[tuple[float, float, float]]],
           x_col: str, y_col: str, out: str) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for k, (method, points) in enumerate(series.items()):
        xs = [p[0] for p in points]
        means = [p[1] for p in points]
        halves = [p[2] for p in points]
        ax.errorbar(xs, means, yerr=halves, marker=MARKERS[k % len(MARKERS)],
                    markersize=4, capsize=3, linewidth=1.2, label=method)
    ax.set_xlabel(x_col)
    ax.set_ylabel(y_col)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    # Software metadata carries a library version; strip it so identical
    # inputs give identical bytes across environments
    fig.savefig(out, dpi=150, metadata={"Software": None})
    plt.close(fig)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description="plot experiment CSV measures")
    parser.add_argument("--csv", required=True, help="experiment results file")
    parser.add_argument("--x", default="n", help="sweep column (default n)")
    parser.add_argument("--y", default="score", help="measure column (default score)")
    parser.add_argument("--methods", default=None,
                        help="comma-separated method filter (default: all present)")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)

    rows = load_rows(args.csv)
    if not rows:
        print("render: error: CSV has no data rows", file=sys.stderr)
        return 2
    header = rows[0].keys()
    for col in (args.x, args.y):
        if col not in header:
            print(f"render: error: no column {col!r} in CSV", file=sys.stderr)
            return 2
    methods = args.methods.split(",") if args.methods else None
    series = aggregate(rows, args.x, args.y, methods)
    if not any(series.values()):
        print("render: error: selection is empty", file=sys.stderr)
        return 2
    render(series, args.x, args.y, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
