"""Dependency-free SVG line charts of cumulative-average curves."""
from __future__ import annotations

import csv
from pathlib import Path
from xml.sax.saxutils import escape

from .errors import InputError

WIDTH, HEIGHT = 640, 400
MARGIN = 60
COLOURS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def read_curve(path, column: str = "cum_avg_iterations") -> list[tuple[float, float]]:
    """(trial, value) pairs from a cumulative CSV."""
    try:
        with open(path, newline="") as f:
            rows = list(csv.DictReader(f))
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    if not rows:
        raise InputError(f"{path}: no data rows")
    if "trial" not in rows[0] or column not in rows[0]:
        raise InputError(f"{path}: needs 'trial' and {column!r} columns")
    try:
        return [(float(r["trial"]), float(r[column])) for r in rows]
    except (TypeError, ValueError) as e:
        raise InputError(f"{path}: malformed row ({e})") from None


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def render_svg(curves: dict[str, list[tuple[float, float]]], baseline: float | None = None,
               ylabel: str = "average iterations") -> str:
    """One polyline per named curve plus an optional horizontal dashed baseline."""
    if not curves:
        raise InputError("nothing to plot")
    xs = [x for pts in curves.values() for x, _ in pts]
    ys = [y for pts in curves.values() for _, y in pts] + ([baseline] if baseline is not None else [])
    x0, x1 = min(xs), max(xs)
    y0, y1 = 0.0, max(ys) if max(ys) > 0 else 1.0
    if x1 == x0:
        x1 = x0 + 1
    y1 *= 1.05

    def px(x):
        return MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2 * MARGIN)

    def py(y):
        return HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2 * MARGIN)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<text x="{WIDTH // 2}" y="{HEIGHT - 15}" text-anchor="middle" font-size="14">trial index</text>',
        f'<text x="15" y="{HEIGHT // 2}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 15 {HEIGHT // 2})">{escape(ylabel)}</text>',
        f'<text x="{MARGIN - 5}" y="{HEIGHT - MARGIN}" text-anchor="end" font-size="10">{_fmt(y0)}</text>',
        f'<text x="{MARGIN - 5}" y="{MARGIN + 10}" text-anchor="end" font-size="10">{_fmt(y1)}</text>',
    ]
    for k, (name, pts) in enumerate(curves.items()):
        colour = COLOURS[k % len(COLOURS)]
        coords = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in pts)
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{coords}"/>')
        out.append(f'<text x="{WIDTH - MARGIN + 5}" y="{MARGIN + 15 * k}" font-size="11" fill="{colour}">{escape(name)}</text>')
    if baseline is not None:
        y = _fmt(py(baseline))
        out.append(f'<line x1="{MARGIN}" y1="{y}" x2="{WIDTH - MARGIN}" y2="{y}" stroke="gray" stroke-dasharray="6,4"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(csv_paths, out_path, column: str = "cum_avg_iterations", baseline: float | None = None) -> str:
    """Render the cumulative CSVs at ``csv_paths`` into one SVG written to ``out_path``."""
    if isinstance(csv_paths, (str, Path)):
        csv_paths = [csv_paths]
    curves = {Path(p).stem: read_curve(p, column) for p in csv_paths}
    svg = render_svg(curves, baseline, ylabel=column.replace("cum_avg_", "average ").replace("_", " "))
    Path(out_path).write_text(svg)
    return svg
