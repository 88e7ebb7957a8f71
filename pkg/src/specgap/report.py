"""Deterministic artifact writers: JSON certificates, CSV tables, SVG plots.

Artifacts must be byte-identical across runs with the same seed, so nothing
here embeds timestamps, hostnames, or dict ordering: JSON is dumped with
sorted keys, floats go through repr (shortest round-trip), and SVG paths are
emitted with fixed precision.
"""

from __future__ import annotations

import json
import os

import numpy as np

__all__ = ["write_json", "write_csv", "write_svg_chart", "format_float"]


def format_float(x) -> str:
    return repr(float(x))


def _sanitize(obj):
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return [_sanitize(v) for v in obj.tolist()]
    if isinstance(obj, float) and not np.isfinite(obj):
        return repr(obj)  # "inf" / "-inf" / "nan" as strings, JSON-safe
    return obj


def write_json(path, payload: dict) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_sanitize(payload), fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_csv(path, header: str, rows) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(row + "\n")


def write_svg_chart(
    path,
    series,
    title: str = "",
    x_label: str = "",
    y_label: str = "",
    width: int = 800,
    height: int = 500,
) -> None:
    """Minimal line chart: ``series`` is a list of (label, xs, ys).

    Pure path/text primitives, no plotting dependency; axis ranges are the
    data hulls with a 5% pad.
    """
    margin = 60
    xs_all = np.concatenate([np.asarray(x, dtype=float) for _, x, _ in series])
    ys_all = np.concatenate([np.asarray(y, dtype=float) for _, _, y in series])
    x_lo, x_hi = float(xs_all.min()), float(xs_all.max())
    y_lo, y_hi = float(ys_all.min()), float(ys_all.max())
    x_pad = 0.05 * (x_hi - x_lo) or 1.0
    y_pad = 0.05 * (y_hi - y_lo) or 1.0
    x_lo, x_hi = x_lo - x_pad, x_hi + x_pad
    y_lo, y_hi = y_lo - y_pad, y_hi + y_pad

    def sx(x):
        return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin)

    def sy(y):
        return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin)

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"]
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
    ]
    if title:
        lines.append(f'<text x="{width // 2}" y="24" text-anchor="middle" font-size="16">{title}</text>')
    if x_label:
        lines.append(
            f'<text x="{width // 2}" y="{height - 16}" text-anchor="middle" font-size="12">{x_label}</text>'
        )
    if y_label:
        lines.append(
            f'<text x="16" y="{height // 2}" text-anchor="middle" font-size="12" '
            f'transform="rotate(-90 16 {height // 2})">{y_label}</text>'
        )
    for tick, value in (("x", x_lo + x_pad), ("x", x_hi - x_pad), ("y", y_lo + y_pad), ("y", y_hi - y_pad)):
        if tick == "x":
            px = sx(value)
            lines.append(f'<line x1="{px:.2f}" y1="{height - margin}" x2="{px:.2f}" y2="{height - margin + 6}" stroke="black"/>')
            lines.append(f'<text x="{px:.2f}" y="{height - margin + 20}" text-anchor="middle" font-size="11">{value:.6g}</text>')
        else:
            py = sy(value)
            lines.append(f'<line x1="{margin - 6}" y1="{py:.2f}" x2="{margin}" y2="{py:.2f}" stroke="black"/>')
            lines.append(f'<text x="{margin - 10}" y="{py:.2f}" text-anchor="end" font-size="11">{value:.6g}</text>')
    for i, (label, xs, ys) in enumerate(series):
        color = colors[i % len(colors)]
        pts = " ".join(f"{sx(float(x)):.2f},{sy(float(y)):.2f}" for x, y in zip(xs, ys))
        lines.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        if label:
            ly = margin + 16 * (i + 1)
            lines.append(f'<line x1="{width - margin - 90}" y1="{ly - 4}" x2="{width - margin - 70}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
            lines.append(f'<text x="{width - margin - 64}" y="{ly}" font-size="11">{label}</text>')
    lines.append("</svg>")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
