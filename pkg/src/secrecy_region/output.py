"""Deterministic CSV / JSON / SVG serialization.

All numbers are printed with 12 significant digits through repr-stable,
locale-independent formatting, and files are written atomically
(temp file + rename) so interrupted runs never leave partial output.
"""
from __future__ import annotations

import json
import math
import os
import tempfile

import numpy as np

from .regions import RegionBoundary


def fmt(x: float) -> str:
    """12-significant-digit, locale-independent number formatting."""
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return format(float(x), ".12g")


def round12(value):
    """Round floats (recursively) to 12 significant digits for JSON.

    Also coerces numpy scalars to their Python equivalents.
    """
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, str) or value is None:
        return value
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return float(fmt(value)) if math.isfinite(value) else value
    if isinstance(value, dict):
        return {k: round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round12(v) for v in value]
    return value


def atomic_write_text(path: str, text: str) -> None:
    """Write text through a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(data) -> str:
    return json.dumps(round12(data), indent=2) + "\n"


def boundary_csv(
    boundary: RegionBoundary,
    beta_dists: list[float] | None = None,
    beta_hausdorff: float | None = None,
) -> str:
    """Swept rows, then a `# hull` sentinel section with the frontier.

    With a cross-parametrization check, each swept row gains the distance
    of its corner to the dual-sweep hull and a trailing comment carries
    the symmetric Hausdorff deviation.
    """
    lines = []
    header = "param,r1_bits,r2_bits"
    if beta_dists is not None:
        header += ",beta_dist"
    lines.append(header)
    for i, rect in enumerate(boundary.points):
        row = f"{fmt(rect.param)},{fmt(rect.corner.r1)},{fmt(rect.corner.r2)}"
        if beta_dists is not None:
            row += f",{fmt(beta_dists[i])}"
        lines.append(row)
    lines.append("# hull")
    for p in boundary.hull:
        lines.append(f"{fmt(p.r1)},{fmt(p.r2)}")
    if beta_hausdorff is not None:
        lines.append(f"# beta_hausdorff,{fmt(beta_hausdorff)}")
    return "\n".join(lines) + "\n"


def _svg_path(points: list[tuple[float, float]], to_px) -> str:
    cmds = []
    for i, (x, y) in enumerate(points):
        px, py = to_px(x, y)
        cmds.append(f"{'M' if i == 0 else 'L'} {fmt(px)} {fmt(py)}")
    return " ".join(cmds)


def region_svg(
    curves: list[tuple[str, list[tuple[float, float]], str]],
    x_label: str = "user-1 rate (bits/channel use)",
    y_label: str = "user-2 rate (bits/channel use)",
) -> str:
    """Self-contained SVG with inline polylines, no timestamps or assets.

    curves: (name, polyline, style) with style "solid" or "dashdot".
    """
    width, height = 560, 460
    margin = 60
    x_max = max((x for _, pts, _ in curves for x, _ in pts), default=1.0)
    y_max = max((y for _, pts, _ in curves for _, y in pts), default=1.0)
    x_max = max(x_max * 1.05, 1e-9)
    y_max = max(y_max * 1.05, 1e-9)

    def to_px(x: float, y: float) -> tuple[float, float]:
        px = margin + (x / x_max) * (width - 2 * margin)
        py = height - margin - (y / y_max) * (height - 2 * margin)
        return px, py

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    ax_color = "#333333"
    x0, y0 = to_px(0.0, 0.0)
    x1, _ = to_px(x_max, 0.0)
    _, y1 = to_px(0.0, y_max)
    parts.append(
        f'<line x1="{fmt(x0)}" y1="{fmt(y0)}" x2="{fmt(x1)}" y2="{fmt(y0)}" '
        f'stroke="{ax_color}" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{fmt(x0)}" y1="{fmt(y0)}" x2="{fmt(x0)}" y2="{fmt(y1)}" '
        f'stroke="{ax_color}" stroke-width="1"/>'
    )
    # ticks every ~0.25 bits, never more than 12 per axis
    def tick_step(span: float) -> float:
        step = 0.25
        while span / step > 12:
            step *= 2
        return step

    step = tick_step(x_max)
    t = step
    while t <= x_max + 1e-12:
        px, py = to_px(t, 0.0)
        parts.append(
            f'<line x1="{fmt(px)}" y1="{fmt(py)}" x2="{fmt(px)}" y2="{fmt(py + 5)}" '
            f'stroke="{ax_color}" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{fmt(px)}" y="{fmt(py + 18)}" font-size="11" '
            f'text-anchor="middle" fill="{ax_color}">{fmt(round(t, 6))}</text>'
        )
        t += step
    step = tick_step(y_max)
    t = step
    while t <= y_max + 1e-12:
        px, py = to_px(0.0, t)
        parts.append(
            f'<line x1="{fmt(px - 5)}" y1="{fmt(py)}" x2="{fmt(px)}" y2="{fmt(py)}" '
            f'stroke="{ax_color}" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{fmt(px - 8)}" y="{fmt(py + 4)}" font-size="11" '
            f'text-anchor="end" fill="{ax_color}">{fmt(round(t, 6))}</text>'
        )
        t += step
    parts.append(
        f'<text x="{fmt(width / 2)}" y="{fmt(height - 15)}" font-size="13" '
        f'text-anchor="middle" fill="{ax_color}">{x_label}</text>'
    )
    parts.append(
        f'<text x="18" y="{fmt(height / 2)}" font-size="13" text-anchor="middle" '
        f'fill="{ax_color}" transform="rotate(-90 18 {fmt(height / 2)})">{y_label}</text>'
    )
    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    legend_y = margin - 30
    for i, (name, pts, style) in enumerate(curves):
        color = palette[i % len(palette)]
        dash = ' stroke-dasharray="10 4 2 4"' if style == "dashdot" else ""
        if len(pts) == 1:
            px, py = to_px(*pts[0])
            parts.append(f'<circle cx="{fmt(px)}" cy="{fmt(py)}" r="3" fill="{color}"/>')
        else:
            parts.append(
                f'<path d="{_svg_path(pts, to_px)}" fill="none" stroke="{color}" '
                f'stroke-width="1.8"{dash}/>'
            )
        lx = margin + 10
        ly = legend_y + 16 * i
        parts.append(
            f'<line x1="{fmt(lx)}" y1="{fmt(ly)}" x2="{fmt(lx + 30)}" y2="{fmt(ly)}" '
            f'stroke="{color}" stroke-width="1.8"{dash}/>'
        )
        parts.append(
            f'<text x="{fmt(lx + 36)}" y="{fmt(ly + 4)}" font-size="12" '
            f'fill="{ax_color}">{name}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
