"""
Deterministic SVG plots of multiplicative curves, vectors and planes.

Geometry is drawn in bridge (log) coordinates by default, where
multiplicative space is Euclidean; ``raw=True`` draws actual positive
values in the first orthant instead.  Output depends only on the inputs:
coordinates are rounded to fixed precision and no timestamps are written.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .errors import DomainError

__all__ = ["PlotObject", "project", "render_svg", "PROJECTIONS", "PALETTE"]

PROJECTIONS = ("xy", "xz", "yz", "iso")
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
WIDTH, HEIGHT, MARGIN = 640, 520, 60
# raw-axes mode clips exponentials so one wild point cannot flatten the plot
RAW_LOG_CLIP = 6.0


@dataclass
class PlotObject:
    """A labelled set of polylines in bridge coordinates (each an (m, 3) array)."""

    label: str
    lines: list = field(default_factory=list)
    kind: str = "curve"  # curve | vector | plane


def project(points: np.ndarray, projection: str) -> np.ndarray:
    p = np.asarray(points, dtype=float)
    if projection == "xy":
        return p[:, [0, 1]]
    if projection == "xz":
        return p[:, [0, 2]]
    if projection == "yz":
        return p[:, [1, 2]]
    if projection == "iso":
        c, s = math.cos(math.pi / 6), math.sin(math.pi / 6)
        return np.column_stack([(p[:, 0] - p[:, 1]) * c, p[:, 2] + (p[:, 0] + p[:, 1]) * s])
    raise DomainError(f"unknown projection {projection!r}; use one of {', '.join(PROJECTIONS)}")


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".") if v != 0 else "0"


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    span = hi - lo
    step = 10 ** math.floor(math.log10(span / count))
    for mult in (1, 2, 5, 10):
        if span / (step * mult) <= count:
            step *= mult
            break
    start = math.ceil(lo / step) * step
    out = []
    v = start
    while v <= hi + 1e-12:
        out.append(round(v, 10))
        v += step
    return out


def render_svg(objects: Sequence[PlotObject], projection: str = "iso", raw: bool = False,
               title: str = "") -> str:
    if not objects or not any(len(o.lines) for o in objects):
        raise DomainError("nothing to plot")
    axis_names = {"xy": ("x", "y"), "xz": ("x", "z"), "yz": ("y", "z"), "iso": ("u", "v")}[projection]

    def to_plane(line):
        pts = np.asarray(line, dtype=float)
        if raw:
            pts = np.exp(np.clip(pts, -RAW_LOG_CLIP, RAW_LOG_CLIP))
        return project(pts, projection)

    flat = [[to_plane(line) for line in o.lines] for o in objects]
    allpts = np.vstack([p for lines in flat for p in lines])
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    if raw:
        lo = np.minimum(lo, 0.0)
    span = np.maximum(hi - lo, 1e-9)
    lo, hi = lo - 0.05 * span, hi + 0.05 * span
    scale = min((WIDTH - 2 * MARGIN) / (hi[0] - lo[0]), (HEIGHT - 2 * MARGIN) / (hi[1] - lo[1]))

    def sx(x):
        return MARGIN + (x - lo[0]) * scale

    def sy(y):
        return HEIGHT - MARGIN - (y - lo[1]) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH // 2}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>')

    # axes: on log axes the tick at k reads e^k; raw axes carry plain values
    x0, y0 = sx(lo[0]), sy(lo[1])
    out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{sx(hi[0]):.2f}" y2="{y0:.2f}" stroke="#444"/>')
    out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x0:.2f}" y2="{sy(hi[1]):.2f}" stroke="#444"/>')
    for t in _ticks(lo[0], hi[0]):
        label = _fmt(t) if raw else f"e^{_fmt(t)}"
        out.append(f'<line x1="{sx(t):.2f}" y1="{y0:.2f}" x2="{sx(t):.2f}" y2="{y0 + 4:.2f}" stroke="#444"/>')
        out.append(f'<text x="{sx(t):.2f}" y="{y0 + 16:.2f}" text-anchor="middle">{escape(label)}</text>')
    for t in _ticks(lo[1], hi[1]):
        label = _fmt(t) if raw else f"e^{_fmt(t)}"
        out.append(f'<line x1="{x0 - 4:.2f}" y1="{sy(t):.2f}" x2="{x0:.2f}" y2="{sy(t):.2f}" stroke="#444"/>')
        out.append(f'<text x="{x0 - 6:.2f}" y="{sy(t) + 4:.2f}" text-anchor="end">{escape(label)}</text>')
    mode = "values" if raw else "multiplicative (log) axes"
    out.append(f'<text x="{WIDTH - MARGIN}" y="{HEIGHT - 12}" text-anchor="end">'
               f'{axis_names[0]}*, {axis_names[1]}*: {escape(mode)}; projection {projection}</text>')

    for i, (obj, lines) in enumerate(zip(objects, flat)):
        color = PALETTE[i % len(PALETTE)]
        width = "1" if obj.kind == "plane" else "2"
        for pts in lines:
            path = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
            if obj.kind == "vector":
                out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="2"/>')
                hx, hy = pts[-1]
                out.append(f'<circle cx="{sx(hx):.2f}" cy="{sy(hy):.2f}" r="3" fill="{color}"/>')
            else:
                out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="{width}"/>')
        ly = 40 + 16 * i
        out.append(f'<line x1="{WIDTH - 200}" y1="{ly}" x2="{WIDTH - 180}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{WIDTH - 175}" y="{ly + 4}">{escape(obj.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
