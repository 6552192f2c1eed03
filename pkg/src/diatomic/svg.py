"""Minimal line-plot SVG writer (fixed 800x500 viewport, linear axes)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 800, 500
LEFT, RIGHT, TOP, BOTTOM = 70, 150, 40, 60

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
)


@dataclass
class Curve:
    label: str
    xs: list
    ys: list
    color: str
    dashed: bool = False


def nice_ticks(lo, hi, count=5):
    """Round tick positions covering ``[lo, hi]``."""
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = next(s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt(v):
    return f"{v:.2f}"


def _tick_label(v):
    return f"{v:g}"


def render(curves, title="", xlabel="z", ylabel="|u_n|^2", legend_note="", y_max=None):
    """Return the SVG document for ``curves`` as a string.

    With ``y_max`` set the vertical range is fixed and curves are clipped to
    the plot area.
    """
    xs = [x for c in curves for x in c.xs]
    ys = [y for c in curves for y in c.ys]
    x_lo, x_hi = (min(xs), max(xs)) if xs else (0.0, 1.0)
    y_lo, y_hi = (min(0.0, min(ys)), max(ys)) if ys else (0.0, 1.0)
    if x_hi <= x_lo:
        x_hi = x_lo + 1.0
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0
    y_hi *= 1.05 if y_hi > 0 else 1.0
    if y_max is not None:
        y_hi = float(y_max)

    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM

    def px(x):
        return LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="black"/>',
        f'<clipPath id="plot-area"><rect x="{LEFT}" y="{TOP}" width="{plot_w}" '
        f'height="{plot_h}"/></clipPath>',
    ]
    for t in nice_ticks(x_lo, x_hi):
        x = px(t)
        out.append(f'<line x1="{_fmt(x)}" y1="{TOP + plot_h}" x2="{_fmt(x)}" '
                   f'y2="{TOP + plot_h + 5}" stroke="black"/>')
        out.append(f'<text x="{_fmt(x)}" y="{TOP + plot_h + 18}" '
                   f'text-anchor="middle">{_tick_label(t)}</text>')
    for t in nice_ticks(y_lo, y_hi):
        y = py(t)
        out.append(f'<line x1="{LEFT - 5}" y1="{_fmt(y)}" x2="{LEFT}" y2="{_fmt(y)}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{_fmt(y + 4)}" text-anchor="end">{_tick_label(t)}</text>')
    out.append(f'<text x="{LEFT + plot_w / 2}" y="{HEIGHT - 15}" '
               f'text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="18" y="{TOP + plot_h / 2}" text-anchor="middle" '
               f'transform="rotate(-90 18 {TOP + plot_h / 2})">{escape(ylabel)}</text>')
    if title:
        out.append(f'<text x="{LEFT + plot_w / 2}" y="{TOP - 15}" text-anchor="middle" '
                   f'font-size="14">{escape(title)}</text>')

    for c in curves:
        dash = ' stroke-dasharray="6,4"' if c.dashed else ""
        if len(c.xs) == 1:
            out.append(f'<circle cx="{_fmt(px(c.xs[0]))}" cy="{_fmt(py(c.ys[0]))}" r="3" '
                       f'fill="{c.color}"/>')
            continue
        pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(c.xs, c.ys))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{c.color}" '
                   f'stroke-width="1.2"{dash} clip-path="url(#plot-area)"/>')

    seen = []
    for c in curves:
        if c.label not in [s[0] for s in seen]:
            seen.append((c.label, c.color))
    ly = TOP + 10
    lx = LEFT + plot_w + 15
    for label, color in seen:
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" '
                   'stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{ly + 4}">{escape(label)}</text>')
        ly += 18
    if legend_note:
        for line in legend_note.split("\n"):
            ly += 6
            out.append(f'<text x="{lx}" y="{ly + 4}" font-size="10">{escape(line)}</text>')
            ly += 12
    out.append("</svg>")
    return "\n".join(out) + "\n"
