"""Hand-written SVG scatter plot of roots in the complex plane.

Output depends only on the inputs: fixed 800x600 canvas, coordinates
printed with three decimals, elements in a fixed order.
"""

from __future__ import annotations

from typing import Iterable, Sequence
from xml.sax.saxutils import escape

WIDTH = 800
HEIGHT = 600
MARGIN_LEFT = 70
MARGIN_RIGHT = 30
MARGIN_TOP = 50
MARGIN_BOTTOM = 60


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def guide_positions(dim: int) -> list[tuple[float, str]]:
    return [
        (-dim, "-D"),
        (-dim / 2, "-D/2"),
        (dim / 2 - 1, "D/2-1"),
        (dim - 1, "D-1"),
        (float(dim), "D"),
    ]


def scatter_svg(points: Sequence[tuple[float, float]], dim: int, title: str = "") -> str:
    """Render ``points`` (re, im) with the symmetry line and the conjecture guides."""
    guides = guide_positions(dim)
    xs = [p[0] for p in points] + [g[0] for g in guides] + [-0.5]
    ys = [p[1] for p in points]
    xmin, xmax = min(xs), max(xs)
    pad = max(1.0, 0.05 * (xmax - xmin))
    xmin, xmax = xmin - pad, xmax + pad
    ymax = max([abs(y) for y in ys] + [1.0]) * 1.1
    ymin = -ymax

    pw = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    ph = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(x: float) -> float:
        return MARGIN_LEFT + (x - xmin) / (xmax - xmin) * pw

    def sy(y: float) -> float:
        return MARGIN_TOP + (ymax - y) / (ymax - ymin) * ph

    out: list[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH // 2}" y="28" text-anchor="middle" font-family="sans-serif" '
                   f'font-size="16">{escape(title)}</text>')
    # frame and axes
    x0, x1 = _f(MARGIN_LEFT), _f(WIDTH - MARGIN_RIGHT)
    y0, y1 = _f(MARGIN_TOP), _f(HEIGHT - MARGIN_BOTTOM)
    out.append(f'<rect x="{x0}" y="{y0}" width="{_f(pw)}" height="{_f(ph)}" fill="none" stroke="black"/>')
    out.append(f'<line class="axis" x1="{x0}" y1="{_f(sy(0))}" x2="{x1}" y2="{_f(sy(0))}" '
               f'stroke="gray" stroke-width="0.5"/>')
    if xmin <= 0 <= xmax:
        out.append(f'<line class="axis" x1="{_f(sx(0))}" y1="{y0}" x2="{_f(sx(0))}" y2="{y1}" '
                   f'stroke="gray" stroke-width="0.5"/>')
    out.append(f'<text x="{WIDTH // 2}" y="{HEIGHT - 15}" text-anchor="middle" font-family="sans-serif" '
               f'font-size="14">Re</text>')
    out.append(f'<text x="20" y="{HEIGHT // 2}" text-anchor="middle" font-family="sans-serif" '
               f'font-size="14" transform="rotate(-90 20 {HEIGHT // 2})">Im</text>')
    out.append(f'<text x="{MARGIN_LEFT - 6}" y="{_f(sy(ymax) + 4)}" text-anchor="end" '
               f'font-family="sans-serif" font-size="10">{_f(ymax)}</text>')
    out.append(f'<text x="{MARGIN_LEFT - 6}" y="{_f(sy(ymin) + 4)}" text-anchor="end" '
               f'font-family="sans-serif" font-size="10">{_f(ymin)}</text>')

    # symmetry line
    out.append(f'<line class="symmetry" data-re="-0.5" x1="{_f(sx(-0.5))}" y1="{y0}" '
               f'x2="{_f(sx(-0.5))}" y2="{y1}" stroke="steelblue" stroke-width="1"/>')
    for value, label in guides:
        gx = _f(sx(value))
        out.append(f'<line class="guide" data-re="{_f(value)}" x1="{gx}" y1="{y0}" x2="{gx}" y2="{y1}" '
                   f'stroke="firebrick" stroke-width="1" stroke-dasharray="6,4"/>')
        out.append(f'<text x="{gx}" y="{_f(HEIGHT - MARGIN_BOTTOM + 16)}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="10">{escape(label)}={_f(value)}</text>')

    for re, im in points:
        out.append(f'<circle class="root" data-re="{re:.10g}" data-im="{im:.10g}" '
                   f'cx="{_f(sx(re))}" cy="{_f(sy(im))}" r="3" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def points_from_roots(roots: Iterable) -> list[tuple[float, float]]:
    return [(float(r.re), float(r.im)) for r in roots]
