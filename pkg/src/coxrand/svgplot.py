"""Tiny SVG line chart: lines, confidence bands and axes, nothing else."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"]

W, H = 640, 400
LEFT, RIGHT, TOP, BOTTOM = 60, 170, 36, 48


def _num(x: float) -> str:
    return f"{x:.2f}"


def line_chart(series, title="", xlabel="", ylabel="") -> str:
    """``series`` is a list of ``(name, [(x, y, lo, hi), ...])``; y is in [0, 1]."""
    xs = [p[0] for _, pts in series for p in pts]
    if not xs:
        xs = [1.0, 2.0]
    xmin, xmax = min(xs), max(xs)
    logx = xmin > 0 and xmax / xmin >= 8
    tx = (lambda x: math.log(x)) if logx else float
    a, b = tx(xmin), tx(xmax)
    if a == b:
        a, b = a - 1, b + 1
    pw, ph = W - LEFT - RIGHT, H - TOP - BOTTOM

    def px(x):
        return LEFT + (tx(x) - a) / (b - a) * pw

    def py(y):
        return TOP + (1 - y) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
           f'viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">',
           f'<rect width="{W}" height="{H}" fill="white"/>',
           f'<text x="{W / 2:.0f}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>']
    # axes and grid
    for i in range(6):
        y = i / 5
        out.append(f'<line x1="{LEFT}" y1="{_num(py(y))}" x2="{LEFT + pw}" y2="{_num(py(y))}" '
                   f'stroke="#ddd"/>')
        out.append(f'<text x="{LEFT - 6}" y="{_num(py(y) + 4)}" text-anchor="end">{y:.1f}</text>')
    for x in sorted(set(xs)):
        out.append(f'<text x="{_num(px(x))}" y="{TOP + ph + 16}" text-anchor="middle">{x:g}</text>')
    out.append(f'<line x1="{LEFT}" y1="{TOP + ph}" x2="{LEFT + pw}" y2="{TOP + ph}" stroke="black"/>')
    out.append(f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + ph}" stroke="black"/>')
    out.append(f'<text x="{LEFT + pw / 2:.0f}" y="{H - 10}" text-anchor="middle">'
               f'{escape(xlabel)}{" (log scale)" if logx else ""}</text>')
    out.append(f'<text x="14" y="{TOP + ph / 2:.0f}" text-anchor="middle" '
               f'transform="rotate(-90 14 {TOP + ph / 2:.0f})">{escape(ylabel)}</text>')

    for i, (name, pts) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        pts = [p for p in pts if p[1] == p[1]]
        if pts:
            upper = [f"{_num(px(x))},{_num(py(hi))}" for x, _, _, hi in pts]
            lower = [f"{_num(px(x))},{_num(py(lo))}" for x, _, lo, _ in reversed(pts)]
            out.append(f'<polygon points="{" ".join(upper + lower)}" fill="{color}" '
                       f'fill-opacity="0.15" stroke="none"/>')
            line = " ".join(f"{_num(px(x))},{_num(py(y))}" for x, y, _, _ in pts)
            out.append(f'<polyline points="{line}" fill="none" stroke="{color}" stroke-width="2"/>')
            for x, y, _, _ in pts:
                out.append(f'<circle cx="{_num(px(x))}" cy="{_num(py(y))}" r="3" fill="{color}"/>')
        ly = TOP + 14 + 18 * i
        out.append(f'<line x1="{W - RIGHT + 12}" y1="{ly}" x2="{W - RIGHT + 32}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{W - RIGHT + 36}" y="{ly + 4}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
