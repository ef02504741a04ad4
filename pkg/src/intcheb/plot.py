"""Self-contained, byte-deterministic SVG line plots."""

from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 480, 320
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60, 20, 30, 40


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    step = 10 ** math.floor(math.log10((hi - lo) / count))
    for m in (1, 2, 5, 10):
        if (hi - lo) / (step * m) <= count:
            step *= m
            break
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-12 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def render_svg(series: Sequence[tuple], title: str = "", ylabel: str = "") -> str:
    """SVG text for a single line/scatter panel of ``(n, value)`` pairs."""
    pts = [(float(n), float(v)) for n, v in series]
    if not pts:
        raise ValueError("cannot plot an empty series")
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    if y1 == y0:
        pad = abs(y0) * 0.1 or 1.0
        y0, y1 = y0 - pad, y1 + pad
    else:
        pad = (y1 - y0) * 0.05
        y0, y1 = y0 - pad, y1 + pad
    pw, ph = WIDTH - MARGIN_L - MARGIN_R, HEIGHT - MARGIN_T - MARGIN_B

    def X(x):
        return MARGIN_L + (x - x0) / (x1 - x0) * pw

    def Y(y):
        return MARGIN_T + (1 - (y - y0) / (y1 - y0)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="18" text-anchor="middle" font-family="sans-serif" font-size="13">{escape(title)}</text>',
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T + ph}" x2="{MARGIN_L + pw}" y2="{MARGIN_T + ph}" stroke="black"/>',
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" y2="{MARGIN_T + ph}" stroke="black"/>',
    ]
    for t in _nice_ticks(y0, y1):
        out.append(
            f'<text x="{MARGIN_L - 6}" y="{_fmt(Y(t) + 4)}" text-anchor="end" font-family="sans-serif" font-size="10">{t:g}</text>'
        )
        out.append(f'<line x1="{MARGIN_L - 3}" y1="{_fmt(Y(t))}" x2="{MARGIN_L}" y2="{_fmt(Y(t))}" stroke="black"/>')
    for t in sorted(set(xs)) if len(set(xs)) <= 12 else _nice_ticks(x0, x1):
        out.append(
            f'<text x="{_fmt(X(t))}" y="{MARGIN_T + ph + 16}" text-anchor="middle" font-family="sans-serif" font-size="10">{t:g}</text>'
        )
    out.append(
        f'<text x="{MARGIN_L + pw // 2}" y="{HEIGHT - 6}" text-anchor="middle" font-family="sans-serif" font-size="11">n</text>'
    )
    if ylabel:
        out.append(
            f'<text x="14" y="{MARGIN_T + ph // 2}" text-anchor="middle" font-family="sans-serif" font-size="11" '
            f'transform="rotate(-90 14 {MARGIN_T + ph // 2})">{escape(ylabel)}</text>'
        )
    path = " ".join(f"{_fmt(X(x))},{_fmt(Y(y))}" for x, y in pts)
    out.append(f'<polyline points="{path}" fill="none" stroke="#1f5fa8" stroke-width="1.5"/>')
    for x, y in pts:
        out.append(f'<circle cx="{_fmt(X(x))}" cy="{_fmt(Y(y))}" r="3" fill="#1f5fa8"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(series: Sequence[tuple], path, title: str = "", ylabel: str = "") -> None:
    """Write the SVG for ``series`` to ``path`` (identical bytes for identical input)."""
    text = render_svg(series, title, ylabel)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
