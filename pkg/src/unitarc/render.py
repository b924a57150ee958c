"""Deterministic SVG drawings of models and of canonical drawings of T.

Coordinates are computed in floating point and printed with a fixed number
of decimals, so the same input always gives the same bytes.  Floats are
used for drawing only, never for any decision.
"""

import math

from .rational import INF

SIZE = 400
RADIUS = 150


def _num(x):
    return f"{x:.3f}"


def _header(width, height):
    return [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">',
            f'<rect width="{width}" height="{height}" fill="white"/>']


def _point(frac, radius):
    a = 2 * math.pi * frac - math.pi / 2
    return SIZE / 2 + radius * math.cos(a), SIZE / 2 + radius * math.sin(a)


def _arc_path(f0, f1, radius):
    span = (f1 - f0) % 1
    x0, y0 = _point(f0, radius)
    x1, y1 = _point(f0 + span, radius)
    large = 1 if span > 0.5 else 0
    return (f'M {_num(x0)} {_num(y0)} A {_num(radius)} {_num(radius)} 0 {large} 1 '
            f'{_num(x1)} {_num(y1)}')


def _circle_svg(arcs, n, ticks=()):
    """``arcs``: (label, begin fraction, end fraction) on the unit circle."""
    out = _header(SIZE, SIZE)
    out.append(f'<circle cx="{SIZE // 2}" cy="{SIZE // 2}" r="{RADIUS}" fill="none" '
               'stroke="#999" stroke-dasharray="2,3"/>')
    for frac, text in ticks:
        x, y = _point(frac, RADIUS - 18)
        out.append(f'<text x="{_num(x)}" y="{_num(y)}" font-size="9" '
                   f'text-anchor="middle">{text}</text>')
    for k, (label, f0, f1) in enumerate(arcs):
        radius = RADIUS + 8 + 10 * (k % max(1, min(n, 8)))
        out.append(f'<path d="{_arc_path(f0, f1, radius)}" fill="none" stroke="black" '
                   f'stroke-width="2"><title>{label}</title></path>')
        x, y = _point(f0, radius + 8)
        out.append(f'<text x="{_num(x)}" y="{_num(y)}" font-size="10">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _line_svg(arcs, lo, hi):
    width = 2 * SIZE
    span = (hi - lo) or 1
    scale = (width - 40) / span
    out = _header(width, 40 + 14 * len(arcs))
    for k, (label, s, t) in enumerate(arcs):
        y = 20 + 14 * k
        x0, x1 = 20 + (s - lo) * scale, 20 + (t - lo) * scale
        out.append(f'<line x1="{_num(x0)}" y1="{y}" x2="{_num(x1)}" y2="{y}" stroke="black" '
                   f'stroke-width="2"><title>{label}</title></line>')
        out.append(f'<text x="{_num(x0)}" y="{y - 2}" font-size="9">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_realized(r):
    """Arcs at their real coordinates: a circle, or a line when c is inf."""
    if r.c is INF:
        lo = min(r.begins) if r.begins else 0
        hi = max(r.begins) + r.l if r.begins else 1
        arcs = [(f"A{i}", float(s), float(s + r.l)) for i, s in enumerate(r.begins, start=1)]
        return _line_svg(arcs, float(lo), float(hi))
    c = r.c
    arcs = [(f"A{i}", float(s / c), float((s + r.l) / c)) for i, s in enumerate(r.begins, start=1)]
    return _circle_svg(arcs, r.n)


def render_model(m):
    """Extremes evenly spaced in their order, labelled s_i / t_i."""
    total = 2 * m.n
    ticks = []
    for p, tok in enumerate(m.order):
        ticks.append((p / total, f"s{tok}" if tok > 0 else f"t{-tok}"))
    arcs = [(f"A{i}", m.pos_s[i] / total, m.pos_t[i] / total) for i in range(1, m.n + 1)]
    return _circle_svg(arcs, m.n, ticks)


def render_canonical(t):
    """The canonical drawing of T: vertex A_i at (column, height)."""
    cols = [float(t.columns[i]) for i in range(1, t.n + 1)]
    hs = [t.graph.heights[i] for i in range(1, t.n + 1)]
    sx, sy = 60, 60
    width = int(40 + sx * (max(cols) if cols else 0) + 40)
    height = int(40 + sy * (max(hs) if hs else 0) + 40)

    def at(i):
        return 40 + sx * float(t.columns[i]), height - 40 - sy * t.graph.heights[i]

    out = _header(width, height)
    out.append('<defs><marker id="tip" markerWidth="8" markerHeight="6" refX="8" refY="3" '
               'orient="auto"><path d="M0,0 L8,3 L0,6 z"/></marker></defs>')
    for e in t.edges:
        (x0, y0), (x1, y1) = at(e.frm), at(e.to)
        out.append(f'<line x1="{_num(x0)}" y1="{_num(y0)}" x2="{_num(x1)}" y2="{_num(y1)}" '
                   f'stroke="black" marker-end="url(#tip)"><title>{e.kind}</title></line>')
    for i in range(1, t.n + 1):
        x, y = at(i)
        out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="4"/>')
        out.append(f'<text x="{_num(x + 5)}" y="{_num(y - 5)}" font-size="10">A{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
