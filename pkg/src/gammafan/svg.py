"""SVG drawings of level slices of fans in rank 2."""
from __future__ import annotations

import math
from fractions import Fraction

from .cones import slice
from .errors import DomainError
from .fans import GammaFan, canonical_cone, cone_sort_key
from .polyhedra import HPolyhedron
from .scalar import format_scalar, to_field

SIZE = 400
MARGIN = 20


def _bound(slices) -> Fraction:
    m = Fraction(1)
    for body in slices:
        for v in body.vertices():
            for x in v:
                ax = abs(to_field(x))
                if ax > m:
                    m = ax
    return 2 * m


def _order(points):
    """Counter-clockwise order around the centroid (exact coordinates, float angles)."""
    cx = sum(float(p[0]) for p in points) / len(points)
    cy = sum(float(p[1]) for p in points) / len(points)
    return sorted(points, key=lambda p: (math.atan2(float(p[1]) - cy, float(p[0]) - cx), p))


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def render_slice_svg(fan: GammaFan, level=1) -> str:
    """One shape per nonempty slice clipped to ``[-B, B]^2``, plus axes and vertex labels."""
    if fan.n != 2:
        raise DomainError(f"SVG output needs rank 2, got rank {fan.n}")
    r = to_field(level)
    cones = sorted((canonical_cone(c) for c in fan.cones), key=cone_sort_key)
    bodies = [s.body for s in (slice(c, r) for c in cones) if not s.is_empty]
    B = _bound(bodies)
    half = (SIZE - 2 * MARGIN) / 2
    bf = float(B)

    def px(p):
        return SIZE / 2 + half * float(p[0]) / bf, SIZE / 2 - half * float(p[1]) / bf

    box = [((1, 0), B), ((-1, 0), B), ((0, 1), B), ((0, -1), B)]
    shapes, labels = [], set()
    for body in bodies:
        for v in body.vertices():
            labels.add(tuple(to_field(x) for x in v))
        clipped = HPolyhedron(tuple(body.inequalities) + tuple(box), 2)
        if clipped.is_empty:
            continue
        pts = _order([tuple(to_field(x) for x in v) for v in clipped.vertices()])
        coords = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in map(px, pts))
        if len(pts) >= 3:
            shapes.append(f'<polygon points="{coords}" fill="#9ecae1" fill-opacity="0.6" stroke="#08519c" stroke-width="1.5"/>')
        elif len(pts) == 2:
            shapes.append(f'<polyline points="{coords}" fill="none" stroke="#08519c" stroke-width="2"/>')
        else:
            x, y = px(pts[0])
            shapes.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="#08519c"/>')
    lo, hi = px((-B, -B)), px((B, B))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>level {format_scalar(r)} slice, window [-{format_scalar(B)}, {format_scalar(B)}]^2</title>",
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<line x1="{_fmt(lo[0])}" y1="{_fmt(SIZE / 2)}" x2="{_fmt(hi[0])}" y2="{_fmt(SIZE / 2)}" stroke="#888" stroke-width="1"/>',
        f'<line x1="{_fmt(SIZE / 2)}" y1="{_fmt(lo[1])}" x2="{_fmt(SIZE / 2)}" y2="{_fmt(hi[1])}" stroke="#888" stroke-width="1"/>',
    ]
    out += sorted(shapes)
    for v in sorted(labels):
        x, y = px(v)
        text = "(" + ", ".join(format_scalar(c) for c in v) + ")"
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5" fill="black"/>')
        out.append(f'<text x="{_fmt(x + 4)}" y="{_fmt(y - 4)}" font-family="monospace" font-size="11">{text}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
