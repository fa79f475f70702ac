"""Deterministic SVG rendering of two-dimensional circuit regions.

Rendering is presentation-only: coordinates are scaled to a 64x64 viewport
and truncated to six decimals, everything else in the pipeline stays
exact. Output bytes are a pure function of the circuit and the bounding
box.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from .arrangement import decompose_interior
from .circuit import PolyhedraCircuit, canonicalize_for_volume, contains
from .geometry import box
from .lp import enumerate_vertices


def _truncate6(v: Fraction) -> str:
    neg = v < 0
    n = (-v if neg else v) * 10**6
    n = n.numerator // n.denominator
    s = f"{n // 10**6}.{n % 10**6:06d}"
    return "-" + s if neg else s


def _angle_cmp(u, v):
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    cr = u[0] * v[1] - u[1] * v[0]
    if cr > 0:
        return -1
    if cr < 0:
        return 1
    return 0


def _order_polygon(verts):
    cx = sum((v[0] for v in verts), Fraction(0)) / len(verts)
    cy = sum((v[1] for v in verts), Fraction(0)) / len(verts)
    rel = sorted(((v[0] - cx, v[1] - cy) for v in verts), key=cmp_to_key(_angle_cmp))
    return [(dx + cx, dy + cy) for dx, dy in rel]


def _clip_line(a, b, bounds):
    """Endpoints of the hyperplane a.x = b inside the box, or None."""
    (xlo, xhi), (ylo, yhi) = bounds
    pts = set()
    a1, a2 = a
    for x in (xlo, xhi):
        if a2 != 0:
            y = Fraction(b - a1 * x, a2)
            if ylo <= y <= yhi:
                pts.add((Fraction(x), y))
    for y in (ylo, yhi):
        if a1 != 0:
            x = Fraction(b - a2 * y, a1)
            if xlo <= x <= xhi:
                pts.add((x, Fraction(y)))
    if len(pts) < 2:
        return None
    pts = sorted(pts)
    return pts[0], pts[-1]


def render_svg(c: PolyhedraCircuit, bounds: Sequence[tuple]) -> str:
    """SVG with the arrangement lines and the region's cells filled."""
    if c.dim != 2:
        raise ValueError("render requires dim 2")
    bounds = [(Fraction(lo), Fraction(hi)) for lo, hi in bounds]
    for lo, hi in bounds:
        if lo >= hi:
            raise ValueError("bounding box must have positive extent")
    cc = canonicalize_for_volume(c)
    cells, stats = decompose_interior(cc.leaves())
    box_rows = box(bounds).rows

    (xlo, xhi), (ylo, yhi) = bounds
    sx = Fraction(64) / (xhi - xlo)
    sy = Fraction(64) / (yhi - ylo)

    def to_svg(p):
        return (p[0] - xlo) * sx, 64 - (p[1] - ylo) * sy

    polygons = []
    for cell in cells:
        if not contains(cc, cell.interior_witness):
            continue
        verts = enumerate_vertices(cell.closed_rep.rows + box_rows, 2)
        if len(verts) < 3:
            continue
        poly = _order_polygon(list(verts))
        pts = " ".join(
            f"{_truncate6(x)},{_truncate6(y)}" for x, y in map(to_svg, poly)
        )
        polygons.append(f'  <polygon points="{pts}"/>')

    lines = []
    for a, b in stats.keys:
        seg = _clip_line(a, b, bounds)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = (to_svg(seg[0]), to_svg(seg[1]))
        lines.append(
            f'  <line x1="{_truncate6(x1)}" y1="{_truncate6(y1)}"'
            f' x2="{_truncate6(x2)}" y2="{_truncate6(y2)}"/>'
        )

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 64 64">',
        '<g id="cells" fill="#7aa0c8" fill-opacity="0.6" stroke="none">',
        *polygons,
        "</g>",
        '<g id="lines" stroke="#333333" stroke-width="0.15" fill="none">',
        *lines,
        "</g>",
        "</svg>",
    ]
    return "\n".join(parts) + "\n"
