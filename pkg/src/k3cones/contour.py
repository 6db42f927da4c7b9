"""Marching-squares contour of the bigness cubic and its SVG rendering.

The zero set is traced in the (x, y) plane (y = eta*x coordinates) on an
exact sign grid: corner values are rationals, crossing points come from
exact linear interpolation, and the two ambiguous saddle cases are resolved
by the exact sign at the cell centre.  Floating point never enters; the SVG
writer renders exact coordinates through a fixed-precision decimal
formatter, so equal configurations produce byte-identical files.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .geometry import GeometryModel
from .lattice import pair
from .poly import Poly2
from .rationals import decimal_fixed

Q = Fraction
XY = ("x", "y")

# reference lines from the figure caption
THRESHOLD_LINE_X = Q(3577, 100000)      # x = 0.03577 (blue)
CRITICAL_SLOPE = Q(-47976, 1000000)     # y = -0.047976 x (green)

DEFAULT_X_RANGE = (Q(-1, 10), Q(1, 2))
DEFAULT_Y_RANGE = (Q(-3, 50), Q(3, 50))
DEFAULT_CELLS = 160


class ContourError(ValueError):
    pass


def xy_cubic(model: GeometryModel) -> Poly2:
    """The cube of E_S + x*D + y*EP as a polynomial in (x, y)."""
    x = Poly2.var(XY, "x")
    y = Poly2.var(XY, "y")
    z = model.y("ES") + model.y("D").scale(x) + model.y("EP").scale(y)
    return pair(model.form("Y"), z, z, z)


def _sgn(v: Fraction) -> int:
    # zero counts as positive so every corner has a definite side
    return 1 if v >= 0 else -1


def _cross(p0, v0, p1, v1):
    t = v0 / (v0 - v1)
    return (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))


Segment = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def marching_squares(poly: Poly2, x_range, y_range, cells: int) -> list[Segment]:
    """Zero-contour segments on a cells x cells grid, row-major order."""
    if cells < 2:
        raise ContourError("need at least 2 cells per axis")
    x0, x1 = Q(x_range[0]), Q(x_range[1])
    y0, y1 = Q(y_range[0]), Q(y_range[1])
    if x0 >= x1 or y0 >= y1:
        raise ContourError("degenerate contour range")

    xs = [x0 + (x1 - x0) * i / cells for i in range(cells + 1)]
    ys = [y0 + (y1 - y0) * j / cells for j in range(cells + 1)]
    # row-wise specialisation keeps the inner loop a univariate Horner
    vals = []
    for y in ys:
        row_poly = poly.substitute(poly.vars[1], y)
        vals.append([row_poly.eval(x) for x in xs])

    segments: list[Segment] = []
    for j in range(cells):
        for i in range(cells):
            corners = [(xs[i], ys[j]), (xs[i + 1], ys[j]),
                       (xs[i + 1], ys[j + 1]), (xs[i], ys[j + 1])]
            values = [vals[j][i], vals[j][i + 1], vals[j + 1][i + 1], vals[j + 1][i]]
            signs = [_sgn(v) for v in values]
            edges = [(0, 1), (1, 2), (2, 3), (3, 0)]
            crossing = [k for k, (a, b) in enumerate(edges) if signs[a] != signs[b]]
            if not crossing:
                continue
            points = {}
            for k in crossing:
                a, b = edges[k]
                points[k] = _cross(corners[a], values[a], corners[b], values[b])
            if len(crossing) == 2:
                k1, k2 = crossing
                segments.append((points[k1], points[k2]))
            else:
                centre = poly.eval({"x": (xs[i] + xs[i + 1]) / 2,
                                    "y": (ys[j] + ys[j + 1]) / 2})
                if _sgn(centre) == signs[0]:
                    pairs = [(0, 1), (2, 3)]
                else:
                    pairs = [(3, 0), (1, 2)]
                for k1, k2 in pairs:
                    segments.append((points[k1], points[k2]))
    return segments


# ---------------------------------------------------------------------------
# SVG emission
# ---------------------------------------------------------------------------

_PLOT_W = Q(480)
_PLOT_H = Q(560)
_MARGIN_L = Q(64)
_MARGIN_T = Q(40)
_MARGIN_B = Q(56)
_MARGIN_R = Q(24)


class _Mapper:
    def __init__(self, x_range, y_range):
        self.x0, self.x1 = Q(x_range[0]), Q(x_range[1])
        self.y0, self.y1 = Q(y_range[0]), Q(y_range[1])

    def px(self, x: Fraction) -> Fraction:
        return _MARGIN_L + (x - self.x0) / (self.x1 - self.x0) * _PLOT_W

    def py(self, y: Fraction) -> Fraction:
        return _MARGIN_T + (self.y1 - y) / (self.y1 - self.y0) * _PLOT_H

    def pt(self, x: Fraction, y: Fraction) -> str:
        return f"{decimal_fixed(self.px(x), 2)},{decimal_fixed(self.py(y), 2)}"


def svg_figure(model: GeometryModel, x_range=DEFAULT_X_RANGE,
               y_range=DEFAULT_Y_RANGE, cells: int = DEFAULT_CELLS) -> str:
    """Deterministic SVG 1.1: zero contour of the cubic in red, the
    threshold line x = 0.03577 in blue, the critical slope line
    y = -0.047976x in green, the origin marked inside its positive
    component."""
    poly = xy_cubic(model)
    segments = marching_squares(poly, x_range, y_range, cells)
    m = _Mapper(x_range, y_range)

    total_w = _MARGIN_L + _PLOT_W + _MARGIN_R
    total_h = _MARGIN_T + _PLOT_H + _MARGIN_B
    out: list[str] = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
               f'width="{total_w}" height="{total_h}" '
               f'viewBox="0 0 {total_w} {total_h}">')
    out.append('<defs><clipPath id="plot"><rect x="%s" y="%s" width="%s" '
               'height="%s"/></clipPath></defs>'
               % (_MARGIN_L, _MARGIN_T, _PLOT_W, _PLOT_H))
    out.append(f'<rect x="0" y="0" width="{total_w}" height="{total_h}" '
               'fill="white"/>')
    out.append(f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{_PLOT_W}" '
               f'height="{_PLOT_H}" fill="none" stroke="#444444" '
               'stroke-width="1"/>')

    # axes through the origin when visible
    axis_parts = []
    if m.x0 < 0 < m.x1:
        axis_parts.append(f"M {m.pt(Q(0), m.y0)} L {m.pt(Q(0), m.y1)}")
    if m.y0 < 0 < m.y1:
        axis_parts.append(f"M {m.pt(m.x0, Q(0))} L {m.pt(m.x1, Q(0))}")
    if axis_parts:
        out.append('<path d="%s" stroke="#bbbbbb" stroke-width="1" '
                   'fill="none"/>' % " ".join(axis_parts))

    # layer: zero contour (red)
    d = " ".join(f"M {m.pt(*a)} L {m.pt(*b)}" for a, b in segments)
    out.append('<g id="contour" clip-path="url(#plot)">')
    out.append(f'<path d="{d}" stroke="#cc0000" stroke-width="1.5" fill="none"/>')
    out.append("</g>")

    # layer: threshold line x = 0.03577 (blue)
    out.append('<g id="threshold" clip-path="url(#plot)">')
    out.append('<path d="M %s L %s" stroke="#0044cc" stroke-width="1.2" '
               'fill="none"/>' % (m.pt(THRESHOLD_LINE_X, m.y0),
                                  m.pt(THRESHOLD_LINE_X, m.y1)))
    out.append("</g>")

    # layer: critical slope line y = -0.047976 x (green)
    out.append('<g id="critical-slope" clip-path="url(#plot)">')
    out.append('<path d="M %s L %s" stroke="#007700" stroke-width="1.2" '
               'fill="none"/>' % (m.pt(m.x0, CRITICAL_SLOPE * m.x0),
                                  m.pt(m.x1, CRITICAL_SLOPE * m.x1)))
    out.append("</g>")

    # origin marker (the cube is positive there)
    if m.x0 <= 0 <= m.x1 and m.y0 <= 0 <= m.y1:
        ox, oy = m.pt(Q(0), Q(0)).split(",")
        out.append(f'<circle cx="{ox}" cy="{oy}" r="3" fill="#000000"/>')

    # legend
    lx = _MARGIN_L + Q(12)
    ly = _MARGIN_T + Q(16)
    legend = [
        ("#cc0000", "zero set of the bigness cubic"),
        ("#0044cc", "x = 0.03577"),
        ("#007700", "y = -0.047976 x"),
    ]
    out.append('<g id="legend" font-family="sans-serif" font-size="12">')
    for k, (colour, label) in enumerate(legend):
        yk = ly + 18 * k
        out.append(f'<line x1="{lx}" y1="{yk}" x2="{lx + 24}" y2="{yk}" '
                   f'stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 30}" y="{yk + 4}" fill="#000000">{label}</text>')
    out.append("</g>")

    # axis labels
    out.append('<g id="axis-labels" font-family="sans-serif" font-size="11" '
               'fill="#000000">')
    for xv in (m.x0, Q(0), m.x1):
        if m.x0 <= xv <= m.x1:
            px = decimal_fixed(m.px(xv), 2)
            out.append(f'<text x="{px}" y="{_MARGIN_T + _PLOT_H + 16}" '
                       f'text-anchor="middle">{decimal_fixed(xv, 2)}</text>')
    for yv in (m.y0, Q(0), m.y1):
        if m.y0 <= yv <= m.y1:
            py = decimal_fixed(m.py(yv), 2)
            out.append(f'<text x="{_MARGIN_L - 8}" y="{py}" '
                       f'text-anchor="end">{decimal_fixed(yv, 2)}</text>')
    out.append(f'<text x="{_MARGIN_L + _PLOT_W / 2}" '
               f'y="{_MARGIN_T + _PLOT_H + 36}" text-anchor="middle">x</text>')
    out.append(f'<text x="20" y="{_MARGIN_T + _PLOT_H / 2}" '
               'text-anchor="middle">y</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
