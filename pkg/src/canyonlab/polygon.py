"""Newton polygons of supports in ``Z>=0 x Q>=0`` and their augmentation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import MalformedTopEdge, NoDots
from .serial import rat_to_str


class Dot(NamedTuple):
    m: int
    q: Fraction

    def __str__(self):
        return f"({self.m},{rat_to_str(self.q)})"


def _dot(p) -> Dot:
    return Dot(int(p[0]), Fraction(p[1]))


@dataclass(frozen=True)
class Edge:
    left: Dot
    right: Dot
    on_edge: tuple = ()

    @property
    def coslope(self) -> Fraction:
        return (self.left.q - self.right.q) / (self.right.m - self.left.m)

    @property
    def length(self) -> int:
        return self.right.m - self.left.m

    def to_json(self) -> dict:
        return {"coslope": rat_to_str(self.coslope), "left": str(self.left),
                "length": self.length, "right": str(self.right)}


def _cross(o: Dot, a: Dot, b: Dot) -> Fraction:
    return (a.m - o.m) * (b.q - o.q) - (a.q - o.q) * (b.m - o.m)


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower boundary of ``Conv(dots + R>=0^2)``: vertices left to right, compact edges."""

    vertices: tuple
    edges: tuple
    dots: tuple = field(default=())

    def coslopes(self):
        return [e.coslope for e in self.edges]

    def convex_set(self) -> tuple:
        return tuple(self.vertices)

    def same_set(self, other: "NewtonPolygon") -> bool:
        return self.vertices == other.vertices

    def edge_with_coslope(self, delta) -> Edge | None:
        for e in self.edges:
            if e.coslope == delta:
                return e
        return None

    def to_json(self) -> dict:
        return {"edges": [e.to_json() for e in self.edges],
                "vertices": [str(v) for v in self.vertices]}

    def __str__(self):
        return "Conv{" + ",".join(str(v) for v in self.vertices) + "}"


def lower_hull(dots) -> NewtonPolygon:
    """Newton polygon of a nonempty set of dots; collinear dots are kept as on-edge."""
    pts = sorted({_dot(p) for p in dots})
    if not pts:
        raise NoDots("cannot build a polygon from no dots")
    qmin = min(p.q for p in pts)
    m_end = min(p.m for p in pts if p.q == qmin)
    best: dict[int, Fraction] = {}
    for p in pts:
        if p.m <= m_end and (p.m not in best or p.q < best[p.m]):
            best[p.m] = p.q
    cand = [Dot(m, best[m]) for m in sorted(best)]
    hull: list[Dot] = []
    for p in cand:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    edges = []
    for a, b in zip(hull, hull[1:]):
        on = tuple(p for p in pts if a.m <= p.m <= b.m and _cross(a, b, p) == 0)
        edges.append(Edge(a, b, on))
    return NewtonPolygon(tuple(hull), tuple(edges), tuple(pts))


def minkowski_sum(a: NewtonPolygon, b: NewtonPolygon) -> NewtonPolygon:
    return lower_hull([Dot(p.m + r.m, p.q + r.q) for p in a.vertices for r in b.vertices])


def y_intercept(support, delta) -> Fraction:
    """``min(q + delta*m)`` over the support."""
    pts = [_dot(p) for p in support]
    if not pts:
        raise NoDots("empty support")
    return min(p.q + delta * p.m for p in pts)


def edges_below(np: NewtonPolygon, bound) -> list:
    return [e for e in np.edges if e.coslope < bound]


def top_edge_data(np: NewtonPolygon, h):
    """``(delta_top, E_top)`` for the edge leaving the vertex ``(0, h)``."""
    if not np.vertices or np.vertices[0] != Dot(0, Fraction(h)):
        raise MalformedTopEdge(f"(0,{rat_to_str(h)}) is not the first vertex of {np}")
    if not np.edges:
        raise MalformedTopEdge("polygon has no compact edge")
    return np.edges[0].coslope, np.edges[0]


@dataclass(frozen=True)
class AugmentedPolygon:
    base: NewtonPolygon
    apex: Dot
    hull: NewtonPolygon

    @property
    def econ(self) -> Edge:
        return self.hull.edges[0]

    @property
    def econ_coslope(self) -> Fraction:
        return self.econ.coslope

    @property
    def econ_length(self) -> int:
        return self.econ.length

    def to_json(self) -> dict:
        out = self.hull.to_json()
        out["apex"] = str(self.apex)
        out["base"] = self.base.to_json()
        out["dots"] = [str(d) for d in self.base.dots]
        return out

    def __str__(self):
        return str(self.hull)


def augment(base: NewtonPolygon, h) -> AugmentedPolygon:
    """``Conv(base + {(0, h-1)})``; its first edge is ``E_con``."""
    apex = Dot(0, Fraction(h) - 1)
    if any(d.m == 0 and d.q <= apex.q for d in base.dots):
        raise MalformedTopEdge("a base dot on X=0 lies at or below (0,h-1)")
    hull = lower_hull(tuple(base.dots) + (apex,))
    return AugmentedPolygon(base, apex, hull)


# -- SVG -----------------------------------------------------------------------

_UNIT = 40
_PAD = 40


def _fmt(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{float(x):.3f}".rstrip("0").rstrip(".")


def render_svg(aug: AugmentedPolygon, title: str | None = None) -> str:
    """Lattice picture: solid hull of the base support, dashed segment to ``(0, h-1)``."""
    dots = list(aug.base.dots) + [aug.apex]
    max_m = max(d.m for d in dots) + 1
    max_q = int(max(d.q for d in dots)) + 1
    width = max_m * _UNIT + 2 * _PAD
    height = max_q * _UNIT + 2 * _PAD

    def px(d):
        return _PAD + d.m * _UNIT, height - _PAD - Fraction(d.q) * _UNIT

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append('<g stroke="#dddddd" stroke-width="1">')
    for m in range(max_m + 1):
        x, _ = px(Dot(m, Fraction(0)))
        out.append(f'<line x1="{_fmt(x)}" y1="{_PAD}" x2="{_fmt(x)}" y2="{height - _PAD}"/>')
    for q in range(max_q + 1):
        _, y = px(Dot(0, Fraction(q)))
        out.append(f'<line x1="{_PAD}" y1="{_fmt(y)}" x2="{width - _PAD}" y2="{_fmt(y)}"/>')
    out.append("</g>")
    out.append('<g stroke="#000000" stroke-width="2">')
    for e in aug.base.edges:
        (x1, y1), (x2, y2) = px(e.left), px(e.right)
        out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
    out.append("</g>")
    # dashed: from the apex to the first base vertex still on the augmented boundary
    target = aug.econ.right
    for v in aug.base.vertices:
        if v in aug.econ.on_edge or v in aug.hull.vertices:
            target = v
            break
    (x1, y1), (x2, y2) = px(aug.apex), px(target)
    out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
               'stroke="#000000" stroke-width="2" stroke-dasharray="6,4"/>')
    for d in aug.base.dots:
        x, y = px(d)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="#000000"/>')
    x, y = px(aug.apex)
    out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="#ffffff" stroke="#000000"/>')
    out.append(f'<text x="{_fmt(x + 8)}" y="{_fmt(y - 8)}" font-family="sans-serif" '
               f'font-size="12">{aug.apex}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def height_at(np: NewtonPolygon, m) -> Fraction:
    """Lowest ``q`` with ``(m, q)`` in the closed region above the polygon."""
    vs = np.vertices
    if m < vs[0].m:
        return math.inf
    if m >= vs[-1].m:
        return vs[-1].q
    for a, b in zip(vs, vs[1:]):
        if a.m <= m <= b.m:
            return a.q + (b.q - a.q) * Fraction(m - a.m, b.m - a.m)
    raise AssertionError("unreachable")
