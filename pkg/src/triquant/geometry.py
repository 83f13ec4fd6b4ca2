"""Planar primitives: points, convex polygons, half-planes and clipping.

Polygons are stored as tuples of ``(x, y)`` float pairs in counter-clockwise
order.  Everything here is plain Python on purpose: the polygons involved are
tiny (Voronoi cells rarely exceed eight vertices) and numpy call overhead
would dominate.
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence

EPS_GEOM = 1e-12
EPS_AREA = 1e-14
EPS_SNAP = 1e-14


class GeometryError(ValueError):
    """Raised for invalid or degenerate geometric input."""


class DegenerateRegionError(GeometryError):
    """Raised when an operation needs positive area and gets none."""


class Point(NamedTuple):
    x: float
    y: float


def as_point(p) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise GeometryError(f"non-finite point {p!r}")
    return Point(x, y)


def dist_sq(p, q) -> float:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def _signed_area(verts: Sequence[tuple[float, float]]) -> float:
    n = len(verts)
    if n < 3:
        return 0.0
    x0, y0 = verts[0]
    s = 0.0
    # fan from vertex 0 keeps magnitudes small
    for i in range(1, n - 1):
        x1, y1 = verts[i]
        x2, y2 = verts[i + 1]
        s += (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
    return 0.5 * s


def _dedupe(verts: list[tuple[float, float]]) -> list[tuple[float, float]]:
    out: list[tuple[float, float]] = []
    tol2 = EPS_GEOM * EPS_GEOM
    for v in verts:
        if not out or dist_sq(out[-1], v) > tol2:
            out.append(v)
    while len(out) > 1 and dist_sq(out[0], out[-1]) <= tol2:
        out.pop()
    return out


class ConvexPolygon:
    """An immutable convex polygon with CCW vertex order.

    ``ConvexPolygon(())`` (or :data:`EMPTY`) is the empty region, used for
    fully clipped results.  Clockwise input is reversed silently.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable = (), *, check: bool = True):
        verts = [(float(v[0]), float(v[1])) for v in vertices]
        if check:
            for x, y in verts:
                if not (math.isfinite(x) and math.isfinite(y)):
                    raise GeometryError("polygon vertices must be finite")
            verts = _dedupe(verts)
            if _signed_area(verts) < 0:
                verts.reverse()
            if len(verts) >= 3 and not _is_convex_ccw(verts):
                raise GeometryError("polygon is not convex")
        self.vertices: tuple[tuple[float, float], ...] = tuple(verts)

    @classmethod
    def _trusted(cls, verts) -> "ConvexPolygon":
        poly = cls.__new__(cls)
        poly.vertices = tuple(verts)
        return poly

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) < 3

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __repr__(self) -> str:
        if self.is_empty:
            return "ConvexPolygon(<empty>)"
        return f"ConvexPolygon({list(self.vertices)!r})"

    def translated(self, dx: float, dy: float) -> "ConvexPolygon":
        return ConvexPolygon._trusted((x + dx, y + dy) for x, y in self.vertices)

    def scaled(self, s: float) -> "ConvexPolygon":
        return ConvexPolygon._trusted((s * x, s * y) for x, y in self.vertices)

    def bounding_box(self) -> tuple[float, float, float, float]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def diameter(self) -> float:
        vs = self.vertices
        return math.sqrt(max((dist_sq(p, q) for p in vs for q in vs), default=0.0))

    def contains(self, p, tol: float = EPS_GEOM) -> bool:
        """Point-in-polygon test with ``tol`` slack on every edge."""
        if self.is_empty:
            return False
        vs = self.vertices
        px, py = p[0], p[1]
        for i in range(len(vs)):
            x1, y1 = vs[i]
            x2, y2 = vs[(i + 1) % len(vs)]
            ex, ey = x2 - x1, y2 - y1
            cross = ex * (py - y1) - ey * (px - x1)
            if cross < -tol * math.hypot(ex, ey):
                return False
        return True


EMPTY = ConvexPolygon._trusted(())


def _is_convex_ccw(verts) -> bool:
    n = len(verts)
    for i in range(n):
        x0, y0 = verts[i - 1]
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        if (x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1) < -EPS_GEOM:
            return False
    return True


def polygon(vertices) -> ConvexPolygon:
    return ConvexPolygon(vertices)


def unit_triangle(side: float = 1.0) -> ConvexPolygon:
    """Equilateral triangle with vertices (0,0), (L,0), (L/2, L*sqrt(3)/2)."""
    return ConvexPolygon(((0.0, 0.0), (side, 0.0), (0.5 * side, 0.5 * math.sqrt(3.0) * side)))


def regular_polygon(k: int, side: float = 1.0) -> ConvexPolygon:
    r = side / (2.0 * math.sin(math.pi / k))
    return ConvexPolygon(
        (r * math.cos(2 * math.pi * i / k), r * math.sin(2 * math.pi * i / k)) for i in range(k)
    )


class HalfPlane(NamedTuple):
    """The set ``a*x + b*y <= c`` with ``(a, b)`` a unit vector."""

    a: float
    b: float
    c: float

    @classmethod
    def make(cls, a: float, b: float, c: float) -> "HalfPlane":
        norm = math.hypot(a, b)
        if norm == 0.0 or not math.isfinite(norm):
            raise GeometryError("half-plane normal must be non-zero and finite")
        return cls(a / norm, b / norm, c / norm)

    def complement(self) -> "HalfPlane":
        return HalfPlane(-self.a, -self.b, -self.c)

    def signed_distance(self, p) -> float:
        return self.a * p[0] + self.b * p[1] - self.c


def bisector(p, q) -> HalfPlane:
    """Half-plane of points at least as close to ``p`` as to ``q``."""
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    norm = math.hypot(dx, dy)
    if norm <= EPS_GEOM:
        raise GeometryError("bisector of coincident points")
    a, b = dx / norm, dy / norm
    return HalfPlane(a, b, a * 0.5 * (p[0] + q[0]) + b * 0.5 * (p[1] + q[1]))


def _clip_verts(verts, a: float, b: float, c: float):
    """Core Sutherland-Hodgman step against one edge; returns a vertex list
    or ``verts`` itself when nothing is cut."""
    tol = EPS_SNAP * (1.0 + abs(c))
    s = [a * x + b * y - c for x, y in verts]
    if max(s) <= tol:
        return verts
    if min(s) >= -tol:
        return ()
    # vertices within rounding of the line count as on it
    s = [0.0 if -tol <= v <= tol else v for v in s]
    out = []
    n = len(verts)
    for i in range(n):
        j = i + 1 if i + 1 < n else 0
        si, sj = s[i], s[j]
        if si <= 0.0:
            out.append(verts[i])
        if (si < 0.0 < sj) or (sj < 0.0 < si):
            t = si / (si - sj)
            xi, yi = verts[i]
            xj, yj = verts[j]
            out.append((xi + t * (xj - xi), yi + t * (yj - yi)))
    out = _dedupe(out)
    if len(out) < 3 or _signed_area(out) <= EPS_AREA:
        return ()
    return out


def clip(poly: ConvexPolygon, hp: HalfPlane) -> ConvexPolygon:
    """Intersect a convex polygon with a half-plane."""
    if poly.is_empty:
        return EMPTY
    out = _clip_verts(poly.vertices, hp.a, hp.b, hp.c)
    if out is poly.vertices:
        return poly
    if not out:
        return EMPTY
    return ConvexPolygon._trusted(out)


def area(poly) -> float:
    verts = poly.vertices if isinstance(poly, ConvexPolygon) else list(poly)
    return abs(_signed_area(verts))


def centroid(poly: ConvexPolygon) -> Point:
    verts = poly.vertices
    a = _signed_area(verts)
    if a <= EPS_AREA:
        raise DegenerateRegionError("centroid of a region with no area")
    x0, y0 = verts[0]
    cx = cy = 0.0
    for i in range(1, len(verts) - 1):
        x1, y1 = verts[i][0] - x0, verts[i][1] - y0
        x2, y2 = verts[i + 1][0] - x0, verts[i + 1][1] - y0
        w = x1 * y2 - x2 * y1
        cx += w * (x1 + x2)
        cy += w * (y1 + y2)
    return Point(x0 + cx / (6.0 * a), y0 + cy / (6.0 * a))


def triangulate(poly: ConvexPolygon) -> list[tuple[tuple[float, float], ...]]:
    """Fan triangulation from vertex 0."""
    verts = poly.vertices
    if len(verts) < 3 or _signed_area(verts) <= EPS_AREA:
        raise DegenerateRegionError("cannot triangulate a degenerate polygon")
    v0 = verts[0]
    return [(v0, verts[i], verts[i + 1]) for i in range(1, len(verts) - 1)]


def project_onto(poly: ConvexPolygon, p) -> Point:
    """Closest point of ``poly`` to ``p`` (``p`` itself when inside)."""
    if poly.contains(p, tol=0.0):
        return Point(float(p[0]), float(p[1]))
    best = None
    best_d = math.inf
    vs = poly.vertices
    for i in range(len(vs)):
        x1, y1 = vs[i]
        x2, y2 = vs[(i + 1) % len(vs)]
        ex, ey = x2 - x1, y2 - y1
        t = ((p[0] - x1) * ex + (p[1] - y1) * ey) / (ex * ex + ey * ey)
        t = min(1.0, max(0.0, t))
        q = (x1 + t * ex, y1 + t * ey)
        d = dist_sq(p, q)
        if d < best_d:
            best, best_d = q, d
    return Point(*best)


def rotate_about(p, center, angle: float) -> Point:
    c, s = math.cos(angle), math.sin(angle)
    dx, dy = p[0] - center[0], p[1] - center[1]
    return Point(center[0] + c * dx - s * dy, center[1] + s * dx + c * dy)


def reflect_across(p, origin, direction) -> Point:
    """Mirror ``p`` in the line through ``origin`` with unit ``direction``."""
    ux, uy = direction
    dx, dy = p[0] - origin[0], p[1] - origin[1]
    t = dx * ux + dy * uy
    return Point(origin[0] + 2 * t * ux - dx, origin[1] + 2 * t * uy - dy)
