"""Exact integrals of 1, x, y and squared distance over convex regions.

The quantization error of a cell is the density-weighted integral of
``|x - p|^2``; for the uniform measure it is a degree-2 polynomial integral,
so it is computed in closed form from the vertex coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import (
    ConvexPolygon,
    DegenerateRegionError,
    EPS_AREA,
    Point,
    area,
    centroid,
    dist_sq,
    regular_polygon,
    unit_triangle,
)


def triangle_second_moment(v0, v1, v2, p=(0.0, 0.0)) -> float:
    """Unnormalized ``integral |x - p|^2 dA`` over a triangle.

    Uses ``int x^2 = A/6 (x0^2 + x1^2 + x2^2 + x0 x1 + x0 x2 + x1 x2)`` on
    coordinates shifted to ``p``; the area is taken unsigned.
    """
    x0, y0 = v0[0] - p[0], v0[1] - p[1]
    x1, y1 = v1[0] - p[0], v1[1] - p[1]
    x2, y2 = v2[0] - p[0], v2[1] - p[1]
    a = 0.5 * abs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0))
    sx = x0 * x0 + x1 * x1 + x2 * x2 + x0 * x1 + x0 * x2 + x1 * x2
    sy = y0 * y0 + y1 * y1 + y2 * y2 + y0 * y1 + y0 * y2 + y1 * y2
    return a * (sx + sy) / 6.0


def region_moments(verts, p) -> tuple[float, float, float, float]:
    """Area, first moments and second moment about ``p`` in one pass.

    Returns ``(A, Mx, My, S)`` where ``Mx = int (x - px) dA`` etc.  All
    integrals are exact; the fan is rooted at ``p`` (signed triangles).
    """
    n = len(verts)
    if n < 3:
        return 0.0, 0.0, 0.0, 0.0
    px, py = p[0], p[1]
    a2 = mx = my = s = 0.0
    xa, ya = verts[-1][0] - px, verts[-1][1] - py
    for xb, yb in verts:
        xb -= px
        yb -= py
        w = xa * yb - xb * ya
        a2 += w
        mx += w * (xa + xb)
        my += w * (ya + yb)
        s += w * (xa * xa + xa * xb + xb * xb + ya * ya + ya * yb + yb * yb)
        xa, ya = xb, yb
    return 0.5 * a2, mx / 6.0, my / 6.0, s / 12.0


def second_moment_about(region: ConvexPolygon, p) -> float:
    """Plain area integral of ``|x - p|^2`` over ``region`` (0 when empty)."""
    if region.is_empty:
        return 0.0
    return region_moments(region.vertices, p)[3]


@dataclass(frozen=True)
class Domain:
    """Support of a uniform probability measure."""

    boundary: ConvexPolygon
    total_area: float = field(init=False)
    density: float = field(init=False)

    def __post_init__(self):
        a = area(self.boundary)
        if not a > EPS_AREA:
            raise DegenerateRegionError("domain must have positive area")
        object.__setattr__(self, "total_area", a)
        object.__setattr__(self, "density", 1.0 / a)

    @classmethod
    def triangle(cls, side: float = 1.0) -> "Domain":
        return cls(unit_triangle(side))

    @classmethod
    def square(cls, side: float = 1.0) -> "Domain":
        return cls(ConvexPolygon(((0, 0), (side, 0), (side, side), (0, side))))

    @classmethod
    def regular(cls, k: int, side: float = 1.0) -> "Domain":
        return cls(regular_polygon(k, side))

    @property
    def is_equilateral_triangle(self) -> bool:
        vs = self.boundary.vertices
        if len(vs) != 3:
            return False
        sides = [dist_sq(vs[i], vs[(i + 1) % 3]) for i in range(3)]
        return max(sides) - min(sides) <= 1e-12 * max(sides)

    @property
    def is_unit_triangle(self) -> bool:
        """True for the canonical triangle (0,0), (1,0), (1/2, sqrt(3)/2)."""
        ref = unit_triangle().vertices
        vs = self.boundary.vertices
        return len(vs) == 3 and all(
            any(dist_sq(v, r) < 1e-20 for v in vs) for r in ref
        )


def cell_error(domain: Domain, region: ConvexPolygon, p) -> float:
    """Contribution of one cell to the quantization error."""
    return domain.density * second_moment_about(region, p)


def domain_mean(domain: Domain) -> Point:
    return centroid(domain.boundary)


def domain_variance(domain: Domain) -> float:
    """Expected squared distance to the mean, i.e. the one-point error."""
    return cell_error(domain, domain.boundary, domain_mean(domain))


def expected_monomial(domain: Domain, kx: int, ky: int) -> float:
    """``E[X1^kx X2^ky]`` for total degree <= 2, exactly.

    Used to check the marginal moments of the uniform law.
    """
    if kx + ky > 2 or kx < 0 or ky < 0:
        raise ValueError("only monomials of degree <= 2 are supported")
    a, mx, my, _ = region_moments(domain.boundary.vertices, (0.0, 0.0))
    if (kx, ky) == (0, 0):
        return 1.0
    if (kx, ky) == (1, 0):
        return mx / a
    if (kx, ky) == (0, 1):
        return my / a
    total = 0.0
    for v0, v1 in zip(domain.boundary.vertices, domain.boundary.vertices[1:] + domain.boundary.vertices[:1]):
        x0, y0 = v0
        x1, y1 = v1
        w = x0 * y1 - x1 * y0
        if (kx, ky) == (2, 0):
            total += w * (x0 * x0 + x0 * x1 + x1 * x1) / 12.0
        elif (kx, ky) == (0, 2):
            total += w * (y0 * y0 + y0 * y1 + y1 * y1) / 12.0
        else:
            total += w * (2 * x0 * y0 + x0 * y1 + x1 * y0 + 2 * x1 * y1) / 24.0
    return total / a


def marginal_pdfs(side: float = 1.0):
    """Marginal densities of the uniform law on the canonical triangle.

    Only used to cross-check :func:`expected_monomial`.
    """
    s3 = math.sqrt(3.0)

    def f1(x):
        x = x / side
        if 0 < x < 0.5:
            return 4 * x / side
        if 0.5 <= x < 1:
            return 4 * (1 - x) / side
        return 0.0

    def f2(y):
        y = y / side
        if 0 < y < s3 / 2:
            return 4 / s3 * (1 - 2 * y / s3) / side
        return 0.0

    return f1, f2
