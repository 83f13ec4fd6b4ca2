"""Voronoi partitions of a convex domain by half-plane clipping."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import EMPTY, EPS_GEOM, ConvexPolygon, GeometryError, _clip_verts
from .moments import Domain, region_moments


class DuplicatePointsError(GeometryError):
    """Two quantizer points coincide (within ``EPS_GEOM``)."""


def as_configuration(points) -> np.ndarray:
    """Validate a point set and return it as a float ``(n, 2)`` array."""
    pts = np.array(points, dtype=float)
    if pts.ndim == 1 and pts.size == 2:
        pts = pts.reshape(1, 2)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) == 0:
        raise GeometryError(f"expected an (n, 2) array of points, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise GeometryError("configuration contains non-finite coordinates")
    if len(pts) > 1:
        diff = pts[:, None, :] - pts[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        np.fill_diagonal(d2, np.inf)
        if d2.min() <= EPS_GEOM * EPS_GEOM:
            i, j = np.unravel_index(np.argmin(d2), d2.shape)
            raise DuplicatePointsError(f"points {i} and {j} coincide")
    return pts


@dataclass(frozen=True)
class Partition:
    points: np.ndarray
    cells: tuple[ConvexPolygon, ...]
    areas: tuple[float, ...]
    centroids: tuple[tuple[float, float] | None, ...]
    cell_errors: tuple[float, ...]
    total_error: float

    @property
    def n(self) -> int:
        return len(self.cells)

    @property
    def has_empty_cell(self) -> bool:
        return any(c.is_empty for c in self.cells)


def voronoi_cell(boundary_verts, pts: list[tuple[float, float]], i: int, order=None):
    """Vertex list of the cell of ``pts[i]`` inside the boundary.

    Neighbours are visited nearest first; once the next neighbour is farther
    than twice the cell's radius about ``pts[i]`` no bisector can cut it.
    """
    px, py = pts[i]
    if order is None:
        order = sorted(
            (j for j in range(len(pts)) if j != i),
            key=lambda j: (pts[j][0] - px) ** 2 + (pts[j][1] - py) ** 2,
        )
    verts = boundary_verts
    r2 = max((x - px) ** 2 + (y - py) ** 2 for x, y in verts)
    for j in order:
        qx, qy = pts[j]
        dx, dy = qx - px, qy - py
        d2 = dx * dx + dy * dy
        if d2 >= 4.0 * r2:
            break
        norm = math.sqrt(d2)
        a, b = dx / norm, dy / norm
        c = a * 0.5 * (px + qx) + b * 0.5 * (py + qy)
        new = _clip_verts(verts, a, b, c)
        if new is verts:
            continue
        if not new:
            return ()
        verts = new
        r2 = max((x - px) ** 2 + (y - py) ** 2 for x, y in verts)
    return verts


def _neighbour_orders(arr: np.ndarray):
    diff = arr[:, None, :] - arr[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    orders = np.argsort(d2, axis=1, kind="stable")
    return [[int(j) for j in row if j != i] for i, row in enumerate(orders)]


def partition(domain: Domain, points) -> Partition:
    """Voronoi cells of ``points`` clipped to ``domain`` with their errors.

    Points outside the domain are allowed; their cells may be empty, in
    which case the cell error is 0 and the centroid is ``None``.
    """
    arr = as_configuration(points)
    pts = [(float(x), float(y)) for x, y in arr]
    orders = _neighbour_orders(arr) if len(pts) > 1 else [[]]
    bverts = domain.boundary.vertices
    cells, areas, cents, errs = [], [], [], []
    for i, p in enumerate(pts):
        verts = voronoi_cell(bverts, pts, i, orders[i])
        if not verts:
            cells.append(EMPTY)
            areas.append(0.0)
            cents.append(None)
            errs.append(0.0)
            continue
        a, mx, my, s = region_moments(verts, p)
        cells.append(ConvexPolygon._trusted(verts))
        areas.append(a)
        cents.append((p[0] + mx / a, p[1] + my / a))
        errs.append(domain.density * s)
    return Partition(
        points=arr,
        cells=tuple(cells),
        areas=tuple(areas),
        centroids=tuple(cents),
        cell_errors=tuple(errs),
        total_error=math.fsum(errs),
    )


def quantization_error(domain: Domain, points) -> float:
    """Total error, or ``inf`` when some cell is empty."""
    part = partition(domain, points)
    if part.has_empty_cell:
        return math.inf
    return part.total_error


def optimality_residual(domain: Domain, points, part: Partition | None = None) -> float:
    """Largest distance between a point and the centroid of its cell.

    Zero exactly at centroidal configurations; ``inf`` if any cell is empty.
    """
    if part is None:
        part = partition(domain, points)
    worst = 0.0
    for p, c in zip(part.points, part.centroids):
        if c is None:
            return math.inf
        worst = max(worst, math.hypot(p[0] - c[0], p[1] - c[1]))
    return worst
