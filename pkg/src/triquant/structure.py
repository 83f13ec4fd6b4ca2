"""Symmetry and row structure of configurations in an equilateral triangle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import reflect_across, rotate_about
from .moments import Domain, domain_mean

ROW_TOL = 0.02
SYMMETRY_TOL = 0.01


@dataclass(frozen=True)
class Axis:
    """Median of the domain through ``vertex`` (an index into its vertices)."""

    vertex: int
    origin: tuple[float, float]
    direction: tuple[float, float]


@dataclass(frozen=True)
class RowDecomposition:
    """Row counts from the apex down; ``levels`` are heights above the base."""

    counts: tuple[int, ...]
    N: int
    J: int
    levels: tuple[float, ...] = ()
    matches_conjecture: bool = True
    apex_vertex: int | None = None
    diagnostic: str = ""
    predicted: tuple[int, ...] = field(default=())

    @property
    def rows(self) -> list[tuple[float | None, int]]:
        levels = self.levels or (None,) * len(self.counts)
        return list(zip(levels, self.counts))


def _require_equilateral(domain: Domain):
    if not domain.is_equilateral_triangle:
        raise ValueError("structure analysis needs an equilateral triangle domain")


def median_axes(domain: Domain) -> list[Axis]:
    _require_equilateral(domain)
    vs = domain.boundary.vertices
    axes = []
    for k in range(3):
        v = vs[k]
        m = ((vs[(k + 1) % 3][0] + vs[(k + 2) % 3][0]) / 2, (vs[(k + 1) % 3][1] + vs[(k + 2) % 3][1]) / 2)
        dx, dy = m[0] - v[0], m[1] - v[1]
        norm = math.hypot(dx, dy)
        axes.append(Axis(k, v, (dx / norm, dy / norm)))
    return axes


def reflection_distance(points, axis: Axis) -> float:
    """Hausdorff distance between a point set and its mirror image."""
    pts = np.asarray(points, dtype=float)
    mirrored = np.array([reflect_across(p, axis.origin, axis.direction) for p in pts])
    d = np.sqrt(((mirrored[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def symmetry_axes(domain: Domain, points, tol: float | None = None) -> list[Axis]:
    """Every median of the domain that maps the configuration to itself."""
    L = _side(domain)
    tol = SYMMETRY_TOL * L if tol is None else tol
    return [ax for ax in median_axes(domain) if reflection_distance(points, ax) < tol]


def detect_symmetry_axis(domain: Domain, points, tol: float | None = None) -> Axis | None:
    axes = symmetry_axes(domain, points, tol)
    return axes[0] if axes else None


def conjecture2_prediction(n: int) -> RowDecomposition:
    """Predicted row counts: N = floor(sqrt(2n)) rows, the first J holding j points."""
    if n < 1:
        raise ValueError("n must be positive")
    N = math.isqrt(2 * n)
    T = N * (N + 1) // 2
    J = N - abs(n - T)
    if n > T:
        extra = 1
    elif n < T:
        extra = -1
    else:
        extra = 0
    counts = tuple(j if j <= J else j + extra for j in range(1, N + 1))
    return RowDecomposition(counts=counts, N=N, J=J, predicted=counts)


def _side(domain: Domain) -> float:
    vs = domain.boundary.vertices
    return math.dist(vs[0], vs[1])


def canonical_orientation(domain: Domain, points, apex_vertex: int) -> np.ndarray:
    """Rotate about the centroid so ``apex_vertex`` sits straight above it."""
    _require_equilateral(domain)
    c = domain_mean(domain)
    v = domain.boundary.vertices[apex_vertex]
    angle = math.pi / 2 - math.atan2(v[1] - c[1], v[0] - c[0])
    return np.array([rotate_about(p, c, angle) for p in np.asarray(points, dtype=float)])


def _cluster_rows(heights: np.ndarray, gap: float) -> list[list[float]]:
    hs = sorted(heights, reverse=True)
    rows = [[hs[0]]]
    for h in hs[1:]:
        if rows[-1][-1] - h > gap:
            rows.append([h])
        else:
            rows[-1].append(h)
    return rows


def rows_for_apex(domain: Domain, points, apex_vertex: int, tol: float | None = None):
    """Row counts (apex first) and mean heights for one orientation."""
    L = _side(domain)
    gap = ROW_TOL * L if tol is None else tol
    rotated = canonical_orientation(domain, points, apex_vertex)
    base = min(v[1] for v in canonical_orientation(domain, domain.boundary.vertices, apex_vertex))
    rows = _cluster_rows(rotated[:, 1] - base, gap)
    return tuple(len(r) for r in rows), tuple(float(np.mean(r)) for r in rows)


def row_decomposition(
    domain: Domain,
    points,
    tol: float | None = None,
    *,
    symmetry_tol: float | None = None,
) -> RowDecomposition:
    """Group points into rows parallel to one side and compare with the prediction.

    Orientations whose median is a symmetry axis are tried first, then the
    remaining ones; the first that reproduces the predicted counts wins.
    """
    pts = np.asarray(points, dtype=float)
    pred = conjecture2_prediction(len(pts))
    sym = [ax.vertex for ax in symmetry_axes(domain, pts, symmetry_tol)]
    order = sym + [k for k in range(3) if k not in sym]
    first = None
    for k in order:
        counts, levels = rows_for_apex(domain, pts, k, tol)
        if first is None:
            first = (k, counts, levels)
        if counts == pred.counts:
            return RowDecomposition(counts, pred.N, pred.J, levels, True, k, "", pred.counts)
    k, counts, levels = first
    diag = f"rows {counts} differ from predicted {pred.counts} in every orientation"
    return RowDecomposition(counts, pred.N, pred.J, levels, False, k, diag, pred.counts)


# Values of n known as exceptions to the structure conjectures in earlier
# numerical searches: asymmetric optima and irregular row counts.
FLAGGED_ASYMMETRIC = (8, 19)
FLAGGED_ROWS = (12, 14)
