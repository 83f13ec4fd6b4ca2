import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from triquant.geometry import (
    EMPTY,
    ConvexPolygon,
    DegenerateRegionError,
    GeometryError,
    HalfPlane,
    area,
    centroid,
    clip,
    dist_sq,
    project_onto,
    regular_polygon,
    triangulate,
    unit_triangle,
)

from conftest import random_convex_polygon

SQRT3 = math.sqrt(3.0)
SQUARE = ConvexPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def shoelace(verts):
    v = np.asarray(verts, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def same_vertex_set(p, q, tol=1e-12):
    if len(p) != len(q):
        return False
    return all(min(math.dist(a, b) for b in q.vertices) <= tol for a in p.vertices)


class TestArea:
    def test_unit_triangle(self):
        assert area(unit_triangle()) == pytest.approx(SQRT3 / 4, abs=1e-15)

    def test_degenerate(self):
        assert area(ConvexPolygon([(0, 0), (1, 0)])) == 0.0
        assert area(EMPTY) == 0.0

    def test_square(self):
        assert area(SQUARE) == pytest.approx(1.0, abs=1e-15)

    def test_clockwise_input_is_reoriented(self):
        cw = ConvexPolygon([(0, 0), (0, 1), (1, 1), (1, 0)])
        from triquant.geometry import _signed_area

        assert _signed_area(cw.vertices) > 0
        assert area(cw) == pytest.approx(1.0)

    def test_rejects_nonconvex(self):
        with pytest.raises(GeometryError):
            ConvexPolygon([(0, 0), (2, 0), (1, 0.2), (1, 2)])

    def test_rejects_nan(self):
        with pytest.raises(GeometryError):
            ConvexPolygon([(0, 0), (1, float("nan")), (0, 1)])


class TestCentroid:
    def test_unit_triangle(self):
        c = centroid(unit_triangle())
        assert c.x == pytest.approx(0.5, abs=1e-15)
        assert c.y == pytest.approx(SQRT3 / 6, abs=1e-15)

    def test_square(self):
        assert centroid(SQUARE) == pytest.approx((0.5, 0.5))

    def test_right_triangle(self):
        c = centroid(ConvexPolygon([(0, 0), (1, 0), (0, 1)]))
        assert c == pytest.approx((1 / 3, 1 / 3), abs=1e-15)

    def test_degenerate_raises(self):
        with pytest.raises(DegenerateRegionError):
            centroid(EMPTY)


class TestClip:
    def test_median_cut(self):
        out = clip(unit_triangle(), HalfPlane.make(1, 0, 0.5))
        expected = ConvexPolygon([(0, 0), (0.5, 0), (0.5, SQRT3 / 2)])
        assert same_vertex_set(out, expected)
        assert area(out) == pytest.approx(SQRT3 / 8, abs=1e-15)

    def test_containing_halfplane_is_noop(self):
        assert clip(SQUARE, HalfPlane.make(1, 0, 2)) is SQUARE

    def test_disjoint_halfplane_is_empty(self):
        assert clip(SQUARE, HalfPlane.make(1, 0, -1)).is_empty

    def test_halfplane_is_normalized(self):
        h = HalfPlane.make(3, 4, 10)
        assert h.a**2 + h.b**2 == pytest.approx(1.0, abs=1e-15)
        assert h.c == pytest.approx(2.0)

    def test_sliver_becomes_empty(self):
        # cut leaves a region of area ~1e-20
        out = clip(SQUARE, HalfPlane.make(1, 0, 1e-20))
        assert out.is_empty


class TestTriangulate:
    def test_triangle(self):
        tris = triangulate(unit_triangle())
        assert len(tris) == 1

    def test_square(self):
        tris = triangulate(SQUARE)
        assert [shoelace(t) for t in tris] == pytest.approx([0.5, 0.5])

    def test_hexagon(self):
        hexagon = regular_polygon(6, side=1.0)
        tris = triangulate(hexagon)
        assert len(tris) == 4
        # shoelace oracle on the hexagon itself
        assert sum(shoelace(t) for t in tris) == pytest.approx(shoelace(hexagon.vertices), abs=1e-14)
        assert shoelace(hexagon.vertices) == pytest.approx(3 * SQRT3 / 2, abs=1e-14)

    def test_degenerate_raises(self):
        with pytest.raises(DegenerateRegionError):
            triangulate(ConvexPolygon([(0, 0), (1, 0)]))


class TestDistSq:
    def test_values(self):
        assert dist_sq((0, 0), (1, 0)) == 1.0
        assert dist_sq((0.5, SQRT3 / 6), (0, 0)) == pytest.approx(1 / 3, abs=1e-15)
        assert dist_sq((0.3, 0.7), (0.3, 0.7)) == 0.0


def test_project_onto():
    t = unit_triangle()
    assert project_onto(t, (0.5, 0.2)) == (0.5, 0.2)
    assert project_onto(t, (0.5, -1.0)) == pytest.approx((0.5, 0.0))
    assert project_onto(t, (-1.0, -1.0)) == pytest.approx((0.0, 0.0))


# ---------------------------------------------------------------- properties

angles = st.floats(0, 2 * math.pi, allow_nan=False)
offsets = st.floats(-1.5, 1.5, allow_nan=False)
seeds = st.integers(0, 2**32 - 1)


def _halfplane(theta, c):
    return HalfPlane.make(math.cos(theta), math.sin(theta), c)


@settings(max_examples=200, deadline=None)
@given(seeds, angles, offsets)
def test_clip_idempotent(seed, theta, c):
    poly = random_convex_polygon(np.random.default_rng(seed))
    h = _halfplane(theta, c)
    once = clip(poly, h)
    twice = clip(once, h)
    assert once.is_empty == twice.is_empty
    if not once.is_empty:
        assert same_vertex_set(once, twice)


@settings(max_examples=200, deadline=None)
@given(seeds, angles, offsets)
def test_complementary_clips_partition_area(seed, theta, c):
    poly = random_convex_polygon(np.random.default_rng(seed))
    h = _halfplane(theta, c)
    total = area(clip(poly, h)) + area(clip(poly, h.complement()))
    assert total == pytest.approx(area(poly), abs=1e-14)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_centroid_is_area_weighted_triangle_centroids(seed):
    poly = random_convex_polygon(np.random.default_rng(seed))
    tris = triangulate(poly)
    w = np.array([shoelace(t) for t in tris])
    cs = np.array([np.mean(t, axis=0) for t in tris])
    assert np.allclose(centroid(poly), (w[:, None] * cs).sum(0) / w.sum(), atol=1e-14)
    assert poly.contains(centroid(poly))


def test_random_clips_keep_ccw_and_nonnegative_area():
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        poly = random_convex_polygon(rng, k=int(rng.integers(3, 15)))
        theta = rng.uniform(0, 2 * math.pi)
        out = clip(poly, _halfplane(theta, rng.uniform(-1, 1)))
        assert area(out) >= 0
        if not out.is_empty:
            v = out.vertices
            for i in range(len(v)):
                (x0, y0), (x1, y1), (x2, y2) = v[i - 1], v[i], v[(i + 1) % len(v)]
                assert (x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1) >= -1e-12
