import math

import numpy as np
import pytest
from scipy.integrate import dblquad

from triquant import lattice as lat
from triquant.voronoi import partition

SQRT3 = math.sqrt(3.0)
SQRT21 = math.sqrt(21.0)
AREA = SQRT3 / 4


def _normalized_integral(f, x0, x1, y0, y1):
    val, _ = dblquad(lambda y, x: f(x, y), x0, x1, y0, y1, epsabs=1e-14, epsrel=1e-13)
    return val / AREA


class TestKernels:
    @pytest.mark.parametrize("r", [0.1, 0.25, 1 / 3])
    def test_pi6(self, r):
        # right triangle, point at the vertex with angle pi/6, adjacent leg r
        ref = _normalized_integral(lambda x, y: x * x + y * y, 0.0, r, 0.0, lambda x: x / SQRT3)
        assert lat.triangle_kernel_pi6(r) == pytest.approx(ref, rel=1e-11)

    @pytest.mark.parametrize("r", [0.1, 0.2])
    def test_pi3(self, r):
        ref = _normalized_integral(lambda x, y: x * x + y * y, 0.0, r, 0.0, lambda x: SQRT3 * x)
        assert lat.triangle_kernel_pi3(r) == pytest.approx(ref, rel=1e-11)

    @pytest.mark.parametrize("l,w", [(0.5, 1 / 3), (0.1, 0.2), (0.3, 0.05)])
    def test_rectangle(self, l, w):
        ref = _normalized_integral(lambda x, y: x * x + y * y, 0.0, l, 0.0, w)
        assert lat.rectangle_kernel(l, w) == pytest.approx(ref, rel=1e-11)

    def test_dispatch(self):
        assert lat.kernel_moments("rect", 0.5, 1 / 3) == lat.rectangle_kernel(0.5, 1 / 3)

    def test_scaling(self):
        assert lat.triangle_kernel_pi6(0.2, L=2.0) == pytest.approx(lat.triangle_kernel_pi6(0.2) / 4)


class TestConfiguration:
    @pytest.mark.parametrize("N", range(2, 9))
    def test_counts(self, N):
        pts = lat.build_lattice_config(lat.LatticeParams.optimal(N))
        assert len(pts) == N * (N + 1) // 2
        labels = lat.classify_lattice_points(N)
        counts = (labels.count("centre"), labels.count("edge"), labels.count("corner"))
        assert counts == lat.point_type_counts(N)
        assert sum(counts) == len(pts)

    def test_two_rows_are_corners(self):
        p = lat.LatticeParams(2, 0.1)
        pts = lat.build_lattice_config(p)
        assert lat.classify_lattice_points(2) == ["corner"] * 3
        assert pts[0] == pytest.approx((0.5, 0.1 + p.d * SQRT3 / 2))
        assert pts[1] == pytest.approx((SQRT3 * 0.1, 0.1))

    def test_margin(self, tri):
        p = lat.LatticeParams(4, 0.1)
        pts = lat.build_lattice_config(p)
        verts = tri.boundary.vertices
        for q, label in zip(pts, lat.classify_lattice_points(4)):
            dists = []
            for i in range(3):
                (x1, y1), (x2, y2) = verts[i], verts[(i + 1) % 3]
                dists.append(((x2 - x1) * (q[1] - y1) - (y2 - y1) * (q[0] - x1)) / math.hypot(x2 - x1, y2 - y1))
            if label != "centre":
                assert min(dists) == pytest.approx(0.1, abs=1e-14)
            else:
                assert min(dists) > 0.1

    def test_rows_from_apex(self):
        pts = lat.build_lattice_config(lat.LatticeParams.optimal(4))
        ys = np.round(pts[:, 1], 12)
        levels = sorted(set(ys), reverse=True)
        assert [int((ys == v).sum()) for v in levels] == [1, 2, 3, 4]

    def test_invalid(self):
        with pytest.raises(ValueError):
            lat.LatticeParams(1, 0.1)
        with pytest.raises(ValueError):
            lat.LatticeParams(3, 0.0)
        with pytest.raises(ValueError):
            lat.LatticeParams(3, 0.3)  # 2 sqrt(3) a > L


class TestClosedForm:
    @pytest.mark.parametrize("N", range(2, 9))
    @pytest.mark.parametrize("a", [0.05, 0.1, None])
    def test_voronoi_matches_closed_form(self, tri, N, a):
        params = lat.LatticeParams.optimal(N) if a is None else lat.LatticeParams(N, a)
        err = partition(tri, lat.build_lattice_config(params)).total_error
        assert err == pytest.approx(lat.vn_of_lattice(params), abs=1e-12)
        assert lat.vn_from_kernels(params) == pytest.approx(lat.vn_of_lattice(params), abs=1e-14)

    def test_second_moment_is_unnormalized(self):
        p = lat.LatticeParams.optimal(5)
        assert lat.lattice_second_moment(p) == pytest.approx(lat.vn_of_lattice(p) * AREA, rel=1e-15)

    @pytest.mark.parametrize("N", range(3, 31))
    def test_bound_is_value_at_a_opt(self, N):
        assert lat.bound(N) == pytest.approx(lat.vn_of_lattice(lat.LatticeParams.optimal(N)), rel=1e-12)

    def test_bound_n3(self):
        assert lat.bound(3) == pytest.approx(0.0137247, abs=1e-7)

    def test_small_margin_limit(self):
        # as a -> 0 the quartic tends to 5 sqrt3 / (144 (N-1)^2)
        p = lat.LatticeParams(3, 1e-9)
        assert lat.vn_of_lattice(p) == pytest.approx(5 / 144, rel=1e-7)

    def test_a_opt(self):
        assert lat.a_opt(3) == pytest.approx(math.sqrt(7) / 18)
        assert lat.a_opt(10) == pytest.approx(math.sqrt(7) / 60)
        with pytest.raises(ValueError):
            lat.bound(2)

    @pytest.mark.parametrize("N", [3, 5, 10, 20])
    def test_scan_minimum_is_near_a_opt(self, N):
        a_min, v_min = lat.a_scan_minimum(N)
        assert v_min <= lat.bound(N) + 1e-15
        assert abs(a_min - lat.a_opt(N)) < 0.2 * lat.a_opt(N)

    def test_two_rows_scan_gives_three_means(self):
        _, v = lat.a_scan_minimum(2)
        assert v == pytest.approx(11 / 432, abs=1e-12)


class TestAsymptotics:
    def test_expansion_remainder(self):
        Ns = np.arange(3, 31)
        scaled = [N**4 * abs(lat.bound(int(N)) - lat.bound_expansion(int(N))) for N in Ns]
        C = max(scaled)
        assert C < 0.25
        # the remainder is genuinely fourth order: the scaled values settle
        assert abs(scaled[-1] - scaled[-2]) < 1e-3

    def test_expansion_form(self):
        N = 7
        assert lat.bound_expansion(N) == pytest.approx(5 / (36 * N**2) - (14 * SQRT21 - 45) / (162 * N**3))

    @pytest.mark.parametrize("n", [1, 3, 6, 72, 1000])
    def test_general_domain_identity(self, n):
        assert lat.general_domain_constant(AREA, n) == pytest.approx(5 / (72 * n), rel=1e-15)
        assert lat.asymptotic_bound(n) == 5 / 72 / n

    def test_leading_term(self):
        # n * bound(N) -> 5/72 as N grows
        N = 400
        n = N * (N + 1) // 2
        assert n * lat.bound(N) == pytest.approx(5 / 72, rel=1e-2)


def test_triangular_root():
    assert [lat.triangular_root(n) for n in (1, 3, 6, 10, 11, 21)] == [1, 2, 3, 4, None, 6]
