import math

import numpy as np
import pytest

from triquant import analytic as A
from triquant.moments import Domain
from triquant.voronoi import optimality_residual, partition

SQRT3 = math.sqrt(3.0)
SQRT5 = math.sqrt(5.0)


class TestOneMean:
    def test_triangle(self, tri):
        pts, err = A.optimal_1(tri)
        assert pts[0] == pytest.approx((0.5, SQRT3 / 6))
        assert err == pytest.approx(1 / 12, abs=1e-15)

    def test_square(self, square):
        pts, err = A.optimal_1(square)
        assert pts[0] == pytest.approx((0.5, 0.5))
        assert err == pytest.approx(1 / 6, abs=1e-15)

    def test_translation(self, tri):
        moved = Domain(tri.boundary.translated(2.0, -1.0))
        pts, err = A.optimal_1(moved)
        assert pts[0] == pytest.approx((2.5, SQRT3 / 6 - 1.0))
        assert err == pytest.approx(1 / 12, abs=1e-14)


class TestTwoMeans:
    @pytest.mark.parametrize("ab", [(0.5, 1.0), (1.0, 0.5), (1.0, 1.0),
                                    ((SQRT5 - 1) / 2, (SQRT5 - 1) / 2),
                                    ((-1 - SQRT5) / 2, (-1 - SQRT5) / 2)])
    def test_known_roots(self, ab):
        assert A.two_means_residuals(*ab) == pytest.approx((0.0, 0.0), abs=1e-13)

    def test_at_zero(self):
        assert A.two_means_residuals(0.0, 0.0) == (-3.0, -3.0)

    def test_optimum(self, tri):
        sols = A.optimal_2(tri)
        assert len(sols) == 3
        pts, err = sols[0]
        assert err == pytest.approx(0.0532767, abs=1e-6)
        assert pts == pytest.approx(np.array([(0.309017, 0.178411), (0.618034, 0.356822)]), abs=1e-6)

    def test_on_median_through_origin(self, tri):
        pts, _ = A.optimal_2(tri)[0]
        for x, y in pts:
            assert y == pytest.approx(x / SQRT3, abs=1e-15)

    def test_rejected_pair(self, tri):
        pts = A.rejected_two_means()
        assert pts == pytest.approx(np.array([(1 / 3, 1 / (2 * SQRT3)), (2 / 3, 1 / (2 * SQRT3))]))
        assert partition(tri, pts).total_error == pytest.approx(1 / 18, abs=1e-12)

    def test_golden_ratio(self, tri):
        sol = A.two_means_solution(A.INV_GOLDEN, A.INV_GOLDEN)
        assert sol.alpha == pytest.approx(1 / A.GOLDEN)
        assert sol.cell_area_ratio == pytest.approx(A.GOLDEN, abs=1e-12)
        part = partition(tri, sol.points)
        assert part.areas[1] / part.areas[0] == pytest.approx(A.GOLDEN, abs=1e-8)

    def test_newton_regenerates_root(self):
        a, b = A.solve_pair(A.two_means_residuals, (0.6, 0.65))
        assert (a, b) == pytest.approx((A.INV_GOLDEN, A.INV_GOLDEN), abs=1e-12)

    def test_unsupported_domain(self, square):
        with pytest.raises(A.UnsupportedDomainError):
            A.optimal_2(square)


class TestThreeMeans:
    def test_root(self):
        assert A.three_means_residuals(0.5, 2 / 3) == pytest.approx((0.0, 0.0), abs=1e-12)

    def test_at_zero(self):
        assert A.three_means_residuals(0.0, 0.0) == (-13.0, -13.0)

    def test_at_one(self):
        # direct substitution: 5 + 6 - 37 + 36 + 3 - 13 and -1 - 6 + 23 - 24 - 15 + 36 - 13
        assert A.three_means_residuals(1.0, 1.0) == (0.0, 0.0)

    def test_configuration_from_parameters(self, tri):
        pts = A.three_means_configuration(0.5, 2 / 3)
        assert pts == pytest.approx(A.optimal_3(tri)[0], abs=1e-15)

    def test_optimum(self, tri):
        pts, err = A.optimal_3(tri)
        assert err == pytest.approx(11 / 432, abs=1e-15)
        assert partition(tri, pts).cell_errors == pytest.approx([11 / 1296] * 3, abs=1e-15)
        sides = [math.dist(pts[i], pts[(i + 1) % 3]) for i in range(3)]
        assert max(sides) - min(sides) < 1e-12
        # one side parallel to the base
        assert pts[0][1] == pytest.approx(pts[1][1], abs=1e-15)

    def test_newton_regenerates_root(self):
        assert A.solve_pair(A.three_means_residuals, (0.45, 0.6)) == pytest.approx((0.5, 2 / 3), abs=1e-12)


class TestFourMeans:
    ref = A.FourMeansParams(*A.FOUR_MEANS_TABULATED)

    def test_residuals_vanish_at_tabulated_values(self):
        assert A.four_means_residuals(self.ref) == pytest.approx((0, 0, 0, 0), abs=1e-12)

    def test_perturbation_breaks_system(self):
        bumped = A.FourMeansParams(self.ref.alpha + 0.01, *A.FOUR_MEANS_TABULATED[1:])
        assert max(map(abs, A.four_means_residuals(bumped))) > 1e-4

    def test_inadmissible(self):
        with pytest.raises(A.InadmissibleParametersError):
            A.four_means_residuals(A.FourMeansParams(0.5, 0.5, 0.7, 0.3))

    def test_area_centroids_match_voronoi_cells(self, tri):
        pts = A.four_means_configuration(self.ref)
        part = partition(tri, pts)
        assert np.allclose(np.array(part.centroids), pts, atol=1e-9)

    def test_vertices_lie_on_cell_boundaries(self, tri):
        verts = A.four_means_vertices(self.ref)
        P, Q, R, S = A.four_means_configuration(self.ref)
        assert math.dist(verts["C"], P) == pytest.approx(math.dist(verts["C"], R), abs=1e-12)
        assert math.dist(verts["D"], P) == pytest.approx(math.dist(verts["D"], Q), abs=1e-12)
        assert math.dist(verts["N1"], Q) == pytest.approx(math.dist(verts["N1"], R), abs=1e-12)
        assert math.dist(verts["G"], P) == pytest.approx(math.dist(verts["G"], S), abs=1e-12)

    def test_solve_from_rounded_guess(self):
        params = A.solve_four_means((0.5, 0.57, 0.35, 0.38))
        assert np.allclose(params.as_array(), A.FOUR_MEANS_TABULATED, rtol=1e-12, atol=0)

    def test_solve_from_grid_scan(self):
        params = A.solve_four_means()
        assert np.allclose(params.as_array(), A.FOUR_MEANS_TABULATED, rtol=1e-12, atol=0)

    def test_grid_scan_is_deterministic(self):
        a = A.grid_scan_four_means()[:5]
        b = A.grid_scan_four_means()[:5]
        assert all(np.array_equal(x, y) for x, y in zip(a, b))

    def test_points(self, tri):
        pts, err = A.optimal_4(tri)
        assert pts[0][0] == 0.5 and pts[1][0] == 0.5
        assert np.allclose(pts, A.FOUR_MEANS_POINTS_TABULATED, atol=1e-10, rtol=0)
        assert err < 11 / 432
        # regression value from the Voronoi evaluation of the solved points
        assert err == pytest.approx(0.02055398082292787, abs=1e-14)

    def test_rotated_copies(self, tri):
        errs = [e for _, e in A.optimal_4_all(tri)]
        assert max(errs) - min(errs) < 1e-10


def test_monotone(tri):
    vals = [A.known_optimum(tri, n)[1] for n in (1, 2, 3, 4)]
    assert vals[0] > vals[1] > vals[2] > vals[3]


def test_all_optima_centroidal(tri):
    for n in (1, 2, 3, 4):
        assert optimality_residual(tri, A.known_optimum(tri, n)[0]) < 1e-8


def test_damped_newton_reports_failure():
    with pytest.raises(A.ConvergenceError):
        A.damped_newton(lambda x: np.array([x[0] ** 2 + 1.0]), [0.3], max_iter=20)
