"""Regression checks of every reference value, runnable as one command."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import analytic, lattice
from .moments import Domain, cell_error, domain_mean, domain_variance, expected_monomial
from .voronoi import optimality_residual, partition

SQRT3 = math.sqrt(3.0)

# Reference constants the checks compare against.  Tests tamper with this
# mapping to make sure a wrong value is reported.
REFERENCE_VALUES = {
    "V1": 1 / 12,
    "mean": (0.5, SQRT3 / 6),
    "E_X1_sq": 7 / 24,
    "E_X2_sq": 1 / 8,
    "V2": analytic.V2_TABULATED,
    "V2_rejected": analytic.V2_REJECTED,
    "golden": analytic.GOLDEN,
    "V3": analytic.V3,
    "V3_cell": analytic.V3_CELL,
    "three_means_params": (0.5, 2 / 3),
    "four_means_params": analytic.FOUR_MEANS_TABULATED,
    "four_means_points": analytic.FOUR_MEANS_POINTS_TABULATED,
    "lattice_bound_N3": 0.0137247,
    "asymptotic_constant": 5 / 72,
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    value: object = None
    seconds: float = 0.0


def _check(name, fn) -> CheckResult:
    t0 = time.perf_counter()
    try:
        passed, detail, value = fn()
    except Exception as exc:  # a crashing check is a failing check
        passed, detail, value = False, f"{type(exc).__name__}: {exc}", None
    return CheckResult(name, bool(passed), detail, value, time.perf_counter() - t0)


def _close(value, expected, tol):
    diff = abs(value - expected)
    return diff <= tol, f"value {value!r}, expected {expected!r}, |diff| {diff:.3e} (tol {tol:g})", value


def run_checks() -> list[CheckResult]:
    P = REFERENCE_VALUES
    D = Domain.triangle()
    checks = []

    def one_mean():
        return _close(domain_variance(D), P["V1"], 1e-12)

    def mean():
        m = domain_mean(D)
        diff = math.dist(m, P["mean"])
        return diff <= 1e-12, f"mean {tuple(m)}, |diff| {diff:.3e}", list(m)

    def marginals():
        e1 = expected_monomial(D, 2, 0)
        e2 = expected_monomial(D, 0, 2)
        diff = max(abs(e1 - P["E_X1_sq"]), abs(e2 - P["E_X2_sq"]))
        return diff <= 1e-12, f"E[X1^2] = {e1!r}, E[X2^2] = {e2!r}", [e1, e2]

    def parallel_axis():
        rng = np.random.default_rng(0)
        worst = 0.0
        for p in rng.uniform(-1, 2, size=(100, 2)):
            lhs = cell_error(D, D.boundary, p)
            rhs = P["V1"] + (p[0] - P["mean"][0]) ** 2 + (p[1] - P["mean"][1]) ** 2
            worst = max(worst, abs(lhs - rhs))
        return worst <= 1e-12, f"max deviation {worst:.3e} over 100 points", worst

    def two_means():
        pts, err = analytic.optimal_2(D)[0]
        return _close(err, P["V2"], 1e-6)

    def two_means_orbit():
        errs = [e for _, e in analytic.optimal_2(D)]
        spread = max(errs) - min(errs)
        return spread <= 1e-10, f"errors of the three rotated optima {errs}", errs

    def two_means_rejected():
        return _close(partition(D, analytic.rejected_two_means()).total_error, P["V2_rejected"], 1e-12)

    def golden_ratio():
        pts, _ = analytic.optimal_2(D)[0]
        part = partition(D, pts)
        ratio = part.areas[1] / part.areas[0]
        return _close(ratio, P["golden"], 1e-8)

    def two_means_roots():
        roots = [(0.5, 1.0), (1.0, 0.5), (1.0, 1.0), (analytic.INV_GOLDEN,) * 2, (-analytic.GOLDEN,) * 2]
        worst = max(max(map(abs, analytic.two_means_residuals(a, b))) for a, b in roots)
        return worst <= 1e-12, f"max residual over the five solution pairs {worst:.3e}", worst

    def three_means():
        return _close(analytic.optimal_3(D)[1], P["V3"], 1e-12)

    def three_means_cells():
        part = partition(D, analytic.optimal_3(D)[0])
        worst = max(abs(e - P["V3_cell"]) for e in part.cell_errors)
        return worst <= 1e-12, f"cell errors {list(part.cell_errors)}", list(part.cell_errors)

    def three_means_roots():
        r = analytic.three_means_residuals(*P["three_means_params"])
        worst = max(map(abs, r))
        return worst <= 1e-12, f"residuals {r}", list(r)

    def three_means_shape():
        pts = analytic.optimal_3(D)[0]
        sides = [math.dist(pts[i], pts[(i + 1) % 3]) for i in range(3)]
        level = abs(pts[0][1] - pts[1][1])
        ok = max(sides) - min(sides) <= 1e-12 and level <= 1e-12
        return ok, f"side lengths {sides}", sides

    def four_means_params():
        params = analytic.solve_four_means()
        x = params.as_array()
        ref = np.array(P["four_means_params"])
        rel = float(np.max(np.abs(x - ref) / np.abs(ref)))
        return rel <= 1e-12, f"grid-scan root {x.tolist()}, max relative error {rel:.3e}", x.tolist()

    def four_means_points():
        pts = analytic.four_means_configuration(analytic.solve_four_means())
        diff = float(np.max(np.abs(pts - np.array(P["four_means_points"]))))
        return diff <= 1e-10, f"max coordinate deviation {diff:.3e}", pts.tolist()

    def four_means_residuals():
        r = analytic.four_means_residuals(analytic.FourMeansParams(*P["four_means_params"]))
        worst = max(map(abs, r))
        return worst <= 1e-12, f"residuals at the tabulated parameters {r}", list(r)

    def four_means_error():
        pts, v4 = analytic.optimal_4(D, x0=P["four_means_params"])
        ok = v4 < P["V3"]
        return ok, f"V4 = {v4!r} (must be below V3 = {P['V3']!r})", v4

    def centroidal():
        worst = max(optimality_residual(D, analytic.known_optimum(D, n)[0]) for n in (1, 2, 3, 4))
        return worst < 1e-8, f"max distance point-to-centroid {worst:.3e}", worst

    def monotone():
        vals = [analytic.known_optimum(D, n)[1] for n in (1, 2, 3, 4)]
        return all(a > b for a, b in zip(vals, vals[1:])), f"V1..V4 = {vals}", vals

    def lattice_consistency():
        worst = 0.0
        for N in range(3, 7):
            params = lattice.LatticeParams.optimal(N)
            voronoi = partition(D, lattice.build_lattice_config(params)).total_error
            worst = max(worst, abs(voronoi - lattice.vn_of_lattice(params)))
            worst = max(worst, abs(lattice.bound(N) - lattice.vn_of_lattice(params)))
        return worst <= 1e-10, f"max deviation over N = 3..6 {worst:.3e}", worst

    def lattice_n3():
        return _close(lattice.bound(3), P["lattice_bound_N3"], 1e-7)

    def asymptotic():
        worst = max(
            abs(lattice.general_domain_constant(SQRT3 / 4, n) - P["asymptotic_constant"] / n) for n in (1, 6, 72, 1000)
        )
        return worst <= 1e-15, f"general-domain constant vs 5/(72n), max |diff| {worst:.3e}", worst

    for name, fn in [
        ("one-mean error 1/12", one_mean),
        ("mean (1/2, sqrt3/6)", mean),
        ("second marginal moments 7/24, 1/8", marginals),
        ("parallel-axis identity", parallel_axis),
        ("two-means error 0.0532767", two_means),
        ("two-means symmetric orbit", two_means_orbit),
        ("rejected two-means error 1/18", two_means_rejected),
        ("two-means golden area ratio", golden_ratio),
        ("two-means polynomial roots", two_means_roots),
        ("three-means error 11/432", three_means),
        ("three-means cell errors 11/1296", three_means_cells),
        ("three-means polynomial roots", three_means_roots),
        ("three-means equilateral shape", three_means_shape),
        ("four-means parameters from grid scan", four_means_params),
        ("four-means points", four_means_points),
        ("four-means residuals", four_means_residuals),
        ("four-means error below V3", four_means_error),
        ("optima are centroidal", centroidal),
        ("V1 > V2 > V3 > V4", monotone),
        ("lattice error matches closed form, N = 3..6", lattice_consistency),
        ("lattice bound at N = 3", lattice_n3),
        ("asymptotic constant identity", asymptotic),
    ]:
        checks.append(_check(name, fn))
    return checks
