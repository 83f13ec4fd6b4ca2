"""Exact optimal quantizers for n <= 4 on the unit equilateral triangle.

The n = 2 and n = 3 conditions are kept as the literal polynomial pairs in
the two shape parameters; n = 4 is a four-parameter system built from the
areas of the triangles that make up each Voronoi cell, solved numerically.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .geometry import rotate_about
from .moments import Domain, domain_mean, domain_variance
from .voronoi import optimality_residual, partition

SQRT3 = math.sqrt(3.0)
SQRT5 = math.sqrt(5.0)
GOLDEN = (SQRT5 + 1.0) / 2.0
INV_GOLDEN = (SQRT5 - 1.0) / 2.0

# Reference values quoted to 7 significant digits in the literature.
V2_TABULATED = 0.0532767
V2_REJECTED = 1.0 / 18.0
V3 = 11.0 / 432.0
V3_CELL = 11.0 / 1296.0

# n = 4 parameters (alpha, beta, gamma, delta) to 20 decimal places, and the
# resulting points.
FOUR_MEANS_TABULATED = (
    0.49729450782679201845,
    0.57487645285849021867,
    0.34568004381771961464,
    0.38346841237225538981,
)
FOUR_MEANS_POINTS_TABULATED = (
    (0.5, 0.5436907490155839431),
    (0.5, 0.1926448341274137497),
    (0.2302330149367283460, 0.1649562245075873150),
    (0.769766985063271654, 0.1649562245075873150),
)


class UnsupportedDomainError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


class InadmissibleParametersError(ValueError):
    pass


def _require_unit_triangle(domain: Domain):
    if not domain.is_unit_triangle:
        raise UnsupportedDomainError(
            "closed-form optima are only available for the triangle (0,0), (1,0), (1/2, sqrt(3)/2)"
        )


def _rotations(points: np.ndarray) -> list[np.ndarray]:
    """The configuration and its images under rotation by +-120 degrees."""
    c = (0.5, SQRT3 / 6.0)
    out = [points]
    for k in (1, 2):
        out.append(np.array([rotate_about(p, c, 2.0 * math.pi * k / 3.0) for p in points]))
    return out


# ---------------------------------------------------------------- n = 1

def optimal_1(domain: Domain) -> tuple[np.ndarray, float]:
    return np.array([domain_mean(domain)]), domain_variance(domain)


# ---------------------------------------------------------------- n = 2

def two_means_residuals(alpha: float, beta: float) -> tuple[float, float]:
    a, b = alpha, beta
    r1 = (4 * a**3 * b + a**2 * b**2 - 6 * a**2 * b - 5 * a**2 - 2 * a * b**3
          + 3 * a * b**2 - 2 * a * b + 9 * a + b**2 - 3)
    r2 = (4 * a * b**3 + a**2 * b**2 - 6 * a * b**2 - 5 * b**2 - 2 * a**3 * b
          + 3 * a**2 * b - 2 * a * b + 9 * b + a**2 - 3)
    return r1, r2


def two_means_configuration(alpha: float, beta: float) -> np.ndarray:
    """Centroids of triangle OCD and quadrilateral CABD where the cut runs
    from C = alpha*A on OA to D = beta*B on OB."""
    A = np.array([1.0, 0.0])
    B = np.array([0.5, SQRT3 / 2.0])
    ab = alpha * beta
    p = (alpha * A + beta * B) / 3.0
    q = (A + B - ab * (alpha * A + beta * B)) / (3.0 * (1.0 - ab))
    return np.array([p, q])


@dataclass(frozen=True)
class TwoMeansSolution:
    alpha: float
    beta: float
    points: np.ndarray
    error: float

    @property
    def cell_area_ratio(self) -> float:
        """Area of the far cell divided by area of the cell at the vertex."""
        near = math.sqrt(3.0) / 4.0 * self.alpha * self.beta
        return (math.sqrt(3.0) / 4.0 - near) / near


def two_means_solution(alpha: float, beta: float) -> TwoMeansSolution:
    pts = two_means_configuration(alpha, beta)
    err = partition(Domain.triangle(), pts).total_error
    return TwoMeansSolution(alpha, beta, pts, err)


def optimal_2(domain: Domain) -> list[tuple[np.ndarray, float]]:
    """The three optimal pairs, canonical one (median through the origin) first."""
    _require_unit_triangle(domain)
    canonical = two_means_configuration(INV_GOLDEN, INV_GOLDEN)
    return [(pts, partition(domain, pts).total_error) for pts in _rotations(canonical)]


def rejected_two_means() -> np.ndarray:
    """The admissible stationary pair split by the median through (1/2, sqrt(3)/2)."""
    return two_means_configuration(0.5, 1.0)


# ---------------------------------------------------------------- n = 3

def three_means_residuals(alpha: float, beta: float) -> tuple[float, float]:
    a, b = alpha, beta
    r1 = (5 * a**4 * b**2 + 6 * a**3 * b + a**2 * (6 * b**2 - 28 * b - 15)
          - 6 * a * (b**3 - 2 * b**2 + 2 * b - 7) + 3 * b**2 - 13)
    r2 = (-(a**4) * b**2 - 6 * a**3 * b + a**2 * (6 * b**2 + 14 * b + 3)
          + 12 * a * b * (b**2 - 2 * b - 1) - 15 * b**2 + 36 * b - 13)
    return r1, r2


def three_means_configuration(alpha: float, beta: float) -> np.ndarray:
    """Centroids of ONMC, NADM and BCMD; |BC| = |BD| = alpha, |BM| = beta*sqrt(3)/2."""
    A = np.array([1.0, 0.0])
    B = np.array([0.5, SQRT3 / 2.0])
    N = np.array([0.5, 0.0])
    C = (1 - alpha) * B
    D = alpha * A + (1 - alpha) * B
    M = beta * N + (1 - beta) * B
    ab = alpha * beta
    p = (B + N - (B + C + M) * ab) / (3 * (1 - ab))
    q = (A + B + N - (B + D + M) * ab) / (3 * (1 - ab))
    r = (C + D + 2 * (B + M)) / 6
    return np.array([p, q, r])


def optimal_3(domain: Domain) -> tuple[np.ndarray, float]:
    _require_unit_triangle(domain)
    pts = np.array([
        (7 / 24, 7 / (24 * SQRT3)),
        (17 / 24, 7 / (24 * SQRT3)),
        (0.5, 11 / (12 * SQRT3)),
    ])
    return pts, partition(domain, pts).total_error


# ---------------------------------------------------------------- n = 4

@dataclass(frozen=True)
class FourMeansParams:
    """|BC| = |BG| = alpha, |BM| = beta*sqrt(3)/2, x(D) = gamma, |ON1| = delta."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.beta, self.gamma, self.delta])


def _four_means_parts(alpha, beta, gamma, delta):
    """Vertices, the nine triangle areas and the four cell centroids.

    Works elementwise on numpy arrays so the grid scan can be vectorized.
    """
    s3 = SQRT3
    one = np.ones_like(alpha)
    zero = np.zeros_like(alpha)
    A = (one, zero)
    B = (0.5 * one, s3 / 2 * one)
    C = ((1 - alpha) * B[0], (1 - alpha) * B[1])
    D = (gamma, s3 / 2 * (1 - beta))
    F = (1 - gamma, s3 / 2 * (1 - beta))
    G = (alpha * A[0] + (1 - alpha) * B[0], alpha * A[1] + (1 - alpha) * B[1])
    N1 = (delta, zero)
    N2 = (1 - delta, zero)

    ar1 = (s3 / 8 * (alpha + 2 * gamma - 1) * (beta + 2 * gamma - 1)
           - s3 / 4 * beta * gamma
           - s3 * beta * gamma / (2 * (1 - 2 * gamma))
           + s3 * beta / (4 * (1 - 2 * gamma))
           - s3 * beta / 8
           - s3 / 2 * gamma**2
           + s3 * gamma / 2
           - s3 / 8)
    ar2 = s3 / 4 * beta * (1 - 2 * gamma)
    ar3 = ar1
    ar4 = (s3 * (alpha - 1) ** 2 * (beta + 2 * gamma - 1) / (16 * gamma)
           - s3 * (alpha - 1) * (alpha + 2 * gamma - 1) * (beta + 2 * gamma - 1) / (16 * gamma))
    ar5 = s3 * (1 - beta) * delta / 4
    ar6 = s3 / 4 * (1 - beta) * (1 - 2 * delta)
    ar7 = s3 / 4 * (1 - beta) * (1 - 2 * gamma)
    ar8 = ar5
    ar9 = ar4
    areas = (ar1, ar2, ar3, ar4, ar5, ar6, ar7, ar8, ar9)

    def comb(terms, total):
        x = sum(w * (u[0] + v[0] + t[0]) for w, u, v, t in terms) / (3 * total)
        y = sum(w * (u[1] + v[1] + t[1]) for w, u, v, t in terms) / (3 * total)
        return x, y

    O = (zero, zero)
    P = comb([(ar1, B, C, D), (ar2, B, D, F), (ar3, B, F, G)], ar1 + ar2 + ar3)
    Q = comb([(ar7, D, F, N2), (ar6, D, N1, N2)], ar6 + ar7)
    R = comb([(ar4, O, C, D), (ar5, O, D, N1)], ar4 + ar5)
    S = comb([(ar9, A, F, G), (ar8, A, F, N2)], ar8 + ar9)
    verts = dict(A=A, B=B, C=C, D=D, F=F, G=G, N1=N1, N2=N2)
    return verts, areas, (P, Q, R, S)


def _rho(u, v):
    return (u[0] - v[0]) ** 2 + (u[1] - v[1]) ** 2


def _four_means_admissible(alpha, beta, gamma, delta, areas):
    ok = (alpha > 0) & (alpha < 1) & (beta > 0) & (beta < 1)
    ok &= (gamma > (1 - alpha) / 2) & (gamma < 0.5) & (delta > 0) & (delta < 0.5)
    for ar in areas:
        ok &= ar > 0
    return ok


def _four_means_system(x):
    alpha, beta, gamma, delta = x
    verts, areas, (P, Q, R, S) = _four_means_parts(alpha, beta, gamma, delta)
    C, D, N1 = verts["C"], verts["D"], verts["N1"]
    res = (
        _rho(P, C) - _rho(C, R),
        _rho(P, D) - _rho(D, R),
        _rho(Q, D) - _rho(D, R),
        _rho(Q, N1) - _rho(N1, R),
    )
    return res, areas


def four_means_residuals(params: FourMeansParams) -> tuple[float, float, float, float]:
    """Equal-distance conditions at C, D and N1; all vanish at the optimum."""
    x = tuple(float(v) for v in params.as_array())
    with np.errstate(divide="ignore", invalid="ignore"):
        res, areas = _four_means_system(np.array(x))
    if not bool(_four_means_admissible(*x, areas)):
        raise InadmissibleParametersError(f"parameters {x} give a degenerate cell layout")
    return tuple(float(r) for r in res)


def four_means_configuration(params: FourMeansParams) -> np.ndarray:
    """Points P, Q (on the median x = 1/2), R and its mirror image S."""
    _, _, (P, Q, R, S) = _four_means_parts(*(np.float64(v) for v in params.as_array()))
    rx, ry = float(R[0]), float(R[1])
    return np.array([(0.5, float(P[1])), (0.5, float(Q[1])), (rx, ry), (1.0 - rx, ry)])


def four_means_vertices(params: FourMeansParams) -> dict[str, tuple[float, float]]:
    verts, _, _ = _four_means_parts(*(np.float64(v) for v in params.as_array()))
    return {k: (float(v[0]), float(v[1])) for k, v in verts.items()}


def damped_newton(
    fun,
    x0,
    *,
    xtol: float = 1e-14,
    ftol: float = 1e-12,
    max_iter: int = 200,
    fd_step: float = 1e-7,
):
    """Newton iteration with a central-difference Jacobian and backtracking.

    ``fun`` maps an array to a residual array, or raises ``ValueError`` when
    the argument leaves its domain (treated as an infinite residual).
    Returns ``(x, iterations)``.
    """
    x = np.array(x0, dtype=float)

    def norm_at(z):
        try:
            r = np.asarray(fun(z), dtype=float)
        except ValueError:
            return None, math.inf
        if not np.all(np.isfinite(r)):
            return None, math.inf
        return r, float(np.linalg.norm(r))

    r, fnorm = norm_at(x)
    if r is None:
        raise ConvergenceError(f"initial point {x} is outside the residual's domain")
    for it in range(1, max_iter + 1):
        if fnorm <= ftol * 1e-4:
            return x, it - 1
        jac = np.empty((len(r), len(x)))
        for k in range(len(x)):
            h = fd_step * max(1.0, abs(x[k]))
            e = np.zeros_like(x)
            e[k] = h
            rp, _ = norm_at(x + e)
            rm, _ = norm_at(x - e)
            if rp is None or rm is None:
                raise ConvergenceError("Jacobian stencil left the residual's domain")
            jac[:, k] = (rp - rm) / (2 * h)
        try:
            step = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError("singular Jacobian") from exc
        t = 1.0
        while True:
            r_new, f_new = norm_at(x + t * step)
            if f_new < fnorm or (f_new <= fnorm and t * np.linalg.norm(step) <= xtol):
                break
            t *= 0.5
            if t < 1e-10:
                if fnorm <= ftol:
                    return x, it
                raise ConvergenceError(f"line search failed at {x}, |F| = {fnorm:.3e}")
        x = x + t * step
        r, fnorm = r_new, f_new
        if fnorm <= ftol and t * np.linalg.norm(step) <= xtol * max(1.0, np.linalg.norm(x)):
            return x, it
    if fnorm <= ftol:
        return x, max_iter
    raise ConvergenceError(f"no convergence after {max_iter} iterations (|F| = {fnorm:.3e})")


def _four_means_fun(x):
    return four_means_residuals(FourMeansParams(*x))


def grid_scan_four_means(points_per_axis: int = 21) -> list[np.ndarray]:
    """Admissible lattice points of (0,1)^4 sorted by residual norm.

    Ties keep lexicographic scan order, so the result is deterministic.
    """
    g = np.linspace(0.0, 1.0, points_per_axis)
    alpha, beta, gamma, delta = (m.ravel() for m in np.meshgrid(g, g, g, g, indexing="ij"))
    with np.errstate(divide="ignore", invalid="ignore"):
        res, areas = _four_means_system((alpha, beta, gamma, delta))
        ok = _four_means_admissible(alpha, beta, gamma, delta, areas)
        norm = np.sqrt(sum(r**2 for r in res))
    ok &= np.isfinite(norm)
    idx = np.flatnonzero(ok)
    idx = idx[np.argsort(norm[idx], kind="stable")]
    return [np.array([alpha[i], beta[i], gamma[i], delta[i]]) for i in idx]


def solve_four_means(x0=None, *, grid: int = 21, max_candidates: int = 50) -> FourMeansParams:
    """Root of the n = 4 system.

    With ``x0`` given, Newton starts there.  Otherwise the admissible grid
    points are tried in order of residual norm; the first root whose points
    are centroidal for their actual Voronoi partition is returned.
    """
    if x0 is not None:
        x, _ = damped_newton(_four_means_fun, x0)
        return FourMeansParams(*map(float, x))
    domain = Domain.triangle()
    for start in itertools.islice(grid_scan_four_means(grid), max_candidates):
        try:
            x, _ = damped_newton(_four_means_fun, start)
        except ConvergenceError:
            continue
        params = FourMeansParams(*map(float, x))
        pts = four_means_configuration(params)
        try:
            if optimality_residual(domain, pts) < 1e-8:
                return params
        except ValueError:
            continue
    raise ConvergenceError("grid scan found no admissible root")


def optimal_4(domain: Domain, x0=None) -> tuple[np.ndarray, float]:
    """Solved four-point configuration (P, Q, R, S) and its error.

    Optimality rests on the symmetric ansatz and numerical search, not on a
    proof; the two rotated copies are also optimal.
    """
    _require_unit_triangle(domain)
    params = solve_four_means(x0)
    pts = four_means_configuration(params)
    return pts, partition(domain, pts).total_error


def optimal_4_all(domain: Domain) -> list[tuple[np.ndarray, float]]:
    pts, _ = optimal_4(domain, x0=FOUR_MEANS_TABULATED)
    return [(p, partition(domain, p).total_error) for p in _rotations(pts)]


def solve_pair(residuals, x0) -> tuple[float, float]:
    """Root of a two-parameter residual pair (the n = 2, 3 systems)."""
    x, _ = damped_newton(lambda z: residuals(*z), x0)
    return float(x[0]), float(x[1])


def known_optimum(domain: Domain, n: int) -> tuple[np.ndarray, float]:
    """Best known configuration for n <= 4 on the unit triangle."""
    if n == 1:
        return optimal_1(domain)
    if n == 2:
        return optimal_2(domain)[0]
    if n == 3:
        return optimal_3(domain)
    if n == 4:
        return optimal_4(domain, x0=FOUR_MEANS_TABULATED)
    raise ValueError("closed forms exist only for n <= 4")
