"""Triangular-lattice configurations and the error bound they give.

For a triangular number n = N(N+1)/2 the points are placed on a triangular
lattice of spacing d aligned with the domain, with every boundary point at
distance a from the nearest side, so that L = (N-1) d + 2 sqrt(3) a.  The
Voronoi cells then split into 30-60-90 triangles, rectangles and corner
kites, which gives the error in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SQRT3 = math.sqrt(3.0)
SQRT7 = math.sqrt(7.0)
SQRT21 = math.sqrt(21.0)

ASYMPTOTIC_CONSTANT = 5.0 / 72.0


@dataclass(frozen=True)
class LatticeParams:
    N: int
    a: float
    L: float = 1.0

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("a lattice needs at least two rows")
        if not (self.a > 0 and self.L > 0):
            raise ValueError("margin and side length must be positive")
        if not self.d > 0:
            raise ValueError(f"margin a = {self.a} leaves no room for the lattice")

    @classmethod
    def optimal(cls, N: int, L: float = 1.0) -> "LatticeParams":
        return cls(N, a_opt(N, L), L)

    @property
    def d(self) -> float:
        return (self.L - 2.0 * SQRT3 * self.a) / (self.N - 1)

    @property
    def n(self) -> int:
        return self.N * (self.N + 1) // 2

    @property
    def area(self) -> float:
        return self.L**2 * SQRT3 / 4.0


def triangle_kernel_pi6(r: float, L: float = 1.0) -> float:
    """Error of the right triangle with leg r and angle pi/6 at the point."""
    return 10.0 * r**4 / (27.0 * L**2)


def triangle_kernel_pi3(r: float, L: float = 1.0) -> float:
    """Error of the right triangle with leg r and angle pi/3 at the point."""
    return 2.0 * r**4 / L**2


def rectangle_kernel(l: float, w: float, L: float = 1.0) -> float:
    """Error of an l x w rectangle with the point at one corner."""
    return 4.0 * l * w * (l**2 + w**2) / (3.0 * SQRT3 * L**2)


def kernel_moments(kind: str, *args: float, L: float = 1.0) -> float:
    kernels = {"pi6": triangle_kernel_pi6, "pi3": triangle_kernel_pi3, "rect": rectangle_kernel}
    return kernels[kind](*args, L=L)


def point_type_errors(params: LatticeParams) -> tuple[float, float, float]:
    """Per-point errors ``(centre, edge, corner)``."""
    h = params.d / 2.0
    a, L = params.a, params.L
    v6 = triangle_kernel_pi6(h, L)
    rect = rectangle_kernel(h, a, L)
    centre = 12.0 * v6
    edge = 6.0 * v6 + 2.0 * rect
    corner = 2.0 * v6 + 2.0 * rect + 2.0 * triangle_kernel_pi3(a, L)
    return centre, edge, corner


def point_type_counts(N: int) -> tuple[int, int, int]:
    return (N - 3) * (N - 2) // 2 if N >= 3 else 0, 3 * (N - 2), 3


def vn_from_kernels(params: LatticeParams) -> float:
    centre, edge, corner = point_type_errors(params)
    n_centre, n_edge, n_corner = point_type_counts(params.N)
    return n_centre * centre + n_edge * edge + n_corner * corner


def lattice_second_moment(params: LatticeParams) -> float:
    """Total area integral of the squared distance to the nearest lattice point.

    This is the quartic in ``a`` over ``144 (N-1)^2``; dividing by the domain
    area gives the quantization error.
    """
    a, N, L = params.a, params.N, params.L
    num = (144 * SQRT3 * a**4 * N * (N - 2)
           + 144 * a**3 * N * (N - 2) * L
           + 144 * SQRT3 * a**2 * L**2
           - 84 * a * L**3
           + 5 * SQRT3 * L**4)
    return num / (144.0 * (N - 1) ** 2)


def vn_of_lattice(params: LatticeParams) -> float:
    """Quantization error of the lattice configuration."""
    return lattice_second_moment(params) / params.area


def a_opt(N: int, L: float = 1.0) -> float:
    """Leading-order optimal margin ``sqrt(7) L / (6 N)``."""
    if N < 2:
        raise ValueError("N must be at least 2")
    return SQRT7 * L / (6.0 * N)


def bound(N: int) -> float:
    """Upper bound on V_n for n = N(N+1)/2 on the unit triangle, N >= 3."""
    if N < 3:
        raise ValueError("the lattice bound is stated for N >= 3")
    num = 45 * N**3 - 28 * SQRT21 * N**2 + (301 - 28 * SQRT21) * N - 98
    return num / (324.0 * N**3 * (N - 1) ** 2)


def bound_expansion(N: int) -> float:
    """First two terms of the large-N expansion of :func:`bound`."""
    return 5.0 / (36.0 * N**2) - (14.0 * SQRT21 - 45.0) / (162.0 * N**3)


def asymptotic_bound(n: int) -> float:
    """Leading term 5/(72 n) of the bound for general n."""
    if n < 1:
        raise ValueError("n must be positive")
    return ASYMPTOTIC_CONSTANT / n


def general_domain_constant(area: float, n: int) -> float:
    """Conjectured asymptotic error 5 sqrt(3) A / (54 n) for a domain of area A."""
    return 5.0 * SQRT3 * area / (54.0 * n)


def a_scan_minimum(N: int, L: float = 1.0) -> tuple[float, float]:
    """Margin minimizing :func:`vn_of_lattice` and the minimum value."""
    from scipy.optimize import minimize_scalar

    hi = L / (2.0 * SQRT3)
    res = minimize_scalar(
        lambda a: vn_of_lattice(LatticeParams(N, a, L)),
        bounds=(hi * 1e-9, hi * (1 - 1e-9)),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return float(res.x), float(res.fun)


def build_lattice_config(params: LatticeParams) -> np.ndarray:
    """Lattice points ordered row by row from the apex down.

    Row k (counted from the apex, k = 1..N) holds k points.
    """
    N, a, d = params.N, params.a, params.d
    pts = []
    for k in range(1, N + 1):
        level = N - k  # rows above the bottom one
        y = a + level * d * SQRT3 / 2.0
        x0 = SQRT3 * a + level * d / 2.0
        pts.extend((x0 + j * d, y) for j in range(k))
    return np.array(pts)


def classify_lattice_points(N: int) -> list[str]:
    """Label each point of :func:`build_lattice_config` as corner, edge or centre."""
    labels = []
    for k in range(1, N + 1):
        for j in range(k):
            on_left = j == 0
            on_right = j == k - 1
            on_bottom = k == N
            hits = on_left + on_right + on_bottom
            if k == 1 or (on_bottom and (on_left or on_right)):
                labels.append("corner")
            elif hits:
                labels.append("edge")
            else:
                labels.append("centre")
    return labels


def triangular_root(n: int) -> int | None:
    """N with N(N+1)/2 == n, or None."""
    N = int((math.isqrt(8 * n + 1) - 1) // 2)
    return N if N * (N + 1) // 2 == n else None
