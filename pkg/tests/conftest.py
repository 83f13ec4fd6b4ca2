import math

import pytest
from scipy.spatial import ConvexHull

from triquant.geometry import ConvexPolygon
from triquant.moments import Domain

SQRT3 = math.sqrt(3.0)

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def tri():
    return Domain.triangle()


@pytest.fixture(scope="session")
def square():
    return Domain.square()


def random_convex_polygon(rng, k=12, spread=1.0):
    """Hull of a random point cloud, built with scipy as an independent check."""
    pts = rng.uniform(-spread, spread, size=(k, 2))
    hull = ConvexHull(pts)
    return ConvexPolygon(pts[hull.vertices])


def random_points_in(domain, n, rng):
    from triquant.oracle import sample_uniform

    return sample_uniform(domain, n, rng)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
