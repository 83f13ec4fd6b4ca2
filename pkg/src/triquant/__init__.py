"""Optimal quantizers for the uniform distribution on convex polygons,
chiefly the equilateral triangle."""

__version__ = "0.1.0"

from .geometry import ConvexPolygon, HalfPlane, Point, area, centroid, clip, dist_sq, triangulate
from .moments import Domain, cell_error, domain_mean, domain_variance, second_moment_about
from .voronoi import Partition, optimality_residual, partition, quantization_error
from .search import SearchResult, SearchSchedule, lloyd_run, lloyd_step, multistart, random_shift_search
from .lattice import LatticeParams, a_opt, bound, build_lattice_config, vn_of_lattice

__all__ = [
    "ConvexPolygon", "HalfPlane", "Point", "area", "centroid", "clip", "dist_sq", "triangulate",
    "Domain", "cell_error", "domain_mean", "domain_variance", "second_moment_about",
    "Partition", "optimality_residual", "partition", "quantization_error",
    "SearchResult", "SearchSchedule", "lloyd_run", "lloyd_step", "multistart", "random_shift_search",
    "LatticeParams", "a_opt", "bound", "build_lattice_config", "vn_of_lattice",
]
