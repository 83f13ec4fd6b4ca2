# # Optimal quantizers with one, two and three points
#
# The domain is the unit equilateral triangle with vertices (0, 0), (1, 0)
# and (1/2, sqrt(3)/2), carrying the uniform distribution.  For a set of
# points the quantization error is the mean squared distance from a random
# point of the triangle to its nearest set member.

# %%

import math

from triquant import analytic, partition
from triquant.moments import Domain, cell_error

tri = Domain.triangle()

# %% [markdown]
# One point: the best choice is the centroid, and the error is the variance
# 1/12.  Any other point p pays an extra |p - centroid|^2.

# %%

pts, v1 = analytic.optimal_1(tri)
print("1 point :", pts[0], "error", v1)
p = (0.2, 0.1)
print("error about", p, "=", cell_error(tri, tri.boundary, p),
      "= 1/12 +", (p[0] - 0.5) ** 2 + (p[1] - math.sqrt(3) / 6) ** 2)

# %% [markdown]
# Two points sit on a median and cut the triangle into a small triangle
# and a trapezoid whose areas are in the golden ratio.

# %%

pts, v2 = analytic.optimal_2(tri)[0]
part = partition(tri, pts)
print("2 points:", pts.round(6).tolist(), "error", round(v2, 7))
print("area ratio", part.areas[1] / part.areas[0], "golden ratio", (1 + math.sqrt(5)) / 2)

# The symmetric split along the other median is centroidal but worse:
print("rejected pair error", partition(tri, analytic.rejected_two_means()).total_error, "= 1/18")

# %% [markdown]
# Three points form an equilateral triangle; each Voronoi cell is a kite
# with error 11/1296, so the total is 11/432.

# %%

pts, v3 = analytic.optimal_3(tri)
print("3 points:", pts.round(6).tolist())
print("cell errors", partition(tri, pts).cell_errors, "total", v3, "11/432 =", 11 / 432)
