# # Four points: solving the centroid equations
#
# With four points the optimum has one point on the vertical median at the
# apex end, one below it, and a mirrored pair.  Four parameters fix the
# layout; requiring each point to be the centroid of its cell gives four
# equations.  We find the root from a coarse grid scan with damped Newton,
# without feeding in any known answer.

# %%

import time

import numpy as np

from triquant import analytic, partition
from triquant.moments import Domain
from triquant.voronoi import optimality_residual

tri = Domain.triangle()

t0 = time.perf_counter()
candidates = analytic.grid_scan_four_means(21)
print(f"{len(candidates)} admissible grid points; best start {candidates[0].round(3)}")
params = analytic.solve_four_means()
print(f"root found in {time.perf_counter() - t0:.2f} s:", params.as_array())
print("residuals", analytic.four_means_residuals(params))

# %%

pts = analytic.four_means_configuration(params)
part = partition(tri, pts)
print("points\n", pts)
print("error", part.total_error, " (three points:", 11 / 432, ")")
print("distance from each point to its cell centroid", optimality_residual(tri, pts, part))
print("agreement with the tabulated coordinates",
      np.abs(pts - np.array(analytic.FOUR_MEANS_POINTS_TABULATED)).max())
