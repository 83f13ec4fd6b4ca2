# # Row structure, symmetry and independent error checks
#
# Good configurations tend to arrange themselves in rows parallel to one
# side.  The predicted row counts for n points use N = floor(sqrt(2n))
# rows; we compare them with what a search produces.

# %%

import numpy as np

from triquant import multistart, structure
from triquant.moments import Domain
from triquant.oracle import grid_quantization_error, mc_quantization_error
from triquant.search import SearchSchedule
from triquant.voronoi import quantization_error

tri = Domain.triangle()
quick = SearchSchedule(stall_threshold=80, min_amplitude=1e-5)

for n in (5, 6, 7, 10):
    best = multistart(tri, n, quick, starts=2)
    rows = structure.row_decomposition(tri, best.config)
    axes = [ax.vertex for ax in structure.symmetry_axes(tri, best.config)]
    print(f"n={n:2d} rows {rows.counts} predicted {rows.predicted} symmetric about medians {axes}")

# %% [markdown]
# The exact error comes from clipping Voronoi cells and integrating over
# polygons.  Two brute-force estimators that never build a cell serve as
# cross-checks: Monte Carlo sampling and a fine midpoint grid.

# %%

pts = np.random.default_rng(1).uniform([0.3, 0.1], [0.7, 0.4], size=(7, 2))
exact = quantization_error(tri, pts)
mc = mc_quantization_error(tri, pts, samples=1_000_000, seed=5)
print("exact", exact)
print(f"Monte Carlo {mc.value:.8f} +- {mc.std_error:.1e} ({(mc.value - exact) / mc.std_error:+.2f} sigma)")
for r in (100, 500, 2000):
    print(f"grid {r:4d}: {grid_quantization_error(tri, pts, r) - exact:+.2e}")
