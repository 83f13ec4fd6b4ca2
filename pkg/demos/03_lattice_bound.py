# # Triangular lattices and an upper bound
#
# When n = N(N+1)/2 is a triangular number the points can sit on a
# triangular lattice with N rows.  Keeping every boundary point a distance
# a from the nearest side, the Voronoi cells split into small right
# triangles and rectangles, and the error has a closed form in a.

# %%

from triquant import lattice, partition
from triquant.moments import Domain

tri = Domain.triangle()

for N in range(3, 8):
    p = lattice.LatticeParams.optimal(N)
    voronoi = partition(tri, lattice.build_lattice_config(p)).total_error
    a_best, v_best = lattice.a_scan_minimum(N)
    print(f"N={N} n={p.n:2d}  a_opt={p.a:.5f}  closed form {lattice.vn_of_lattice(p):.10f}"
          f"  Voronoi {voronoi:.10f}  best a {a_best:.5f} -> {v_best:.10f}")

# %% [markdown]
# Substituting a_opt = sqrt(7)/(6N) gives the bound as a rational function
# of N.  Its expansion starts 5/(36 N^2), i.e. 5/(72 n): the same constant
# a hexagonal tiling gives for any domain of area sqrt(3)/4.

# %%

for N in (3, 10, 30, 100):
    n = N * (N + 1) // 2
    b = lattice.bound(N)
    print(f"N={N:3d}  bound {b:.3e}  n*bound {n * b:.6f}  "
          f"N^4 * (bound - two-term expansion) {N**4 * (b - lattice.bound_expansion(N)):.4f}")
print("5/72 =", 5 / 72)
