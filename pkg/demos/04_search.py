# # Searching for good configurations
#
# For larger n there is no closed form.  The random-shift search moves one
# point at a time, keeps strict improvements only, and shrinks the step
# after a run of failures; Lloyd iteration then makes the result
# centroidal.  A quick schedule is used here; the defaults are slower and
# more thorough.

# %%

from triquant import lattice, multistart
from triquant.analytic import known_optimum
from triquant.moments import Domain
from triquant.search import SearchSchedule, random_shift_search

tri = Domain.triangle()
quick = SearchSchedule(stall_threshold=80, min_amplitude=1e-5)

res = random_shift_search(tri, 6, quick, record_trace=True)
print("accepted moves:", len(res.trace) - 1, "of", res.proposals_used, "proposals")
for step, err in res.trace[:: max(1, len(res.trace) // 6)]:
    print(f"  proposal {step:6d}  error {err:.6f}")
print("after Lloyd polish:", res.error, "residual", res.residual)

# %%

for n in (2, 3, 4):
    best = multistart(tri, n, quick, starts=3)
    print(f"n={n}: search {best.error:.10f}  known {known_optimum(tri, n)[1]:.10f}")

# %%

for n, N in ((6, 3), (10, 4)):
    best = multistart(tri, n, quick, starts=2)
    print(f"n={n}: search {best.error:.7f}  lattice bound {lattice.bound(N):.7f}")
