"""Numerical search for good n-point quantizers.

Two optimizers are provided.  Lloyd iteration moves every point to the
centroid of its cell and never increases the error.  The random-shift
search moves one point at a time by a random vector, keeps the move only
if the error strictly drops, and shrinks the shift radius whenever a run of
proposals brings no improvement.  Its result is always polished with Lloyd.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import _clip_verts, project_onto
from .lattice import LatticeParams, build_lattice_config, triangular_root
from .moments import Domain, region_moments
from .oracle import sample_uniform
from .voronoi import as_configuration, optimality_residual, partition, voronoi_cell


class EmptyCellError(RuntimeError):
    """A Lloyd step hit a configuration with an empty Voronoi cell."""


@dataclass(frozen=True)
class SearchSchedule:
    initial_amplitude: float = 0.25
    decay: float = 0.9
    stall_threshold: int = 200
    min_amplitude: float = 1e-7
    max_proposals: int = 2_000_000
    rng_seed: int = 0
    polish_tol: float = 1e-10
    polish_max_iter: int = 20_000

    def __post_init__(self):
        if not (self.initial_amplitude > 0 and self.min_amplitude > 0):
            raise ValueError("amplitudes must be positive")
        if not 0 < self.decay < 1:
            raise ValueError("decay must lie in (0, 1)")
        if self.stall_threshold < 1 or self.max_proposals < 1 or self.polish_max_iter < 1:
            raise ValueError("counts must be positive")

    def with_(self, **changes) -> "SearchSchedule":
        return replace(self, **changes)


@dataclass
class SearchResult:
    config: np.ndarray
    error: float
    residual: float
    proposals_used: int = 0
    lloyd_iterations: int = 0
    converged: bool = True
    seed: int | None = None
    trace: list[tuple[int, float]] | None = field(default=None, repr=False)


# ---------------------------------------------------------------- Lloyd

def lloyd_step(domain: Domain, points) -> np.ndarray:
    part = partition(domain, points)
    if part.has_empty_cell:
        raise EmptyCellError("Lloyd step undefined with an empty cell")
    return np.array(part.centroids)


def lloyd_run(domain: Domain, points, tol: float = 1e-10, max_iter: int = 20_000) -> SearchResult:
    """Iterate Lloyd steps until every point is within ``tol`` of its centroid."""
    pts = as_configuration(points)
    part = partition(domain, pts)
    for it in range(max_iter + 1):
        if part.has_empty_cell:
            raise EmptyCellError("Lloyd iteration produced an empty cell")
        residual = optimality_residual(domain, pts, part)
        if residual < tol or it == max_iter:
            break
        pts = np.array(part.centroids)
        part = partition(domain, pts)
    return SearchResult(
        config=pts,
        error=part.total_error,
        residual=residual,
        lloyd_iterations=it,
        converged=residual < tol,
    )


# ---------------------------------------------------------------- random shifts

class _CellState:
    """Voronoi cells of a configuration that can be updated one point at a time."""

    def __init__(self, domain: Domain, pts: list[tuple[float, float]]):
        self.domain = domain
        self.bverts = domain.boundary.vertices
        self.touch_tol = 1e-9 * domain.boundary.diameter()
        self.pts = pts
        self.cells = [self._cell(i, pts) for i in range(len(pts))]
        self.errors = [self._error(c, p) for c, p in zip(self.cells, pts)]

    def _cell(self, i, pts):
        return voronoi_cell(self.bverts, pts, i)

    def _error(self, verts, p):
        if not verts:
            return math.inf
        return self.domain.density * region_moments(verts, p)[3]

    def total(self, errors=None) -> float:
        errs = self.errors if errors is None else errors
        if any(e == math.inf for e in errs):
            return math.inf
        return math.fsum(errs)

    def trial(self, i: int, new_p):
        """Cells and errors after moving point ``i``; nothing is committed."""
        old_p = self.pts[i]
        pts = list(self.pts)
        pts[i] = new_p
        cells = list(self.cells)
        errors = list(self.errors)
        cells[i] = self._cell(i, pts)
        errors[i] = self._error(cells[i], new_p)
        if errors[i] == math.inf:
            return None
        for j, verts in enumerate(self.cells):
            if j == i:
                continue
            pj = pts[j]
            if verts and not (
                _touches(verts, pj, old_p, self.touch_tol) or _clip_verts(verts, *_bisector(pj, new_p)) is not verts
            ):
                continue
            cells[j] = self._cell(j, pts)
            errors[j] = self._error(cells[j], pj)
            if errors[j] == math.inf:
                return None
        return pts, cells, errors

    def commit(self, state):
        self.pts, self.cells, self.errors = state


def _bisector(p, q):
    dx, dy = q[0] - p[0], q[1] - p[1]
    norm = math.hypot(dx, dy)
    a, b = dx / norm, dy / norm
    return a, b, a * 0.5 * (p[0] + q[0]) + b * 0.5 * (p[1] + q[1])


def _touches(verts, p, q, tol) -> bool:
    a, b, c = _bisector(p, q)
    return max(a * x + b * y - c for x, y in verts) > -tol


def random_shift_search(
    domain: Domain,
    n: int,
    schedule: SearchSchedule = SearchSchedule(),
    initial=None,
    *,
    record_trace: bool = False,
    polish: bool = True,
) -> SearchResult:
    """Single-point random shifts with strict acceptance and shrinking radius.

    The start is ``initial`` if given, otherwise ``n`` uniform points drawn
    from the schedule's seed.  Output is a deterministic function of the
    arguments.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(schedule.rng_seed)
    if initial is None:
        start = sample_uniform(domain, n, rng)
    else:
        start = as_configuration(initial)
        if len(start) != n:
            raise ValueError(f"initial configuration has {len(start)} points, expected {n}")
    boundary = domain.boundary
    pts = [tuple(project_onto(boundary, p)) for p in start]
    state = _CellState(domain, pts)
    best = state.total()
    trace = [(0, best)] if record_trace else None

    scale = boundary.diameter()
    amplitude = schedule.initial_amplitude
    stall = 0
    proposals = 0
    min_sep2 = (1e-9 * scale) ** 2
    while amplitude >= schedule.min_amplitude and proposals < schedule.max_proposals:
        proposals += 1
        u = rng.random(3)
        i = min(int(u[0] * n), n - 1)
        r = amplitude * scale * math.sqrt(u[1])
        theta = 2.0 * math.pi * u[2]
        x, y = state.pts[i]
        cand = tuple(project_onto(boundary, (x + r * math.cos(theta), y + r * math.sin(theta))))
        accepted = False
        if all((cand[0] - q[0]) ** 2 + (cand[1] - q[1]) ** 2 > min_sep2 for k, q in enumerate(state.pts) if k != i):
            trial = state.trial(i, cand)
            if trial is not None:
                err = state.total(trial[2])
                if err < best:
                    state.commit(trial)
                    best = err
                    accepted = True
                    if trace is not None:
                        trace.append((proposals, err))
        if accepted:
            stall = 0
        else:
            stall += 1
            if stall >= schedule.stall_threshold:
                amplitude *= schedule.decay
                stall = 0

    config = np.array(state.pts)
    if polish:
        res = lloyd_run(domain, config, schedule.polish_tol, schedule.polish_max_iter)
    else:
        part = partition(domain, config)
        res = SearchResult(config, part.total_error, optimality_residual(domain, config, part))
    res.proposals_used = proposals
    res.seed = schedule.rng_seed
    res.trace = trace
    return res


# ---------------------------------------------------------------- multistart

def default_workers(runs: int) -> int:
    cap = os.environ.get("TRIQUANT_THREADS")
    workers = os.cpu_count() or 1
    if cap:
        try:
            workers = min(workers, max(1, int(cap)))
        except ValueError:
            pass
    return max(1, min(workers, runs))


def _run_one(args):
    domain, n, schedule, initial = args
    return random_shift_search(domain, n, schedule, initial)


def multistart(
    domain: Domain,
    n: int,
    schedule: SearchSchedule = SearchSchedule(),
    starts: int = 5,
    *,
    lattice_seed: bool = True,
    workers: int | None = None,
    return_all: bool = False,
):
    """Best of ``starts`` seeded runs (seeds ``rng_seed + k``).

    For triangular ``n`` on the unit triangle one extra run starts from the
    lattice configuration with the leading-order margin.  Ties go to the
    lowest seed.
    """
    if starts < 1:
        raise ValueError("starts must be at least 1")
    jobs = [(domain, n, schedule.with_(rng_seed=schedule.rng_seed + k), None) for k in range(starts)]
    N = triangular_root(n)
    if lattice_seed and N is not None and N >= 2 and domain.is_unit_triangle:
        lattice = build_lattice_config(LatticeParams.optimal(N))
        jobs.append((domain, n, schedule.with_(rng_seed=schedule.rng_seed + starts), lattice))
    if workers is None:
        workers = default_workers(len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(job) for job in jobs]
    best = min(results, key=lambda r: (r.error, r.seed))
    if return_all:
        return best, results
    return best
