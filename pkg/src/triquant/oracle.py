"""Brute-force estimators of the quantization error.

These never touch the clipping code: they sample the domain and take the
minimum squared distance to the configuration directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geometry import triangulate
from .moments import Domain
from .voronoi import as_configuration

_CHUNK = 1 << 18


@dataclass(frozen=True)
class OracleEstimate:
    value: float
    std_error: float
    samples: int


def _cross(u, v):
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def sample_uniform(domain: Domain, size: int, rng: np.random.Generator) -> np.ndarray:
    """Exactly uniform points in the domain (fan triangles picked by area)."""
    tris = np.array(triangulate(domain.boundary))
    v0, v1, v2 = tris[:, 0], tris[:, 1], tris[:, 2]
    w = 0.5 * np.abs(_cross(v1 - v0, v2 - v0))
    which = rng.choice(len(tris), size=size, p=w / w.sum()) if len(tris) > 1 else np.zeros(size, int)
    u = rng.random(size)
    v = rng.random(size)
    su = np.sqrt(u)[:, None]
    return (1 - su) * v0[which] + su * (1 - v[:, None]) * v1[which] + su * v[:, None] * v2[which]


def _min_dist_sq(x: np.ndarray, pts: np.ndarray) -> np.ndarray:
    best = np.full(len(x), np.inf)
    for p in pts:
        d = (x[:, 0] - p[0]) ** 2 + (x[:, 1] - p[1]) ** 2
        np.minimum(best, d, out=best)
    return best


def mc_quantization_error(domain: Domain, points, samples: int = 1_000_000, seed: int = 0) -> OracleEstimate:
    if samples < 1000:
        raise ValueError("use at least 1000 samples")
    pts = as_configuration(points)
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        m = min(_CHUNK, samples - done)
        d = _min_dist_sq(sample_uniform(domain, m, rng), pts)
        total += d.sum()
        total_sq += (d * d).sum()
        done += m
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / (samples - 1)
    return OracleEstimate(float(mean), float(np.sqrt(var / samples)), samples)


@lru_cache(maxsize=4)
def _grid_nodes(r: int) -> tuple[np.ndarray, np.ndarray]:
    """Centroids of the upward and downward sub-triangles in (s, t) coordinates."""
    i, j = np.meshgrid(np.arange(r), np.arange(r), indexing="ij")
    up = i + j <= r - 1
    down = i + j <= r - 2
    s = np.concatenate([(i[up] + 1 / 3) / r, (i[down] + 2 / 3) / r])
    t = np.concatenate([(j[up] + 1 / 3) / r, (j[down] + 2 / 3) / r])
    s.flags.writeable = False
    t.flags.writeable = False
    return s, t


def grid_quantization_error(domain: Domain, points, resolution: int = 200) -> float:
    """Midpoint rule on a barycentric subdivision of each fan triangle.

    Every triangle is split into ``resolution**2`` congruent sub-triangles
    and the integrand is sampled at their centroids.
    """
    if resolution < 10:
        raise ValueError("resolution must be at least 10")
    pts = as_configuration(points)
    r = resolution
    s, t = _grid_nodes(r)
    total = 0.0
    for v0, v1, v2 in triangulate(domain.boundary):
        v0, v1, v2 = map(np.asarray, (v0, v1, v2))
        w = 0.5 * abs(_cross(v1 - v0, v2 - v0))
        acc = 0.0
        for k in range(0, len(s), _CHUNK):
            sk, tk = s[k:k + _CHUNK, None], t[k:k + _CHUNK, None]
            x = v0 + sk * (v1 - v0) + tk * (v2 - v0)
            acc += _min_dist_sq(x, pts).sum()
        total += w * acc / (r * r)
    return total * domain.density
