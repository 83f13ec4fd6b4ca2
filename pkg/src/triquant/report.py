"""Serialization of run reports: JSON, CSV and SVG drawings."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .moments import Domain
from .structure import canonical_orientation, detect_symmetry_axis
from .voronoi import partition


def to_jsonable(obj):
    """Plain JSON types; floats keep their shortest round-trip repr."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def dumps(report: dict) -> str:
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True) + "\n"


def points_csv(points) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y"])
    for x, y in np.asarray(points, dtype=float):
        w.writerow([repr(float(x)), repr(float(y))])
    return buf.getvalue()


def table_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return "" if v is None else str(v)


def write_text(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


# ---------------------------------------------------------------- SVG

def _oriented(domain: Domain, points):
    """Rotate so that a symmetry axis (if any) is vertical, apex up."""
    axis = detect_symmetry_axis(domain, points) if domain.is_equilateral_triangle else None
    if axis is None:
        return np.asarray(points, dtype=float), None
    return canonical_orientation(domain, points, axis.vertex), axis


def _panel(domain: Domain, points, ox: float, oy: float, size: float, label: str | None = None) -> list[str]:
    pts, axis = _oriented(domain, points)
    part = partition(domain, pts)
    bverts = np.array(domain.boundary.vertices)
    if axis is not None:
        bverts = canonical_orientation(domain, bverts, axis.vertex)
    lo = bverts.min(axis=0)
    span = float((bverts.max(axis=0) - lo).max())
    pad = 0.05 * size
    scale = (size - 2 * pad) / span

    def tx(p):
        return ox + pad + (p[0] - lo[0]) * scale, oy + size - pad - (p[1] - lo[1]) * scale

    def path(verts):
        return " ".join(f"{x:.4f},{y:.4f}" for x, y in map(tx, verts))

    out = ['<g class="panel">']
    out.append(f'<polygon class="domain" points="{path(bverts)}" fill="none" stroke="black" stroke-width="1"/>')
    for i, cell in enumerate(part.cells):
        if not cell.is_empty:
            out.append(
                f'<polygon class="cell" data-index="{i}" points="{path(cell.vertices)}" '
                f'fill="none" stroke="#c00" stroke-width="0.5"/>'
            )
    r = max(1.0, 0.012 * size)
    for i, p in enumerate(pts):
        x, y = tx(p)
        out.append(f'<circle class="point" data-index="{i}" cx="{x:.4f}" cy="{y:.4f}" r="{r:.2f}" fill="#00c"/>')
    if label:
        out.append(
            f'<text x="{ox + size / 2:.2f}" y="{oy + 0.9 * pad + 8:.2f}" font-size="10" '
            f'text-anchor="middle">{escape(label)}</text>'
        )
    out.append("</g>")
    return out


def render_svg(domain: Domain, points, size: float = 400.0, label: str | None = None) -> str:
    body = _panel(domain, points, 0.0, 0.0, size, label)
    return _svg_doc(size, size, body)


def render_sweep_svg(domain: Domain, configs: list[tuple[str, np.ndarray]], columns: int = 7,
                     panel: float = 140.0) -> str:
    rows = max(1, math.ceil(len(configs) / columns))
    body = []
    for k, (label, pts) in enumerate(configs):
        body += _panel(domain, pts, (k % columns) * panel, (k // columns) * panel, panel, label)
    return _svg_doc(columns * panel, rows * panel, body)


def _svg_doc(w: float, h: float, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:g}" height="{h:g}" '
        f'viewBox="0 0 {w:g} {h:g}">'
    )
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>"]) + "\n"
