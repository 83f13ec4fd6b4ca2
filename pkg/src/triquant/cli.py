"""Command-line front end.

Exit codes: 0 success, 1 failed check, 2 invalid arguments, 3 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from pathlib import Path

from . import __version__, analytic, lattice, report, structure
from .moments import Domain
from .search import SearchSchedule, multistart
from .verify import run_checks
from .voronoi import partition

EXIT_OK, EXIT_CHECK, EXIT_ARGS, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers

def load_schedule(path: str | None) -> dict:
    """Schedule overrides from a JSON object or ``key = value`` lines."""
    if path is None:
        return {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read schedule file {path}: {exc}") from exc
    if text.lstrip().startswith("{"):
        raw = json.loads(text)
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            raw[key] = value
    fields = {f.name: f for f in dataclasses.fields(SearchSchedule)}
    out = {}
    for key, value in raw.items():
        if key not in fields:
            raise UsageError(f"unknown schedule key {key!r}")
        cast = int if fields[key].type in ("int", int) else float
        try:
            out[key] = cast(float(value)) if cast is int else cast(value)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad value for {key}: {value!r}") from exc
    return out


def build_schedule(args) -> SearchSchedule:
    overrides = load_schedule(args.schedule)
    if args.seed is not None:
        overrides["rng_seed"] = args.seed
    if args.tol is not None:
        overrides["polish_tol"] = args.tol
    try:
        return SearchSchedule(**overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _meta(subcommand: str, params: dict, seed=None) -> dict:
    return {"subcommand": subcommand, "parameters": params, "seed": seed, "version": __version__}


def structure_verdict(domain: Domain, points) -> dict:
    n = len(points)
    axes = structure.symmetry_axes(domain, points)
    rows = structure.row_decomposition(domain, points)
    flags = []
    if n in structure.FLAGGED_ASYMMETRIC:
        flags.append("flagged: optimum may lack an exact symmetry axis")
    if n in structure.FLAGGED_ROWS:
        flags.append("flagged: row conjecture may fail")
    return {
        "symmetry_axes": [ax.vertex for ax in axes],
        "symmetric": bool(axes),
        "rows": list(rows.counts),
        "row_levels": list(rows.levels),
        "predicted_rows": list(rows.predicted),
        "rows_match_prediction": rows.matches_conjecture,
        "row_apex_vertex": rows.apex_vertex,
        "flags": flags,
    }


def bound_comparison(n: int, error: float) -> dict:
    out = {"asymptotic_leading_term": lattice.asymptotic_bound(n), "n_times_error": n * error}
    N = lattice.triangular_root(n)
    if N is not None and N >= 3:
        b = lattice.bound(N)
        out.update(lattice_N=N, lattice_bound=b, below_lattice_bound=error <= b)
    if n <= 4:
        _, known = analytic.known_optimum(Domain.triangle(), n)
        out.update(known_optimum=known, gap_to_known=error - known)
    return out


def solve_result(domain: Domain, n: int, schedule: SearchSchedule, starts: int) -> dict:
    best = multistart(domain, n, schedule, starts)
    return {
        "n": n,
        "points": best.config,
        "error": best.error,
        "residual": best.residual,
        "converged": best.converged,
        "seed": best.seed,
        "proposals_used": best.proposals_used,
        "bounds": bound_comparison(n, best.error),
        "structure": structure_verdict(domain, best.config),
    }


def _formats(fmt: str) -> set[str]:
    return {"json", "csv", "svg"} if fmt == "all" else {fmt}


def _write_outputs(out: str | None, fmt: str, name: str, rep: dict, elapsed: float,
                   points=None, domain: Domain | None = None, csv_text: str | None = None,
                   svg_text: str | None = None):
    text = report.dumps(rep)
    if out is None:
        sys.stdout.write(text)
        return
    root = Path(out)
    formats = _formats(fmt)
    if "json" in formats:
        report.write_text(root / f"{name}.json", text)
    if "csv" in formats and (csv_text is not None or points is not None):
        report.write_text(root / f"{name}.csv", csv_text if csv_text is not None else report.points_csv(points))
    if "svg" in formats and (svg_text is not None or points is not None):
        report.write_text(root / f"{name}.svg", svg_text or report.render_svg(domain, points))
    report.write_text(root / "timing.json", json.dumps({"command": name, "seconds": elapsed}) + "\n")


# ---------------------------------------------------------------- commands

def cmd_solve(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.starts < 1:
        raise UsageError("--starts must be at least 1")
    schedule = build_schedule(args)
    domain = Domain.triangle()
    t0 = time.perf_counter()
    result = solve_result(domain, args.n, schedule, args.starts)
    params = {"n": args.n, "starts": args.starts, "schedule": dataclasses.asdict(schedule)}
    rep = {"command": _meta("solve", params, schedule.rng_seed), "results": result}
    _write_outputs(args.out, args.format, "solve", rep, time.perf_counter() - t0, result["points"], domain)
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    checks = run_checks()
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
    failed = [c.name for c in checks if not c.passed]
    rep = {
        "command": _meta("verify", {}),
        "results": {
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail, "value": c.value} for c in checks],
            "failed": failed,
        },
    }
    if args.out is not None:
        _write_outputs(args.out, "json", "verify", rep, time.perf_counter() - t0)
    if failed:
        print(f"{len(failed)} check(s) failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_CHECK
    print(f"all {len(checks)} checks passed")
    return EXIT_OK


def cmd_lattice(args) -> int:
    N = args.N
    if N < 2:
        raise UsageError("--N must be at least 2")
    try:
        params = lattice.LatticeParams(N, args.a if args.a is not None else lattice.a_opt(N))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    t0 = time.perf_counter()
    domain = Domain.triangle()
    pts = lattice.build_lattice_config(params)
    err = partition(domain, pts).total_error
    a_min, v_min = lattice.a_scan_minimum(N)
    centre, edge, corner = lattice.point_type_errors(params)
    opt = lattice.LatticeParams.optimal(N)
    result = {
        "N": N,
        "n": params.n,
        "a": params.a,
        "d": params.d,
        "a_opt": opt.a,
        "closed_form_error": lattice.vn_of_lattice(params),
        "configuration_error": err,
        "error_at_a_opt": lattice.vn_of_lattice(opt),
        "a_scan_minimum": {"a": a_min, "error": v_min},
        "point_type_errors": {"centre": centre, "edge": edge, "corner": corner},
        "n_times_error": params.n * err,
        "asymptotic_constant": lattice.ASYMPTOTIC_CONSTANT,
        "points": pts,
    }
    if N >= 3:
        result["bound"] = lattice.bound(N)
    rep = {"command": _meta("lattice", {"N": N, "a": args.a}), "results": result}
    _write_outputs(args.out, args.format, "lattice", rep, time.perf_counter() - t0, pts, domain)
    return EXIT_OK


SWEEP_COLUMNS = [
    "n", "error", "n_times_error", "residual", "known_optimum", "lattice_bound",
    "symmetric", "rows", "predicted_rows", "rows_match_prediction", "flags",
]


def cmd_sweep(args) -> int:
    if args.n_max < 1:
        raise UsageError("--n-max must be at least 1")
    schedule = build_schedule(args)
    domain = Domain.triangle()
    t0 = time.perf_counter()
    rows, panels = [], []
    complete = False

    def flush():
        rep = {
            "command": _meta("sweep", {"n_max": args.n_max, "starts": args.starts,
                                       "schedule": dataclasses.asdict(schedule)}, schedule.rng_seed),
            "results": {"complete": complete, "rows": rows},
        }
        table = [
            {
                "n": r["n"], "error": r["error"], "n_times_error": r["bounds"]["n_times_error"],
                "residual": r["residual"], "known_optimum": r["bounds"].get("known_optimum"),
                "lattice_bound": r["bounds"].get("lattice_bound"),
                "symmetric": r["structure"]["symmetric"], "rows": r["structure"]["rows"],
                "predicted_rows": r["structure"]["predicted_rows"],
                "rows_match_prediction": r["structure"]["rows_match_prediction"],
                "flags": "; ".join(r["structure"]["flags"]),
            }
            for r in rows
        ]
        svg = report.render_sweep_svg(domain, panels) if panels else None
        _write_outputs(args.out, args.format, "sweep", rep, time.perf_counter() - t0,
                       domain=domain, csv_text=report.table_csv(table, SWEEP_COLUMNS), svg_text=svg)

    try:
        for n in range(1, args.n_max + 1):
            res = solve_result(domain, n, schedule, args.starts)
            rows.append(res)
            panels.append((f"n = {n}", res["points"]))
            if args.out is not None:
                flush()
        complete = True
    except KeyboardInterrupt:
        flush()
        print("interrupted; partial results written", file=sys.stderr)
        return 130
    flush()
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _add_search_flags(p):
    p.add_argument("--starts", type=int, default=5, help="independent seeded runs")
    p.add_argument("--seed", type=int, default=None, help="base RNG seed")
    p.add_argument("--schedule", default=None, help="file with schedule overrides")
    p.add_argument("--tol", type=float, default=None, help="Lloyd polish tolerance")


def _add_output_flags(p):
    p.add_argument("--out", default=None, help="output directory (default: JSON on stdout)")
    p.add_argument("--format", choices=["json", "csv", "svg", "all"], default="all")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triquant", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="search for an n-point quantizer of the unit triangle")
    p.add_argument("--n", type=int, required=True)
    _add_search_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check every reference value")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lattice", help="triangular-lattice configuration and bound")
    p.add_argument("--N", type=int, required=True, help="number of rows")
    p.add_argument("--a", type=float, default=None, help="edge margin (default: leading-order optimum)")
    _add_output_flags(p)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("sweep", help="solve n = 1..n_max and tabulate")
    p.add_argument("--n-max", type=int, default=21)
    _add_search_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"triquant: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except OSError as exc:
        print(f"triquant: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
