"""Command-line interface.

Subcommands: solve, count, atlas, arcs, historical {bernoulli,euler},
verify.  Triangles are given as decimal side lengths (--sides a,b,c) or as
vertices (--vertices x1,y1,x2,y2,x3,y3); radical expressions are not parsed.
Exit codes: 0 success, 2 invalid input, 3 internal verification failure.

All tolerances can be scaled at once through the QUADRISECT_TOLERANCE_SCALE
environment variable (default 1).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import arcs as arcs_mod
from . import atlas as atlas_mod
from . import historical as hist_mod
from . import solver as solver_mod
from .geometry import DegenerateTriangleError, TriangleSpec
from .solver import Quadrisection, enumerate_quadrisections, verify_quadrisection

SCHEMA = 1

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VERIFY = 3


@dataclass
class CliConfig:
    tol_eq: float = solver_mod.TOL_EQ
    tol_root: float = solver_mod.TOL_ROOT
    tol_area: float = solver_mod.TOL_AREA
    tol_perp: float = solver_mod.TOL_PERP
    eps_region: float = 1e-9
    eps_env: float = arcs_mod.EPS_ENV
    fmt: str = "json"
    out: str | None = None

    def scaled(self, factor: float) -> "CliConfig":
        return dataclasses.replace(
            self,
            tol_eq=self.tol_eq * factor, tol_root=self.tol_root * factor,
            tol_area=self.tol_area * factor, tol_perp=self.tol_perp * factor,
            eps_region=self.eps_region * factor, eps_env=self.eps_env * factor)


class CliError(Exception):
    pass


def _parse_floats(text: str, n: int, what: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != n:
        raise CliError(f"{what} needs {n} comma-separated numbers, got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise CliError(f"malformed number in {what}: {exc}") from None
    if not all(math.isfinite(v) for v in vals):
        raise CliError(f"non-finite value in {what}: {text!r}")
    return vals


def _triangle_from_args(args) -> TriangleSpec:
    if getattr(args, "vertices", None):
        v = _parse_floats(args.vertices, 6, "--vertices")
        return TriangleSpec.from_vertices((v[0], v[1]), (v[2], v[3]), (v[4], v[5]))
    if getattr(args, "sides", None):
        s = _parse_floats(args.sides, 3, "--sides")
        return TriangleSpec.from_sides(*s)
    raise CliError("a triangle is required: pass --sides a,b,c or --vertices ...")


def _emit(doc: dict, text_lines: list[str], cfg: CliConfig) -> None:
    if cfg.fmt == "json":
        payload = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        payload = "\n".join(text_lines) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)


def _quad_doc(q: Quadrisection) -> dict:
    sol = q.solution
    return {
        "placement": q.base_placement,
        "x": sol.x,
        "y": sol.y,
        "s": sol.s,
        "r": sol.r,
        "segments": [[list(p) for p in seg] for seg in q.segments_original],
        "O": list(sol.O),
        "region_areas": list(q.region_areas),
        "residuals": {"aeq": sol.aeq_residual, "peq": sol.peq_residual},
    }


def cmd_solve(args, cfg: CliConfig) -> int:
    t = _triangle_from_args(args)
    qs = enumerate_quadrisections(t, tol_eq=cfg.tol_eq, tol_root=cfg.tol_root,
                                  tol_area=cfg.tol_area, tol_perp=cfg.tol_perp)
    doc = {"schema": SCHEMA, "sides": list(t.sides),
           "vertices": [list(v) for v in t.vertices],
           "count": len(qs), "quadrisections": [_quad_doc(q) for q in qs]}
    lines = [f"{len(qs)} quadrisection(s) for sides {t.sides}"]
    for i, q in enumerate(qs):
        lines.append(f"  #{i + 1} [{q.base_placement}] x={q.solution.x:.12f} "
                     f"y={q.solution.y:.12f} areas={['%.9g' % a for a in q.region_areas]}")
    _emit(doc, lines, cfg)
    if args.figure:
        _render_figure(args.figure, t, qs)
    return EXIT_OK


def _render_figure(path: str, t: TriangleSpec, qs) -> None:
    if path.endswith(".svg"):
        Path(path).write_text(atlas_mod.render_quadrisection_svg(t, qs),
                              encoding="utf-8")
    else:
        from .figures import render_quadrisection_figure
        render_quadrisection_figure(t, qs, path)


def cmd_count(args, cfg: CliConfig) -> int:
    t = _triangle_from_args(args)
    rep = arcs_mod.count_via_theorem(t, eps_env=cfg.eps_env)
    doc = {"schema": SCHEMA, "sides": list(t.sides), "count": rep.count,
           "theorem_case": rep.theorem_case.value, "oracle_count": rep.oracle_count,
           "per_placement_roots": rep.per_placement_roots, "boundary": rep.boundary,
           "canonical_apex": [rep.canonical.h, rep.canonical.ht]}
    lines = [f"count={rep.count} case={rep.theorem_case.value} "
             f"oracle={rep.oracle_count} boundary={rep.boundary}"]
    _emit(doc, lines, cfg)
    return EXIT_OK


def cmd_atlas(args, cfg: CliConfig) -> int:
    grid = atlas_mod.classify_grid(args.resolution, eps_env=cfg.eps_env,
                                   eps_region=cfg.eps_region)
    out = Path(args.out)
    out.write_text(atlas_mod.render_space_svg(grid), encoding="utf-8")
    csv_path = Path(args.csv) if args.csv else out.with_suffix(".csv")
    csv_path.write_text(atlas_mod.grid_to_csv(grid), encoding="utf-8")
    json_path = Path(args.json) if args.json else out.with_suffix(".json")
    json_path.write_text(atlas_mod.grid_to_json(grid), encoding="utf-8")
    written = [str(out), str(csv_path), str(json_path)]
    if args.png:
        from .figures import render_space_figure
        render_space_figure(grid, args.png)
        written.append(args.png)
    sys.stdout.write("\n".join(written) + "\n")
    return EXIT_OK


def cmd_arcs(args, cfg: CliConfig) -> int:
    try:
        ad = arcs_mod.arc_data(args.x)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    doc = {"schema": SCHEMA, "x": ad.x, "y": ad.y, "c": ad.c, "r": ad.r,
           "theta_end": ad.theta_end, "terminal": [0.5, ad.z]}
    _emit(doc, [f"x={ad.x} y={ad.y} c={ad.c} r={ad.r} theta={ad.theta_end} "
                f"terminal=(0.5, {ad.z})"], cfg)
    return EXIT_OK


def _result_doc(res) -> dict:
    return {
        "schema": SCHEMA,
        "method": res.method,
        "roots": list(res.roots),
        "matches": [dataclasses.asdict(m) for m in res.matches],
        "extraneous": list(res.extraneous),
        "residuals": list(res.residuals),
        "quadrisection_count": res.quadrisection_count,
        "notes": list(res.notes),
    }


def cmd_historical(args, cfg: CliConfig) -> int:
    t = _triangle_from_args(args)
    if args.which == "bernoulli":
        res = hist_mod.bernoulli_compare(t)
    else:
        res = hist_mod.euler_solve(t)
    lines = [f"{res.method}: {len(res.matches)} matched root(s), "
             f"count={res.quadrisection_count}"] + [f"  {n}" for n in res.notes]
    _emit(_result_doc(res), lines, cfg)
    return EXIT_OK


def cmd_verify(args, cfg: CliConfig) -> int:
    t = _triangle_from_args(args)
    rep = arcs_mod.count_via_theorem(t, eps_env=cfg.eps_env)
    qs = enumerate_quadrisections(t, tol_eq=cfg.tol_eq, tol_root=cfg.tol_root,
                                  tol_area=cfg.tol_area, tol_perp=cfg.tol_perp)
    checks = [verify_quadrisection(t, q, tol_area=cfg.tol_area, tol_perp=cfg.tol_perp)
              for q in qs]
    ok = rep.count == rep.oracle_count == len(qs) and all(c.passed for c in checks)
    doc = {"schema": SCHEMA, "sides": list(t.sides), "theorem_count": rep.count,
           "oracle_count": rep.oracle_count, "boundary": rep.boundary,
           "all_verified": all(c.passed for c in checks),
           "max_area_deviation": max((c.max_area_deviation for c in checks), default=0.0),
           "max_perp_residual": max((c.perp_residual for c in checks), default=0.0),
           "ok": ok}
    _emit(doc, [f"theorem={rep.count} oracle={rep.oracle_count} "
                f"verified={doc['all_verified']} ok={ok}"], cfg)
    return EXIT_OK if ok else EXIT_VERIFY


def _add_triangle_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sides", help="three side lengths a,b,c (decimals)")
    p.add_argument("--vertices", help="six coordinates x1,y1,x2,y2,x3,y3")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quadrisect",
        description="Quadrisections of a triangle: two perpendicular segments "
                    "cutting it into four equal areas.")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", help="write the report to this file instead of stdout")
    for name, default in (("tol-eq", solver_mod.TOL_EQ), ("tol-root", solver_mod.TOL_ROOT),
                          ("tol-area", solver_mod.TOL_AREA), ("tol-perp", solver_mod.TOL_PERP),
                          ("eps-region", 1e-9), ("eps-env", arcs_mod.EPS_ENV)):
        p.add_argument(f"--{name}", type=float, default=default)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="enumerate all quadrisections")
    _add_triangle_args(sp)
    sp.add_argument("--figure", help="also draw the quadrisections (.svg or .png)")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("count", help="count quadrisections (theorem + oracle)")
    _add_triangle_args(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("atlas", help="classify the triangle space and render it")
    sp.add_argument("--resolution", type=int, default=200)
    sp.add_argument("--out", default="atlas.svg", dest="out")
    sp.add_argument("--csv", help="CSV dataset path (default: alongside --out)")
    sp.add_argument("--json", help="JSON dataset path (default: alongside --out)")
    sp.add_argument("--png", help="also render a matplotlib figure to this file")
    sp.set_defaults(func=cmd_atlas)

    sp = sub.add_parser("arcs", help="circle-family data for a base parameter x")
    sp.add_argument("--x", type=float, required=True)
    sp.set_defaults(func=cmd_arcs)

    sp = sub.add_parser("historical", help="Bernoulli / Euler reproductions")
    sp.add_argument("which", choices=("bernoulli", "euler"))
    _add_triangle_args(sp)
    sp.set_defaults(func=cmd_historical)

    sp = sub.add_parser("verify", help="theorem-vs-oracle cross check")
    _add_triangle_args(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK

    try:
        scale = float(os.environ.get("QUADRISECT_TOLERANCE_SCALE", "1"))
        if not (math.isfinite(scale) and scale > 0):
            raise CliError(f"bad QUADRISECT_TOLERANCE_SCALE: {scale}")
    except ValueError:
        sys.stderr.write("quadrisect: bad QUADRISECT_TOLERANCE_SCALE\n")
        return EXIT_INVALID

    cfg = CliConfig(tol_eq=args.tol_eq, tol_root=args.tol_root,
                    tol_area=args.tol_area, tol_perp=args.tol_perp,
                    eps_region=args.eps_region, eps_env=args.eps_env,
                    fmt=args.format, out=args.out if args.command != "atlas" else None)
    cfg = cfg.scaled(scale)
    for name in ("tol_eq", "tol_root", "tol_area", "tol_perp", "eps_region", "eps_env"):
        if not getattr(cfg, name) > 0:
            sys.stderr.write(f"quadrisect: {name} must be positive\n")
            return EXIT_INVALID

    try:
        return args.func(args, cfg)
    except (CliError, DegenerateTriangleError, ValueError) as exc:
        sys.stderr.write(f"quadrisect: {exc}\n")
        return EXIT_INVALID
    except RuntimeError as exc:
        sys.stderr.write(f"quadrisect: internal verification failure: {exc}\n")
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
