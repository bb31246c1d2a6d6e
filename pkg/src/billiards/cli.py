"""Command-line front end: polygon files, experiment orchestration, CSV/SVG.

Exit codes: 0 success, 1 usage or parse error, 2 budget exhausted (partial
CSV still written), 3 an exact identity audit failed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from dataclasses import dataclass, field

from . import geom
from .geom import Q, Polygon, GeometryError, ChartError
from .complexity import (Language, ComplexityTable, BudgetExceeded,
                         cassaigne_audit, gd_formula_audit, growth_fit,
                         table_csv, format_float, LanguageError)
from . import inner, outer, arrangement


class ParseFailure(ValueError):
    def __init__(self, code, message):
        super().__init__("%s: %s" % (code, message))
        self.code = code


@dataclass
class RunConfig:
    command: str
    polygon: str | None = None
    max_n: int = 8
    samples: int = 500
    radius: str = "20"
    budget: int = 10 ** 7
    seed: int = 0
    tolerance: float = 1e-6
    out: str | None = None
    emit_svg: str | None = None
    random_trials: int = 0
    warnings: list = field(default_factory=list)


def worker_cap() -> int:
    try:
        return max(1, int(os.environ.get("BILLIARDS_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# polygon files
# ---------------------------------------------------------------------------

def _parse_rat(x, where):
    try:
        if isinstance(x, bool):
            raise ValueError
        if isinstance(x, int):
            return Q(x)
        if isinstance(x, str):
            return Q(x)
    except (ValueError, ZeroDivisionError):
        pass
    raise ParseFailure("MALFORMED_RATIONAL",
                       "%s: expected integer or 'p/q' string, got %r" % (where, x))


def parse_polygon(text: str, warnings: list | None = None) -> Polygon:
    """Parse a polygon file; clockwise input is reversed with a warning."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseFailure("MALFORMED_JSON", str(err))
    if "curvature" not in data or "vertices" not in data:
        raise ParseFailure("MISSING_FIELD", "need 'curvature' and 'vertices'")
    chi = data["curvature"]
    if chi not in (-1, 0, 1):
        raise ParseFailure("BAD_CURVATURE", "curvature must be -1, 0 or 1")
    verts = []
    for k, row in enumerate(data["vertices"]):
        where = "vertex %d" % k
        if chi == 1 and len(row) == 3:
            x, y, z = (_parse_rat(c, where) for c in row)
            if z == 0:
                raise ParseFailure("CHART_VIOLATION",
                                   "%s: homogeneous z must be nonzero" % where)
            if z < 0:
                x, y, z = -x, -y, -z
            verts.append((x / z, y / z))
        elif len(row) == 2:
            verts.append(tuple(_parse_rat(c, where) for c in row))
        else:
            raise ParseFailure("BAD_VERTEX", "%s: expected a pair%s" %
                               (where, " or triple" if chi == 1 else ""))
    name = data.get("name", "")
    area2 = sum(geom.cross2(verts[i], verts[(i + 1) % len(verts)])
                for i in range(len(verts)))
    if area2 < 0:
        verts = list(reversed(verts))
        if warnings is not None:
            warnings.append("vertices were clockwise; reversed to counterclockwise")
    try:
        return Polygon(chi, verts, name=name)
    except ChartError as err:
        raise ParseFailure("CHART_VIOLATION", str(err))
    except GeometryError as err:
        code = "NON_SIMPLE" if "simple" in str(err) else "DEGENERATE_VERTEX"
        raise ParseFailure(code, str(err))


def load_polygon(path: str, warnings=None) -> Polygon:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_polygon(fh.read(), warnings)


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

def emit_svg(path, segments, polygons=(), box=None):
    """Minimal SVG: one line element per segment, polyline per polygon."""
    pts = [p for s in segments for p in s] + [v for pg in polygons for v in pg]
    if not pts:
        pts = [(0, 0), (1, 1)]
    xs = [float(p[0]) for p in pts]
    ys = [float(p[1]) for p in pts]
    if box is None:
        pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        box = (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)
    x0, y0, x1, y1 = box
    lines = ['<svg xmlns="http://www.w3.org/2000/svg" viewBox="%g %g %g %g">'
             % (x0, y0, x1 - x0, y1 - y0)]
    for pg in polygons:
        path_d = " ".join("%g,%g" % (float(v[0]), float(v[1])) for v in pg)
        lines.append('<polygon points="%s" fill="none" stroke="black" '
                     'stroke-width="%g"/>' % (path_d, (x1 - x0) / 400))
    for a, b in segments:
        lines.append('<line x1="%g" y1="%g" x2="%g" y2="%g" stroke="gray" '
                     'stroke-width="%g"/>' % (float(a[0]), float(a[1]),
                                              float(b[0]), float(b[1]),
                                              (x1 - x0) / 600))
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_inner_complexity(cfg: RunConfig) -> int:
    P = load_polygon(cfg.polygon, cfg.warnings)
    budget_hit = False
    try:
        lang = inner.enumerate_side_language(P, cfg.max_n, budget=cfg.budget)
    except BudgetExceeded as err:
        lang = err.partial
        budget_hit = True
    csv = table_csv(lang)
    if cfg.out:
        _write(cfg.out, csv)
    for n in range(1, lang.max_len + 1):
        print("n=%d f=%d" % (n, lang.count(n)))
    if cfg.emit_svg:
        emit_svg(cfg.emit_svg, [P.side(i) for i in range(P.n)],
                 polygons=[list(P.vertices)])
    return 2 if budget_hit else 0


def _cmd_gen_diagonals(cfg: RunConfig) -> int:
    P = load_polygon(cfg.polygon, cfg.warnings)
    budget_hit = False
    try:
        census = inner.count_singular_orbits(P, cfg.max_n, budget=cfg.budget)
    except BudgetExceeded as err:
        census = err.partial
        budget_hit = True
    rows = ["n,gd,GD,fgd,FGD"]
    for n in range(1, cfg.max_n + 1):
        rows.append("%d,%d,%d,%d,%d" % (n, census.gd(n), census.GD(n),
                                        census.fgd(n), census.FGD(n)))
        print("n=%d gd=%d GD=%d fgd=%d" % (n, census.gd(n), census.GD(n),
                                           census.fgd(n)))
    if cfg.out:
        _write(cfg.out, "\n".join(rows) + "\n")
    return 2 if budget_hit else 0


def _cmd_cassaigne_audit(cfg: RunConfig) -> int:
    P = load_polygon(cfg.polygon, cfg.warnings)
    try:
        lang = inner.enumerate_side_language(P, cfg.max_n + 2, budget=cfg.budget)
    except BudgetExceeded:
        print("budget exceeded before the audit range was enumerated")
        return 2
    rep = cassaigne_audit(lang, cfg.max_n)
    for n in rep.audited:
        print("n=%d identity exact" % n)
    if not rep.ok:
        print("FAIL at n=%d: %s" % (rep.first_fail, rep.detail))
        return 3
    print("cassaigne-audit: all identities exact to n=%d" % cfg.max_n)
    if cfg.out:
        _write(cfg.out, table_csv(lang))
    return 0


def _cmd_gd_formula_audit(cfg: RunConfig) -> int:
    P = load_polygon(cfg.polygon, cfg.warnings)
    try:
        lang = inner.enumerate_side_language(P, cfg.max_n + 2, budget=cfg.budget)
        census = inner.count_singular_orbits(P, cfg.max_n + 2, budget=cfg.budget)
    except BudgetExceeded:
        print("budget exceeded during enumeration")
        return 2
    F = {n: lang.count(n + 1) for n in range(1, cfg.max_n + 2)}
    rep = gd_formula_audit(F, census.gd_table(cfg.max_n + 2),
                           census.fgd_table(cfg.max_n + 2), P.chi, cfg.max_n)
    print(rep.detail)
    for cand in rep.winners:
        print("  holds: %s" % cand.describe())
    if rep.canonical:
        print("constants: c1=%d c2=%d (low-order style: c1=%d c2=%d)"
              % (rep.c1, rep.c2, *rep.remark_constants))
    return 0 if rep.ok else 3


def _cmd_outer_complexity(cfg: RunConfig) -> int:
    P = load_polygon(cfg.polygon, cfg.warnings)
    budget_hit = False
    try:
        lang, table = outer.enumerate_outer_language(P, cfg.max_n,
                                                     budget=cfg.budget)
    except BudgetExceeded as err:
        lang = err.partial
        table = ComplexityTable(ns=sorted(lang.counts),
                                f=[lang.counts[n] for n in sorted(lang.counts)])
        budget_hit = True
    for n, f in zip(table.ns, table.f):
        print("n=%d f=%d" % (n, f))
    if len(table.ns) >= 10:
        fit = growth_fit(table.ns, table.f,
                         (max(5, table.ns[0]), table.ns[-1]))
        print("growth: %s exponent=%.3f rate=%.3f r2=%.4f"
              % (fit.model, fit.exponent, fit.rate, fit.r2))
    if cfg.out:
        _write(cfg.out, table_csv(table))
    if cfg.emit_svg:
        segs = outer.singularity_graph_segments(P, min(cfg.max_n, 4),
                                                8 * max(abs(v[0]) + abs(v[1])
                                                        for v in P.vertices) + 8) \
            if P.chi == 0 else []
        emit_svg(cfg.emit_svg, segs, polygons=[list(P.vertices)])
    return 2 if budget_hit else 0


def _cmd_outer_periods(cfg: RunConfig) -> int:
    P = load_polygon(cfg.polygon, cfg.warnings)
    census = outer.periodic_census(P, Q(cfg.radius), cfg.samples, cfg.seed)
    rows = ["x,y,radius,period"]
    for r in census.records:
        rows.append("%s,%s,%s,%d" % (r.point[0], r.point[1],
                                     format_float(r.radius), r.period))
    if cfg.out:
        _write(cfg.out, "\n".join(rows) + "\n")
    print("periodic=%d non_returned=%d skipped_singular=%d"
          % (len(census.records), census.non_returned, census.skipped_singular))
    print("regression: period ~ %.4f*|x| + %.4f (r2=%.4f), c_lower=%.4f"
          % (census.slope, census.intercept, census.r2, census.c_lower))
    return 0


def _cmd_duality_check(cfg: RunConfig) -> int:
    P = load_polygon(cfg.polygon, cfg.warnings)
    report, outer_lang, inner_lang, res = outer.duality_language_check(
        P, cfg.max_n, budget=cfg.budget)
    ok = True
    for n in sorted(report):
        eq, fo, fb = report[n]
        print("n=%d transported==dual-side-language: %s (f_o=%d, dual=%d)"
              % (n, eq, fo, fb))
        ok = ok and eq
    return 0 if ok else 3


def _cmd_rotation_number(cfg: RunConfig) -> int:
    P = load_polygon(cfg.polygon, cfg.warnings)
    iters = max(20000, cfg.samples * 100)
    res = outer.circle_map_rotation(P, iters=iters, tolerance=cfg.tolerance)
    print("rho=%.9f raw=%.9f large=%s cycles=%d"
          % (res.rho, res.rho_raw, res.is_large, len(res.cycles)))
    for theta, lam in res.cycles[:8]:
        print("cycle at theta=%.6f Lambda=%.6g" % (theta[0], lam))
    return 0


def paper_figure_pair():
    """The documented join-identity fixture: 2 crossing chords vs 4 parallels,
    with F=12, F'=4, F''=5, V_ess=4."""
    box = (Q(-10), Q(-10), Q(10), Q(10))
    g1 = arrangement.GeodesicGraph(lines=[((0, 0), (1, 2)), ((0, 0), (1, -2))],
                                   box=box)
    g2 = arrangement.GeodesicGraph(lines=[((0, c), (1, 2 + c))
                                          for c in (3, 6, -3, -6)], box=box)
    return g1, g2


def _cmd_euler_audit(cfg: RunConfig) -> int:
    g1, g2 = paper_figure_pair()
    rep = arrangement.euler_audit(g1, g2, 1, stable=True)
    print("figure: F=%d F'=%d F''=%d V_ess=%d c=%d  lhs=%d rhs=%d"
          % (rep.F, rep.F1, rep.F2, rep.V_ess, rep.overlaps, rep.lhs, rep.rhs))
    if not rep.identity_holds:
        print("FAIL: figure identity")
        return 3
    trials = cfg.random_trials
    if trials:
        rng = random.Random(cfg.seed)
        pairs = [arrangement.random_graph_pair(rng) for _ in range(trials)]
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=worker_cap()) as pool:
            reports = list(pool.map(
                lambda gg: arrangement.euler_audit(gg[0], gg[1], 1), pairs))
        for k, r in enumerate(reports):
            if not (r.identity_holds and r.sandwich_holds):
                print("FAIL at trial %d: lhs=%d rhs=%d" % (k, r.lhs, r.rhs))
                return 3
        print("%d random joins audited: identity and bounds exact" % trials)
    if cfg.emit_svg:
        j = g1.join(g2)
        emit_svg(cfg.emit_svg, list(j.edge_points()))
    return 0


COMMANDS = {
    "inner-complexity": _cmd_inner_complexity,
    "gen-diagonals": _cmd_gen_diagonals,
    "cassaigne-audit": _cmd_cassaigne_audit,
    "gd-formula-audit": _cmd_gd_formula_audit,
    "outer-complexity": _cmd_outer_complexity,
    "outer-periods": _cmd_outer_periods,
    "duality-check": _cmd_duality_check,
    "rotation-number": _cmd_rotation_number,
    "euler-audit": _cmd_euler_audit,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseFailure("USAGE", message)


def build_parser() -> _Parser:
    parser = _Parser(prog="billiards",
                     description="exact polygonal billiard complexity experiments")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--polygon", help="polygon JSON file")
    parser.add_argument("--max-n", type=int, default=8, dest="max_n")
    parser.add_argument("--samples", type=int, default=500)
    parser.add_argument("--radius", default="20")
    parser.add_argument("--budget", type=int, default=10 ** 7)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tolerance", type=float, default=1e-6)
    parser.add_argument("--out", help="CSV output path")
    parser.add_argument("--emit-svg", dest="emit_svg", help="SVG output path")
    parser.add_argument("--random", type=int, default=0, dest="random_trials",
                        help="number of random audit trials")
    return parser


def run(argv) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except ParseFailure as err:
        print("error (%s): %s" % (err.code, err), file=sys.stderr)
        return 1
    cfg = RunConfig(command=ns.command, polygon=ns.polygon, max_n=ns.max_n,
                    samples=ns.samples, radius=ns.radius, budget=ns.budget,
                    seed=ns.seed, tolerance=ns.tolerance, out=ns.out,
                    emit_svg=ns.emit_svg, random_trials=ns.random_trials)
    needs_polygon = ns.command not in ("euler-audit",)
    if needs_polygon and not cfg.polygon:
        print("error (USAGE): command %r needs --polygon" % ns.command,
              file=sys.stderr)
        return 1
    try:
        code = COMMANDS[ns.command](cfg)
    except ParseFailure as err:
        print("error (%s): %s" % (err.code, err), file=sys.stderr)
        return 1
    except FileNotFoundError as err:
        print("error (NO_SUCH_FILE): %s" % err, file=sys.stderr)
        return 1
    except BudgetExceeded as err:
        print("budget exceeded: %s" % err, file=sys.stderr)
        return 2
    except (LanguageError, GeometryError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 1
    for w in cfg.warnings:
        print("warning: %s" % w, file=sys.stderr)
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
