"""Outer (dual) billiards about a convex polygon: the sector partition, the
exact map, cell-by-cell language enumeration, the periodic census, spherical
duality, and the boundary circle map of the hyperbolic case.

The exterior of the table is partitioned by the rays extending its sides;
each sector maps by the geodesic point symmetry about its vertex.  Cells of
the iterated partition are convex; in the euclidean and Klein charts they are
tracked as exact polygons (clipped to a box large enough for the requested
word length), on the sphere as convex cones of signed direction vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geom import (Q, rat, sign, Polygon, Isometry, GeometryError, ChartError,
                   make_point_symmetry, strict_cone_witness, is_admissible,
                   lift, add2, sub2, mul2, dot2, cross2, dot3, cross3, neg3,
                   matvec, matmul, mat_t, eval_line, clip_convex, poly_area2,
                   box_polygon, canonical_triple, inside_disk)
from .complexity import Language, ComplexityTable, BudgetExceeded, EXACT


class SingularPoint(RuntimeError):
    """Point on a singular ray or inside the table; the map is undefined."""


@dataclass
class Sector:
    vertex_index: int
    center: tuple
    symmetry: Isometry
    # open sector at vertex i = {x: beyond side i's line, inside side (i-1)'s}
    line_out: tuple   # interior-positive functional that must be negative
    line_in: tuple    # interior-positive functional that must be positive


@dataclass
class SectorPartition:
    polygon: Polygon
    sectors: list

    def locate(self, x):
        """Sector index of an exterior chart point; SingularPoint otherwise."""
        P = self.polygon
        vals = [eval_line(l, x) for l in P.side_lines]
        if all(v >= 0 for v in vals):
            raise SingularPoint("point inside the table or on its boundary")
        p = P.n
        hits = [i for i in range(p)
                if vals[i] < 0 and vals[(i - 1) % p] > 0]
        if len(hits) == 1:
            return hits[0]
        raise SingularPoint("point on a singular ray")


def sector_partition(P: Polygon) -> SectorPartition:
    """The p vertex sectors with their point symmetries; exact."""
    if not P.convex:
        raise GeometryError("outer billiards need a convex table")
    if P.chi == 1 and strict_cone_witness(P.vertex_lifts()) is None:
        raise ChartError("spherical table must lie in an open hemisphere")
    sectors = []
    for i in range(P.n):
        sectors.append(Sector(
            vertex_index=i,
            center=P.vertices[i],
            symmetry=make_point_symmetry(P.chi, P.vertices[i]),
            line_out=P.side_lines[i],
            line_in=P.side_lines[(i - 1) % P.n]))
    return SectorPartition(P, sectors)


def outer_step(P: Polygon, x, partition: SectorPartition | None = None):
    """One exact application of the outer map to a chart point."""
    if P.chi == 1:
        raise ChartError("spherical outer orbits are computed through duality")
    part = partition if partition is not None else sector_partition(P)
    i = part.locate(x)
    if P.chi == -1 and not inside_disk(x):
        raise ChartError("point outside the Klein disk")
    return part.sectors[i].symmetry.apply_affine(x)


# ---------------------------------------------------------------------------
# cells of the iterated partition
# ---------------------------------------------------------------------------

@dataclass
class ConvexRegion:
    """Intersection of strict homogeneous half-plane constraints.

    Constraints are (a, b, c) with the region on the positive side; for the
    Klein chart the open unit disk is an implicit additional constraint.
    """

    chi: int
    constraints: list
    polygon: list | None = None   # clipped chart polygon (chi <= 0)
    witness: tuple | None = None
    nonempty: bool = False


def _neg_line(l):
    return (-l[0], -l[1], -l[2])


def _compose_line_affine(l, s, t):
    """Functional of l(s*x + t) for the euclidean map x -> s*x + t."""
    return (s * l[0], s * l[1], l[0] * t[0] + l[1] * t[1] + l[2])


def _compose_line_matrix(l, m):
    """Functional x -> l(M x) on homogeneous triples."""
    return (l[0] * m[0][0] + l[1] * m[1][0] + l[2] * m[2][0],
            l[0] * m[0][1] + l[1] * m[1][1] + l[2] * m[2][1],
            l[0] * m[0][2] + l[1] * m[1][2] + l[2] * m[2][2])


def _disk_meets_polygon(poly) -> bool:
    """Open unit disk intersects the interior of a convex chart polygon."""
    if len(poly) < 3 or poly_area2(poly) == 0:
        return False
    if any(inside_disk(v) for v in poly):
        return True
    vals = [eval_line(l, (Q(0), Q(0)))
            for l in (cross3(lift(poly[i]), lift(poly[(i + 1) % len(poly)]))
                      for i in range(len(poly)))]
    if all(v > 0 for v in vals):
        return True  # polygon contains the disk center
    for i in range(len(poly)):
        a, b = poly[i], poly[(i + 1) % len(poly)]
        d = sub2(b, a)
        dd = dot2(d, d)
        if dd == 0:
            continue
        t = -dot2(a, d) / dd
        t = Q(0) if t < 0 else (Q(1) if t > 1 else t)
        c = add2(a, mul2(t, d))
        if inside_disk(c):
            return True
    return False


def word_cell(P: Polygon, word, box_halfwidth=None) -> ConvexRegion:
    """Exact cell of a vertex word: the set of starting points whose first
    len(word) letters match; possibly empty."""
    part = sector_partition(P)
    word = tuple(word)
    if not word:
        raise GeometryError("empty word")
    if P.chi == 1:
        cons = _sphere_cell_constraints(P, part, word)
        w = strict_cone_witness(cons)
        return ConvexRegion(1, cons, None, w, w is not None)
    cons = []
    if P.chi == 0:
        s, t = Q(1), (Q(0), Q(0))
        for k, a in enumerate(word):
            sec = part.sectors[a]
            cons.append(_neg_line(_compose_line_affine(sec.line_out, s, t)))
            cons.append(_compose_line_affine(sec.line_in, s, t))
            c = sec.center
            s, t = -s, sub2(mul2(Q(2), c), t)
    else:
        m = ((Q(1), Q(0), Q(0)), (Q(0), Q(1), Q(0)), (Q(0), Q(0), Q(1)))
        for a in word:
            sec = part.sectors[a]
            cons.append(_neg_line(_compose_line_matrix(sec.line_out, m)))
            cons.append(_compose_line_matrix(sec.line_in, m))
            m = matmul(sec.symmetry.m, m)
    if box_halfwidth is None:
        box_halfwidth = _default_box(P, len(word))
    poly = box_polygon(-box_halfwidth, -box_halfwidth,
                       box_halfwidth, box_halfwidth)
    for l in cons:
        poly = clip_convex(poly, l)
        if not poly:
            break
    alive = bool(poly) and poly_area2(poly) > 0
    if alive and P.chi == -1:
        alive = _disk_meets_polygon(poly)
    witness = None
    if alive:
        n = len(poly)
        cx = sum(v[0] for v in poly) / n
        cy = sum(v[1] for v in poly) / n
        witness = (cx, cy)
    return ConvexRegion(P.chi, cons, poly if alive else [], witness, alive)


def _default_box(P: Polygon, n: int):
    xs = [abs(v[0]) for v in P.vertices] + [abs(v[1]) for v in P.vertices]
    r = max(xs)
    diam = 2 * r
    if P.chi == -1:
        return Q(2)
    return 4 * diam * (n + 4) + 4 * r + 4


def _sphere_cell_constraints(P: Polygon, part: SectorPartition, word):
    poles = [cross3(lift(P.vertices[i]), lift(P.vertices[(i + 1) % P.n]))
             for i in range(P.n)]
    m = ((Q(1), Q(0), Q(0)), (Q(0), Q(1), Q(0)), (Q(0), Q(0), Q(1)))
    cons = []
    for a in word:
        n_out = matvec(mat_t(m), poles[a])            # x . (M^T n) = (Mx) . n
        n_in = matvec(mat_t(m), poles[(a - 1) % P.n])
        cons.append(neg3(n_out))
        cons.append(n_in)
        m = matmul(part.sectors[a].symmetry.m, m)
    return cons


# ---------------------------------------------------------------------------
# language enumeration
# ---------------------------------------------------------------------------

def enumerate_outer_language(P: Polygon, max_len: int, budget: int = 10 ** 8,
                             store_words_to: int = 12,
                             box_factor=None) -> tuple[Language, ComplexityTable]:
    """Exact breadth-first cell enumeration of the outer language.

    f(n) is the number of nonempty open cells of length n.  Euclidean and
    Klein cells are maintained as clipped convex polygons (a cell untouched by
    all sector lines passes through unclipped); spherical cells are convex
    cones of signed vectors decided by exact feasibility.
    """
    part = sector_partition(P)
    lang = Language(P.n, EXACT)
    if P.chi == 1:
        return _enumerate_sphere(P, part, max_len, budget, lang)
    box = _default_box(P, max_len) if box_factor is None else \
        box_factor * (max_len + 4) + _default_box(P, 0)
    corner = box_polygon(-box, -box, box, box)
    frontier = []
    for i, sec in enumerate(part.sectors):
        poly = clip_convex(corner, _neg_line(sec.line_out))
        poly = clip_convex(poly, sec.line_in)
        if poly and poly_area2(poly) > 0:
            if P.chi != -1 or _disk_meets_polygon(poly):
                word = (i,)
                if 1 <= store_words_to:
                    lang.add(word)
                if P.chi == 0:
                    frontier.append((word, poly, Q(-1),
                                     mul2(Q(2), sec.center)))
                else:
                    frontier.append((word, poly, sec.symmetry.m, None))
    counts = {1: len(frontier)}
    nodes = len(frontier)
    sec_lines = [(part.sectors[i].line_out, part.sectors[i].line_in)
                 for i in range(P.n)]
    for depth in range(2, max_len + 1):
        nxt = []
        for item in frontier:
            nodes += 1
            if nodes > budget:
                for n, c in counts.items():
                    lang.set_count(n, c)
                raise BudgetExceeded("cell budget exceeded", lang)
            if P.chi == 0:
                word, poly, s, t = item
            else:
                word, poly, m, _ = item
            last = word[-1]
            for j in range(P.n):
                if j == last:
                    continue
                lo, li = sec_lines[j]
                if P.chi == 0:
                    c1 = _neg_line(_compose_line_affine(lo, s, t))
                    c2 = _compose_line_affine(li, s, t)
                else:
                    c1 = _neg_line(_compose_line_matrix(lo, m))
                    c2 = _compose_line_matrix(li, m)
                v1 = [eval_line(c1, q) for q in poly]
                v2 = [eval_line(c2, q) for q in poly]
                if all(v <= 0 for v in v1) or all(v <= 0 for v in v2):
                    continue  # misses the open sector entirely
                sec = part.sectors[j]
                if all(v > 0 for v in v1) and all(v > 0 for v in v2):
                    child_poly = poly  # strictly inside: no clipping needed
                else:
                    child_poly = clip_convex(poly, c1)
                    child_poly = clip_convex(child_poly, c2)
                    if not child_poly or poly_area2(child_poly) == 0:
                        continue
                    if P.chi == -1 and not _disk_meets_polygon(child_poly):
                        continue
                w2 = word + (j,)
                if depth <= store_words_to:
                    lang.add(w2)
                if P.chi == 0:
                    nxt.append((w2, child_poly, -s,
                                sub2(mul2(Q(2), sec.center), t)))
                else:
                    nxt.append((w2, child_poly,
                                matmul(sec.symmetry.m, m), None))
        frontier = nxt
        counts[depth] = len(frontier)
        if not frontier:
            break
    for n, c in counts.items():
        lang.set_count(n, c)
    table = ComplexityTable(ns=sorted(counts), f=[counts[n] for n in sorted(counts)])
    return lang, table


def _enumerate_sphere(P, part, max_len, budget, lang):
    poles = [cross3(lift(P.vertices[i]), lift(P.vertices[(i + 1) % P.n]))
             for i in range(P.n)]
    ident = ((Q(1), Q(0), Q(0)), (Q(0), Q(1), Q(0)), (Q(0), Q(0), Q(1)))
    frontier = []
    for i in range(P.n):
        cons = [neg3(poles[i]), poles[(i - 1) % P.n]]
        w = strict_cone_witness(cons)
        if w is not None:
            lang.add((i,))
            frontier.append(((i,), cons, matmul(part.sectors[i].symmetry.m,
                                                ident), w))
    counts = {1: len(frontier)}
    nodes = len(frontier)
    for depth in range(2, max_len + 1):
        nxt = []
        for word, cons, m, wit in frontier:
            nodes += 1
            if nodes > budget:
                for n, c in counts.items():
                    lang.set_count(n, c)
                raise BudgetExceeded("cell budget exceeded", lang)
            mt = mat_t(m)
            for j in range(P.n):
                if j == word[-1]:
                    continue
                c1 = neg3(matvec(mt, poles[j]))
                c2 = matvec(mt, poles[(j - 1) % P.n])
                new_cons = cons + [c1, c2]
                if wit is not None and dot3(wit, c1) > 0 and dot3(wit, c2) > 0:
                    w2_wit = wit
                else:
                    w2_wit = strict_cone_witness(new_cons)
                if w2_wit is not None:
                    w2 = word + (j,)
                    lang.add(w2)
                    nxt.append((w2, new_cons,
                                matmul(part.sectors[j].symmetry.m, m), w2_wit))
        frontier = nxt
        counts[depth] = len(frontier)
        if not frontier:
            break
    for n, c in counts.items():
        lang.set_count(n, c)
    table = ComplexityTable(ns=sorted(counts), f=[counts[n] for n in sorted(counts)])
    return lang, table


# ---------------------------------------------------------------------------
# periodic census (euclidean)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PeriodRecord:
    point: tuple
    period: int
    radius: float
    word: tuple


@dataclass
class PeriodCensus:
    records: list
    non_returned: int
    skipped_singular: int
    slope: float
    intercept: float
    r2: float
    c_lower: float

    @property
    def all_periodic(self):
        return self.non_returned == 0


def periodic_census(P: Polygon, r_max, samples: int, seed: int,
                    step_cap: int = 200000, keep_word_to: int = 64) -> PeriodCensus:
    """Exact periods of random rational exterior points of a euclidean table.

    Every regular point of a rational table is periodic; samples that hit a
    singular ray are skipped, samples exceeding the step cap are flagged.
    """
    if P.chi != 0:
        raise GeometryError("periodic census is a euclidean-table experiment")
    import random
    rng = random.Random(seed)
    part = sector_partition(P)
    r_max = rat(r_max)
    records = []
    non_returned = 0
    skipped = 0
    produced = 0
    while produced < samples:
        den = rng.randint(1, 64)
        x = (Q(rng.randint(-int(r_max) * den, int(r_max) * den), den),
             Q(rng.randint(-int(r_max) * den, int(r_max) * den), den))
        if x[0] * x[0] + x[1] * x[1] > r_max * r_max:
            continue
        try:
            part.locate(x)
        except SingularPoint:
            skipped += 1
            continue
        produced += 1
        cur = x
        word = []
        period = None
        regular = True
        for k in range(1, step_cap + 1):
            try:
                i = part.locate(cur)
            except SingularPoint:
                regular = False  # orbit meets a singular ray: not a regular point
                break
            if len(word) < keep_word_to:
                word.append(i)
            cur = part.sectors[i].symmetry.apply_affine(cur)
            if cur == x:
                period = k
                break
        if not regular:
            skipped += 1
            produced -= 1
            continue
        if period is None:
            non_returned += 1
            continue
        radius = math.hypot(float(x[0]), float(x[1]))
        records.append(PeriodRecord(x, period, radius, tuple(word)))
    if len(records) >= 2:
        xs = np.array([r.radius for r in records])
        ys = np.array([float(r.period) for r in records])
        A = np.vstack([xs, np.ones_like(xs)]).T
        coef, *_ = np.linalg.lstsq(A, ys, rcond=None)
        pred = A @ coef
        ss_res = float(np.sum((ys - pred) ** 2))
        ss_tot = float(np.sum((ys - ys.mean()) ** 2))
        r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
        slope, intercept = float(coef[0]), float(coef[1])
        c_lower = min(r.period / r.radius for r in records if r.radius > 0)
    else:
        slope = intercept = r2 = 0.0
        c_lower = 0.0
    return PeriodCensus(records, non_returned, skipped, slope, intercept,
                        r2, c_lower)


# ---------------------------------------------------------------------------
# spherical duality
# ---------------------------------------------------------------------------

@dataclass
class DualityResult:
    dual: Polygon
    # outer letter (vertex j of P) -> side index of the dual table
    letter_to_side: dict
    dual_admissible: bool


def dualize(P: Polygon) -> DualityResult:
    """Polar-dual table: sides of the dual are the polars of the vertices.

    The chart center must be interior to P so the dual stays in the chart.
    """
    if P.chi != 1:
        raise GeometryError("duality is a spherical construction")
    if not P.convex:
        raise GeometryError("duality needs a convex table")
    if strict_cone_witness(P.vertex_lifts()) is None:
        raise ChartError("table must lie in an open hemisphere")
    p = P.n
    duals = []
    for i in range(p):
        n = cross3(lift(P.vertices[i]), lift(P.vertices[(i + 1) % p]))
        if n[2] <= 0:
            raise ChartError("dual vertex leaves the chart; "
                             "center the table around the origin")
        duals.append((n[0] / n[2], n[1] / n[2]))
    dual = Polygon(1, duals, name=(P.name + "*") if P.name else "dual")
    # side s of the dual joins the poles of sides s and s+1 of P, hence lies
    # on the polar circle of their shared vertex v_{s+1}
    letter_to_side = {j: (j - 1) % p for j in range(p)}
    return DualityResult(dual, letter_to_side, is_admissible(dual))


def duality_language_check(P: Polygon, max_len: int, budget: int = 10 ** 7):
    """Compare the outer language of P with the transported side language of
    the dual table, letter for letter; returns per-length results."""
    from .inner import enumerate_side_language
    res = dualize(P)
    if not res.dual_admissible:
        raise GeometryError("dual table is not admissible; "
                            "inner enumeration unavailable")
    outer_lang, _ = enumerate_outer_language(P, max_len, budget=budget,
                                             store_words_to=max_len)
    inner_lang = enumerate_side_language(res.dual, max_len, budget=budget)
    tr = res.letter_to_side
    report = {}
    for n in range(1, max_len + 1):
        transported = {tuple(tr[a] for a in w) for w in outer_lang.at(n)}
        report[n] = (transported == inner_lang.at(n),
                     len(outer_lang.at(n)), len(inner_lang.at(n)))
    return report, outer_lang, inner_lang, res


# ---------------------------------------------------------------------------
# hyperbolic circle map
# ---------------------------------------------------------------------------

@dataclass
class RotationResult:
    rho: float
    rho_raw: float
    is_large: bool
    cycles: list          # list of (theta tuple, Lambda)
    iterations: int


def _tau_factory(P: Polygon):
    """Float boundary extension of the hyperbolic outer map on angles."""
    lines = [[float(c) for c in l] for l in P.side_lines]
    mats = [[[float(c) for c in row] for row in
             make_point_symmetry(-1, v).m] for v in P.vertices]
    p = P.n

    def tau(theta):
        x, y = math.cos(theta), math.sin(theta)
        vals = [l[0] * x + l[1] * y + l[2] for l in lines]
        i = None
        for k in range(p):
            if vals[k] < 0 and vals[(k + 1) % p] > 0:
                i = k
                break
        if i is None:
            i = min(range(p), key=lambda k: vals[k])
        m = mats[i]
        X = m[0][0] * x + m[0][1] * y + m[0][2]
        Y = m[1][0] * x + m[1][1] * y + m[1][2]
        Z = m[2][0] * x + m[2][1] * y + m[2][2]
        return math.atan2(Y / Z, X / Z), i

    return tau


def _rho_estimate(tau, theta0, iters):
    theta = theta0
    total = 0.0
    for _ in range(iters):
        nt, _ = tau(theta)
        d = (theta - nt) % (2 * math.pi)
        total += d
        theta = nt
    return total / (2 * math.pi * iters)


def circle_map_rotation(P: Polygon, iters: int = 200000,
                        tolerance: float = 1e-6) -> RotationResult:
    """Rotation number of the ideal-boundary extension, with a periodic-orbit
    certificate for largeness.

    The raw Birkhoff estimate is refined by one Richardson step over doubled
    iteration counts.  The table is large when rho is within tolerance of 1/p
    and the p-th return map has a cycle whose derivative product (computed
    through the chord-ratio distortion rule) differs from 1.
    """
    if P.chi != -1:
        raise GeometryError("circle map lives on the hyperbolic ideal boundary")
    if not P.convex:
        raise GeometryError("outer billiards need a convex table")
    tau = _tau_factory(P)
    theta0 = 0.7853981
    r1 = _rho_estimate(tau, theta0, iters // 2)
    r2 = _rho_estimate(tau, theta0, iters)
    rho_raw = r2
    rho = 2 * r2 - r1
    p = P.n
    cycles = _find_p_cycles(P, tau, p)
    is_large = abs(rho - 1.0 / p) < tolerance and \
        any(abs(lam - 1.0) > 0.05 for _, lam in cycles)
    if is_large:
        rho = 1.0 / p  # mode-locked: the cycle pins the exact value
    return RotationResult(rho, rho_raw, is_large, cycles, iters)


def _find_p_cycles(P, tau, p, scan: int = 4096):
    """Zeros of the lifted p-th return displacement minus one full turn."""

    def disp(theta):
        t = theta
        total = 0.0
        for _ in range(p):
            nt, _ = tau(t)
            total += (t - nt) % (2 * math.pi)
            t = nt
        return total - 2 * math.pi

    vals = []
    for k in range(scan + 1):
        th = 2 * math.pi * k / scan
        vals.append((th, disp(th)))
    cycles = []
    for (t1, d1), (t2, d2) in zip(vals, vals[1:]):
        if d1 == 0.0 or d1 * d2 < 0:
            lo, hi = t1, t2
            flo = d1
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                fm = disp(mid)
                if flo * fm <= 0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            theta = 0.5 * (lo + hi)
            lam = _cycle_distortion(P, tau, theta, p)
            if not any(abs(theta - c[0][0]) < 1e-7 for c in cycles):
                cycles.append(((theta,), lam))
    return cycles


def _cycle_distortion(P, tau, theta, p):
    """Product of chord-ratio derivatives |x' - z| / |x - z| along a cycle."""
    lam = 1.0
    t = theta
    for _ in range(p):
        x = (math.cos(t), math.sin(t))
        nt, i = tau(t)
        x2 = (math.cos(nt), math.sin(nt))
        z = (float(P.vertices[i][0]), float(P.vertices[i][1]))
        num = math.hypot(x2[0] - z[0], x2[1] - z[1])
        den = math.hypot(x[0] - z[0], x[1] - z[1])
        lam *= num / den
        t = nt
    return lam


# ---------------------------------------------------------------------------
# the singularity graph (for arrangement cross-checks)
# ---------------------------------------------------------------------------

def singularity_graph_segments(P: Polygon, n: int, box_halfwidth):
    """Edges of the n-th singularity graph as exact segments clipped to a box:
    the sector rays together with their first n-1 pullbacks."""
    if P.chi != 0:
        raise GeometryError("the segment construction is euclidean")
    part = sector_partition(P)
    b = rat(box_halfwidth)
    rays = []
    for i, sec in enumerate(part.sectors):
        v = P.vertices[i]
        prev = P.vertices[(i - 1) % P.n]
        d = sub2(v, prev)
        far = add2(v, mul2(8 * b, d))
        rays.append((v, far))
    level = [s for s in (_clip_segment_box(a, c, b) for a, c in rays)
             if s is not None]
    all_edges = list(level)
    for _ in range(n - 1):
        nxt = []
        for i, sec in enumerate(part.sectors):
            m = sec.symmetry
            for a, c in level:
                ia, ic = m.apply_affine(a), m.apply_affine(c)
                seg = _clip_segment_halfplane((ia, ic), _neg_line(sec.line_out))
                if seg is None:
                    continue
                seg = _clip_segment_halfplane(seg, sec.line_in)
                if seg is None:
                    continue
                nxt.append(seg)
        all_edges.extend(nxt)
        level = nxt
    return all_edges


def _clip_segment_halfplane(seg, l):
    a, b = seg
    va, vb = eval_line(l, a), eval_line(l, b)
    if va <= 0 and vb <= 0:
        return None
    if va >= 0 and vb >= 0:
        return seg
    t = va / (va - vb)
    mid = add2(a, mul2(t, sub2(b, a)))
    return (a, mid) if va > 0 else (mid, b)


def _clip_segment_box(a, c, b):
    seg = (a, c)
    for l in ((Q(1), Q(0), b), (Q(-1), Q(0), b), (Q(0), Q(1), b), (Q(0), Q(-1), b)):
        if seg is None:
            return None
        seg = _clip_segment_halfplane(seg, l)
    if seg is not None and seg[0] == seg[1]:
        return None
    return seg
