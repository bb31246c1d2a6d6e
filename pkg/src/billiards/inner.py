"""The billiard map inside a geodesic polygon: orbit tracing, unfolding,
exact word feasibility, side-language enumeration, and the census of
corner-to-corner orbits (generalized diagonals / strongly singular orbits).

Exact language enumeration is restricted to convex tables, where the side
coding and the convex-partition coding coincide and a word is realizable
iff an open cone of lines crosses all its unfolded sides with consistent
orientation.  Non-convex tables only admit sampled lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .geom import (Q, Polygon, Isometry, GeometryError, ChartError,
                   ConeTracker2D, strict_cone_witness,
                   nonstrict_cone_nontrivial, is_admissible,
                   lift, sub2, add2, mul2, cross2, dot3, cross3, neg3,
                   eval_line, line_through, sign)
from .complexity import Language, BudgetExceeded, EXACT, SAMPLED


class CornerHit(RuntimeError):
    """Orbit reached a polygon corner; carries the corner index."""

    def __init__(self, corner, where="end"):
        super().__init__("orbit hits corner %d" % corner)
        self.corner = corner
        self.where = where


class NonConvexError(GeometryError):
    """Exact enumeration requested on a non-convex table."""


@dataclass(frozen=True)
class Chord:
    """Directed geodesic chord of the table; endpoints on the boundary."""

    b: tuple
    e: tuple
    side_b: int
    side_e: int

    def reversed(self):
        return Chord(self.e, self.b, self.side_e, self.side_b)


def make_chord(P: Polygon, b, e) -> Chord:
    locb = P.locate_boundary(b)
    loce = P.locate_boundary(e)
    if locb is None or loce is None:
        raise GeometryError("chord endpoints must lie on the boundary")
    if locb[0] == "corner":
        raise CornerHit(locb[1], "begin")
    if loce[0] == "corner":
        raise CornerHit(loce[1], "end")
    if locb[1] == loce[1]:
        raise GeometryError("chord endpoints on the same side")
    return Chord(tuple(b), tuple(e), locb[1], loce[1])


def chord_from_boundary_params(P: Polygon, i: int, t, j: int, s) -> Chord:
    """Chord from parameter t on side i to parameter s on side j (0 < t,s < 1)."""
    a1, b1 = P.side(i)
    a2, b2 = P.side(j)
    t, s = Q(t), Q(s)
    p = add2(a1, mul2(t, sub2(b1, a1)))
    q = add2(a2, mul2(s, sub2(b2, a2)))
    return Chord(p, q, i, j)


def _ray_first_exit(P: Polygon, start, d, skip_side):
    """First boundary hit of the ray start + t d, t > 0; exact."""
    best = None
    for i in range(P.n):
        a, b = P.side(i)
        s = sub2(b, a)
        den = cross2(d, s)
        if den == 0:
            continue
        w = sub2(a, start)
        t = cross2(w, s) / den
        u = cross2(w, d) / den
        if t <= 0 or not (0 <= u <= 1):
            continue
        if best is None or t < best[0]:
            best = (t, u, i)
    if best is None:
        raise GeometryError("ray does not exit the polygon (invalid chord?)")
    t, u, i = best
    if u == 0:
        raise CornerHit(i)
    if u == 1:
        raise CornerHit((i + 1) % P.n)
    return add2(start, mul2(t, d)), i


def billiard_step(P: Polygon, x: Chord, forward: bool = True) -> Chord:
    """Reflect the chord at the side containing its end; exact.

    Raises CornerHit when the relevant endpoint is a corner or the reflected
    ray runs into one.  Backward steps use time reversal.
    """
    if not forward:
        return billiard_step(P, x.reversed()).reversed()
    refl = P.side_reflection(x.side_e)
    b_img = refl.apply_affine(x.b)
    d = sub2(x.e, b_img)
    if d == (0, 0):
        raise GeometryError("degenerate reflected direction")
    hit, side = _ray_first_exit(P, x.e, d, x.side_e)
    return Chord(x.e, hit, x.side_e, side)


@dataclass
class Trace:
    word: tuple
    chords: list
    hit_corner: int | None = None

    @property
    def singular(self):
        return self.hit_corner is not None


def trace_orbit(P: Polygon, x: Chord, n: int) -> Trace:
    """Follow the orbit until the word has n+1 letters or a corner is hit."""
    word = [x.side_b, x.side_e]
    chords = [x]
    cur = x
    corner = None
    while len(word) < n + 1:
        try:
            cur = billiard_step(P, cur)
        except CornerHit as err:
            corner = err.corner
            break
        word.append(cur.side_e)
        chords.append(cur)
    return Trace(tuple(word), chords, corner)


# ---------------------------------------------------------------------------
# unfolding
# ---------------------------------------------------------------------------

@dataclass
class Mirror:
    """One unfolded side crossed by a corridor, endpoints ordered for travel."""

    side: int
    frame: Isometry
    A: tuple  # homogeneous triples (signed for the sphere)
    B: tuple
    A_aff: tuple | None
    B_aff: tuple | None
    in_chart: bool


def _ordered_mirror(P: Polygon, g: Isometry, side_idx: int) -> Mirror:
    va, vb = P.side(side_idx)
    ta = g.apply_vec(lift(va))
    tb = g.apply_vec(lift(vb))
    if g.parity < 0:
        ta, tb = tb, ta
    in_chart = True
    aff = []
    for t in (ta, tb):
        if (P.chi == 1 and t[2] <= 0) or t[2] == 0:
            in_chart = False
            aff.append(None)
        else:
            aff.append((t[0] / t[2], t[1] / t[2]))
    return Mirror(side_idx, g, ta, tb, aff[0], aff[1], in_chart)


def unfold_bounces(P: Polygon, bounce_sides) -> tuple[list, Isometry]:
    """Mirrors for a reflection itinerary: mirror_k is the image of side b_k
    under the first k-1 reflections; returns (mirrors, final isometry)."""
    g = Isometry.identity(P.chi)
    mirrors = []
    for s in bounce_sides:
        g = g.compose(P.side_reflection(s))
        mirrors.append(_ordered_mirror(P, g, s))
    return mirrors, g


@dataclass
class UnfoldedCorridor:
    word: tuple
    mirrors: list
    isometries: list  # g_0 = id, g_1, ..., one per mirror
    chart_ok: bool


def unfold_code(P: Polygon, word) -> UnfoldedCorridor:
    """Unfolded corridor of a side word: the entry side followed by the
    reflected images of each bounced side; spherical corridors flag copies
    that leave the chart."""
    word = tuple(word)
    if not word:
        raise GeometryError("empty word")
    for a, b in zip(word, word[1:]):
        if a == b:
            raise GeometryError("consecutive letters must differ")
    g = Isometry.identity(P.chi)
    mirrors = [_ordered_mirror(P, g, word[0])]
    isos = [g]
    for s in word[1:]:
        g = g.compose(P.side_reflection(s))
        mirrors.append(_ordered_mirror(P, g, s))
        isos.append(g)
    chart_ok = all(m.in_chart for m in mirrors)
    if P.chi == 1:
        for giso in isos:
            for v in P.vertices:
                if giso.apply_vec(lift(v))[2] <= 0:
                    chart_ok = False
    return UnfoldedCorridor(word, mirrors, isos, chart_ok)


def _corridor_constraints(mirrors) -> list:
    """Homogeneous constraints on a line functional l: l.A > 0 > l.B per mirror."""
    cons = []
    for m in mirrors:
        cons.append(m.A)
        cons.append(neg3(m.B))
    return cons


def word_feasible(P: Polygon, word, strict: bool = True) -> bool:
    """True iff some transversal line realizes the side word.

    Exact strict-cone feasibility over the unfolded corridor; convex tables
    only.  Non-strict mode asks for a nonzero functional with weak signs.
    """
    if not P.convex:
        raise NonConvexError("exact word feasibility needs a convex table")
    word = tuple(word)
    if len(word) == 1:
        return 0 <= word[0] < P.n
    corr = unfold_code(P, word)
    cons = _corridor_constraints(corr.mirrors)
    if strict:
        return strict_cone_witness(cons) is not None
    return nonstrict_cone_nontrivial(cons)


# ---------------------------------------------------------------------------
# exact language enumeration
# ---------------------------------------------------------------------------

def enumerate_side_language(P: Polygon, max_len: int,
                            budget: int = 10 ** 7) -> Language:
    """Breadth-first enumeration of the side language up to max_len.

    Children extend feasible words by one letter; feasibility is the exact
    strict-cone search over the corridor constraints, with the parent's
    witness line tried first (it certifies most feasible children outright).
    """
    if not P.convex:
        raise NonConvexError("exact enumeration needs a convex table; "
                             "use sample_side_language for lower bounds")
    lang = Language(P.n, EXACT)
    seen = 0
    # state per word: (final corridor isometry, constraints, witness)
    frontier = {}
    for s in range(P.n):
        w = (s,)
        lang.add(w)
        mirrors = [_ordered_mirror(P, Isometry.identity(P.chi), s)]
        frontier[w] = (Isometry.identity(P.chi),
                       _corridor_constraints(mirrors), None)
        seen += 1
    for _length in range(2, max_len + 1):
        nxt = {}
        for w, (g, cons, witness) in frontier.items():
            for s in range(P.n):
                if s == w[-1]:
                    continue
                seen += 1
                if seen > budget:
                    lang.seal_counts()
                    raise BudgetExceeded("word budget %d exceeded" % budget, lang)
                g_next = g.compose(P.side_reflection(s))
                mirror = _ordered_mirror(P, g_next, s)
                c1, c2 = mirror.A, neg3(mirror.B)
                new_cons = cons + [c1, c2]
                if witness is not None and dot3(witness, c1) > 0 \
                        and dot3(witness, c2) > 0:
                    new_witness = witness
                else:
                    # the cone of a constraint subset contains the full cone,
                    # so an empty tail certifies rejection cheaply and a tail
                    # witness that satisfies everything certifies acceptance
                    tail = strict_cone_witness(new_cons[-10:])
                    if tail is None:
                        new_witness = None
                    elif all(dot3(tail, c) > 0 for c in new_cons[:-10]):
                        new_witness = tail
                    else:
                        new_witness = strict_cone_witness(new_cons)
                if new_witness is not None:
                    w2 = w + (s,)
                    lang.add(w2)
                    nxt[w2] = (g_next, new_cons, new_witness)
        frontier = nxt
        if not frontier:
            break
    lang.seal_counts()
    return lang


def sample_side_language(P: Polygon, max_len: int, samples: int, seed: int,
                         trace_len: int | None = None) -> Language:
    """Lower-bound language from exact traces of random chords (any table)."""
    import random
    rng = random.Random(seed)
    lang = Language(P.n, SAMPLED)
    trace_len = trace_len if trace_len is not None else max_len + 2
    produced = 0
    attempts = 0
    while produced < samples and attempts < 50 * samples:
        attempts += 1
        i = rng.randrange(P.n)
        j = rng.randrange(P.n)
        if i == j:
            continue
        t = Q(rng.randint(1, 997), 998)
        s = Q(rng.randint(1, 997), 998)
        try:
            x = chord_from_boundary_params(P, i, t, j, s)
            if not P.convex:
                continue
            tr = trace_orbit(P, x, trace_len)
        except (CornerHit, GeometryError):
            continue
        produced += 1
        word = tr.word
        for n in range(1, min(max_len, len(word)) + 1):
            for k in range(len(word) - n + 1):
                lang.add(word[k:k + n])
    lang.seal_counts()
    return lang


# ---------------------------------------------------------------------------
# generalized diagonals and strongly singular orbits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiagonalRecord:
    word: tuple        # bounce sides, length = segments - 1
    start_corner: int
    end_corner: int
    segments: int
    family: bool = False


@dataclass
class DiagonalCensus:
    mode: str
    records: list = field(default_factory=list)
    chart_exits: int = 0

    def gd(self, n: int) -> int:
        return sum(1 for r in self.records if r.segments == n and not r.family)

    def fgd(self, n: int) -> int:
        return sum(1 for r in self.records if r.segments == n and r.family)

    def gd_table(self, max_n):
        return {n: self.gd(n) for n in range(1, max_n + 1)}

    def fgd_table(self, max_n):
        return {n: self.fgd(n) for n in range(1, max_n + 1)}

    def GD(self, n: int) -> int:
        return sum(self.gd(k) for k in range(3, n + 1))

    def FGD(self, n: int) -> int:
        return sum(self.fgd(k) for k in range(3, n + 1))


def _direction_wedge_constraints(u, A, B):
    """Half-plane normals on directions d from u crossing segment [A, B]
    with A on the travel left: cross(d, A-u) < 0 < ... normalized to
    <d, h> > 0 form."""
    ca = sub2(A, u)
    cb = sub2(B, u)
    # cross(d, ca) > 0  <=>  <d, (ca_y, -ca_x)> ... cross(d,c) = d_x c_y - d_y c_x
    h1 = (ca[1], -ca[0])
    h2 = (-cb[1], cb[0])
    return h1, h2


def count_singular_orbits(P: Polygon, max_segments: int,
                          mode: str = "generalized_diagonal",
                          budget: int = 10 ** 7) -> DiagonalCensus:
    """Census of corner-to-corner orbits with at most max_segments segments.

    For convex tables strongly singular orbits and generalized diagonals
    coincide, so both modes run the same exact search: a breadth-first walk
    over reflection itineraries from each start corner, pruned by the exact
    pencil of directions that crosses every unfolded mirror in order.  On the
    sphere a corner pair whose unfolded images coincide or are antipodal
    yields a family (counted once) when the pencil is nonempty.
    """
    if mode not in ("generalized_diagonal", "strongly_singular"):
        raise GeometryError("unknown census mode %r" % mode)
    if not P.convex:
        raise NonConvexError("exact censuses need a convex table")
    if P.chi == 1:
        if not is_admissible(P):
            raise GeometryError("spherical censuses need an admissible table")
    census = DiagonalCensus(mode)
    nodes = 0
    for cu in range(P.n):
        u = P.vertices[cu]
        u_lift = lift(u)
        # depth 0: direct corner-to-corner chords (1-segment diagonals)
        for cv in range(P.n):
            if cv == cu or cv == (cu + 1) % P.n or cu == (cv + 1) % P.n:
                continue
            v = P.vertices[cv]
            if any(_strictly_between(u, v, P.vertices[cw])
                   for cw in range(P.n) if cw not in (cu, cv)):
                continue
            census.records.append(DiagonalRecord((), cu, cv, 1))
        # BFS over bounce itineraries
        frontier = []
        g0 = Isometry.identity(P.chi)
        for s in range(P.n):
            if s == cu or s == (cu - 1) % P.n:
                continue
            g1 = g0.compose(P.side_reflection(s))
            mirror = _ordered_mirror(P, g1, s)
            if not mirror.in_chart:
                census.chart_exits += 1
                continue
            h1, h2 = _direction_wedge_constraints(u, mirror.A_aff, mirror.B_aff)
            cone = ConeTracker2D.from_halfplanes(h1, h2)
            if cone.alive:
                frontier.append(((s,), g1, cone, mirror))
        depth = 1
        while frontier and depth < max_segments:
            nxt = []
            for word, g, cone, last_mirror in frontier:
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded("census budget exceeded", census)
                last_line = line_through(last_mirror.A_aff, last_mirror.B_aff)
                u_side = sign(eval_line(last_line, u))
                for cv in range(P.n):
                    vt = g.apply_vec(lift(P.vertices[cv]))
                    if P.chi == 1 and cross3(u_lift, vt) == (0, 0, 0):
                        census.records.append(DiagonalRecord(
                            word, cu, cv, depth + 1, family=True))
                        continue
                    if vt[2] == 0 or (P.chi == 1 and vt[2] < 0):
                        census.chart_exits += 1
                        continue
                    va = (vt[0] / vt[2], vt[1] / vt[2])
                    if va == u:
                        continue  # degenerate (flat case); no orbit
                    d = sub2(va, u)
                    if cone.contains(d) and \
                            sign(eval_line(last_line, va)) == -u_side != 0:
                        census.records.append(DiagonalRecord(
                            word, cu, cv, depth + 1))
                if depth + 1 >= max_segments:
                    continue
                for s in range(P.n):
                    if s == word[-1]:
                        continue
                    g_child = g.compose(P.side_reflection(s))
                    mirror = _ordered_mirror(P, g_child, s)
                    if not mirror.in_chart:
                        census.chart_exits += 1
                        continue
                    h1, h2 = _direction_wedge_constraints(
                        u, mirror.A_aff, mirror.B_aff)
                    child = cone.copy()
                    child.clip(h1)
                    child.clip(h2)
                    if child.alive:
                        nxt.append((word + (s,), g_child, child, mirror))
            frontier = nxt
            depth += 1
    return census


def _strictly_between(a, b, q) -> bool:
    if cross2(sub2(b, a), sub2(q, a)) != 0:
        return False
    d = sub2(b, a)
    t = (sub2(q, a)[0] / d[0]) if d[0] != 0 else (sub2(q, a)[1] / d[1])
    return 0 < t < 1
