"""Planar geodesic graphs: exact arrangements, joins, and the face/vertex
bookkeeping identity relating a join's face count to its essential vertices
and edge overlaps.

All charts used here are planar (euclidean chart, Klein disk, central
projection), so a geodesic graph is a set of rational segments, rays and
lines.  Unbounded edges are clipped to a rational box strictly containing
every finite intersection point; face counts in the clipped box are stable
under enlarging the box, which is re-verifiable via `stable=True`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geom import (Q, rat, sign, add2, sub2, mul2, dot2, cross2, cross3, lift,
                   canonical_triple, seg_intersection, GeometryError)


# ---------------------------------------------------------------------------
# strokes
# ---------------------------------------------------------------------------

def _canon_point(p):
    return (Q(p[0]), Q(p[1]))


def _line_key(a, b):
    return canonical_triple(*cross3(lift(a), lift(b)))


def _box_clip_param(origin, direction, box):
    """Largest t with origin + t*direction inside the closed box, from t=0."""
    xmin, ymin, xmax, ymax = box
    t_hi = None
    for coord, d, lo, hi in ((origin[0], direction[0], xmin, xmax),
                             (origin[1], direction[1], ymin, ymax)):
        if d == 0:
            if not (lo <= coord <= hi):
                return None
            continue
        t1 = (lo - coord) / d
        t2 = (hi - coord) / d
        t1, t2 = (t1, t2) if t1 <= t2 else (t2, t1)
        if t_hi is None or t2 < t_hi:
            t_hi = t2
        if t1 > 0:  # origin outside the slab in the forward direction
            return None
    return t_hi


class GeodesicGraph:
    """Normalized planar arrangement of rational segments.

    Construction merges collinear overlaps (the support determines the graph),
    introduces a vertex at every crossing and T-junction, and never keeps a
    degenerate valence-2 collinear vertex.  Vertices on the clip box border
    are bookkeeping artifacts of unbounded edges and are excluded from the
    graph's own vertex set.
    """

    def __init__(self, segments=(), rays=(), lines=(), box=None):
        segs = [(_canon_point(a), _canon_point(b)) for a, b in segments]
        rays = [(_canon_point(o), _canon_point(d)) for o, d in rays]
        lines = [(_canon_point(a), _canon_point(b)) for a, b in lines]
        for a, b in segs + lines:
            if a == b:
                raise GeometryError("degenerate stroke")
        for _, d in rays:
            if d == (0, 0):
                raise GeometryError("ray with zero direction")
        self._input = (segs, rays, lines)
        self.box = box if box is not None else self._auto_box()
        self._build()

    def _auto_box(self):
        segs, rays, lines = self._input
        pts = [p for s in segs for p in s] + [o for o, _ in rays]
        supports = []
        for a, b in segs + lines:
            supports.append((a, sub2(b, a)))
        for o, d in rays:
            supports.append((o, d))
        for i in range(len(supports)):
            for j in range(i + 1, len(supports)):
                (p1, d1), (p2, d2) = supports[i], supports[j]
                den = cross2(d1, d2)
                if den != 0:
                    t = cross2(sub2(p2, p1), d2) / den
                    pts.append(add2(p1, mul2(t, d1)))
        if not pts:
            return (Q(-1), Q(-1), Q(1), Q(1))
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        m = max(max(abs(v) for v in xs), max(abs(v) for v in ys), Q(1)) + 1
        return (-m, -m, m, m)

    def enlarged(self, factor=2):
        xmin, ymin, xmax, ymax = self.box
        f = rat(factor)
        return GeodesicGraph(self._input[0], self._input[1], self._input[2],
                             box=(xmin * f, ymin * f, xmax * f, ymax * f))

    # -- normalization ------------------------------------------------------

    def _clip_strokes(self):
        segs, rays, lines = self._input
        box = self.box
        out = list(segs)
        for o, d in rays:
            t = _box_clip_param(o, d, box)
            if t is not None and t > 0:
                out.append((o, add2(o, mul2(t, d))))
        for a, b in lines:
            d = sub2(b, a)
            t1 = _box_clip_param(a, d, box)
            t2 = _box_clip_param(a, (-d[0], -d[1]), box)
            if t1 is not None and t2 is not None and t1 + t2 > 0:
                out.append((add2(a, mul2(-t2, d)), add2(a, mul2(t1, d))))
        return out

    def _build(self):
        strokes = self._clip_strokes()
        # group by supporting line, merge overlapping/touching intervals
        groups = {}
        for a, b in strokes:
            key = _line_key(a, b)
            groups.setdefault(key, []).append((a, b))
        merged = []  # (key, anchor, direction, [(t0, t1)])
        for key, ss in groups.items():
            anchor, other = ss[0]
            d = sub2(other, anchor)
            ivals = []
            for a, b in ss:
                ta = self._param(anchor, d, a)
                tb = self._param(anchor, d, b)
                ivals.append((min(ta, tb), max(ta, tb)))
            ivals.sort()
            acc = [list(ivals[0])]
            for lo, hi in ivals[1:]:
                if lo <= acc[-1][1]:
                    acc[-1][1] = max(acc[-1][1], hi)
                else:
                    acc.append([lo, hi])
            for lo, hi in acc:
                merged.append((key, anchor, d, lo, hi))
        # pairwise intersections across supports
        cuts = [set() for _ in merged]
        for i in range(len(merged)):
            ki, ai, di, loi, hii = merged[i]
            pi = (add2(ai, mul2(loi, di)), add2(ai, mul2(hii, di)))
            for j in range(i + 1, len(merged)):
                kj, aj, dj, loj, hij = merged[j]
                if ki == kj:
                    continue
                pj = (add2(aj, mul2(loj, dj)), add2(aj, mul2(hij, dj)))
                hit = seg_intersection(pi[0], pi[1], pj[0], pj[1])
                if hit is not None:
                    _, _, pt = hit
                    cuts[i].add(self._param(ai, di, pt))
                    cuts[j].add(self._param(aj, dj, pt))
        vertices = {}
        edges = set()

        def vid(p):
            if p not in vertices:
                vertices[p] = len(vertices)
            return vertices[p]

        for i, (key, anchor, d, lo, hi) in enumerate(merged):
            ts = sorted({lo, hi} | {t for t in cuts[i] if lo < t < hi})
            pts = [add2(anchor, mul2(t, d)) for t in ts]
            for a, b in zip(pts, pts[1:]):
                edges.add(tuple(sorted((vid(a), vid(b)))))
        self._vertex_list = [None] * len(vertices)
        for p, i in vertices.items():
            self._vertex_list[i] = p
        self.edges = sorted(edges)
        xmin, ymin, xmax, ymax = self.box
        self._on_border = [p[0] in (xmin, xmax) or p[1] in (ymin, ymax)
                           for p in self._vertex_list]
        self.vertices = [p for p, brd in zip(self._vertex_list, self._on_border)
                         if not brd]
        self._merged = merged

    @staticmethod
    def _param(anchor, d, p):
        w = sub2(p, anchor)
        return w[0] / d[0] if d[0] != 0 else w[1] / d[1]

    # -- queries ------------------------------------------------------------

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_edges(self):
        return len(self.edges)

    def edge_points(self):
        for i, j in self.edges:
            yield (self._vertex_list[i], self._vertex_list[j])

    def on_support(self, p) -> bool:
        p = _canon_point(p)
        for key, anchor, d, lo, hi in self._merged:
            w = sub2(p, anchor)
            if cross2(d, w) != 0:
                continue
            t = self._param(anchor, d, p)
            if lo <= t <= hi:
                return True
        return False

    def join(self, other: "GeodesicGraph", box=None) -> "GeodesicGraph":
        segs = self._input[0] + other._input[0]
        rays = self._input[1] + other._input[1]
        lines = self._input[2] + other._input[2]
        return GeodesicGraph(segs, rays, lines, box=box)

    def is_empty(self):
        return not self._merged

    def __repr__(self):
        return "GeodesicGraph(V=%d, E=%d)" % (self.n_vertices, self.n_edges)


def join_graphs(g1: GeodesicGraph, g2: GeodesicGraph, box=None) -> GeodesicGraph:
    return g1.join(g2, box=box)


# ---------------------------------------------------------------------------
# faces
# ---------------------------------------------------------------------------

def _with_box_border(g: GeodesicGraph, box):
    xmin, ymin, xmax, ymax = box
    border = [((xmin, ymin), (xmax, ymin)), ((xmax, ymin), (xmax, ymax)),
              ((xmax, ymax), (xmin, ymax)), ((xmin, ymax), (xmin, ymin))]
    return GeodesicGraph(g._input[0] + border, g._input[1], g._input[2], box=box)


def face_count(g: GeodesicGraph, chi_chart: int = 1, box=None, stable=False) -> int:
    """Number of open faces the graph cuts the chart box into.

    Computed from Euler bookkeeping on the box-merged arrangement:
    components C with V vertices and E edges leave E - V + C complementary
    regions inside the box.  With `stable=True` the count is re-verified in a
    doubled box (must agree for correctly clipped unbounded edges).
    """
    if chi_chart not in (0, 1):
        raise GeometryError("face counting supports disk (1) and annulus (0) charts")
    work_box = box if box is not None else g.box
    full = _with_box_border(g, work_box)
    count = _faces_by_euler(full)
    if stable:
        bigger = _with_box_border(g.enlarged(2), g.enlarged(2).box)
        if _faces_by_euler(bigger) != count:
            raise GeometryError("face count not stable under box enlargement; "
                                "unbounded edges escape the clip box")
    return count


def _faces_by_euler(full: GeodesicGraph) -> int:
    nv = len(full._vertex_list)
    ne = len(full.edges)
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in full.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    comps = len({find(i) for i in range(nv)})
    return ne - nv + comps


def face_count_by_traversal(g: GeodesicGraph, box=None) -> int:
    """Independent face count: walk half-edge cycles of the planar subdivision.

    Faces inside the box equal (number of boundary cycles) minus (number of
    connected components); serves as an oracle for `face_count`.
    """
    work_box = box if box is not None else g.box
    full = _with_box_border(g, work_box)
    verts = full._vertex_list
    adj = {i: [] for i in range(len(verts))}
    for i, j in full.edges:
        adj[i].append(j)
        adj[j].append(i)

    def angle_key(u, v):
        d = sub2(verts[v], verts[u])
        quad = (0 if d[0] > 0 and d[1] >= 0 else
                1 if d[0] <= 0 and d[1] > 0 else
                2 if d[0] < 0 and d[1] <= 0 else 3)
        return (quad, d)

    import functools
    for u in adj:
        def cmp(a, b, u=u):
            ka, kb = angle_key(u, a), angle_key(u, b)
            if ka[0] != kb[0]:
                return ka[0] - kb[0]
            c = cross2(ka[1], kb[1])
            return -1 if c > 0 else (1 if c < 0 else 0)
        adj[u].sort(key=functools.cmp_to_key(cmp))

    pos = {(u, v): k for u in adj for k, v in enumerate(adj[u])}
    seen = set()
    cycles = 0
    for u in adj:
        for v in adj[u]:
            if (u, v) in seen:
                continue
            cycles += 1
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                # next half-edge: rotate the reversed edge clockwise at b
                k = pos[(b, a)]
                c = adj[b][(k - 1) % len(adj[b])]
                a, b = b, c
    parent = list(range(len(verts)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in full.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    comps = len({find(i) for i in range(len(verts))})
    return cycles - comps


# ---------------------------------------------------------------------------
# overlaps and the join identity
# ---------------------------------------------------------------------------

def overlap_count(g1: GeodesicGraph, g2: GeodesicGraph) -> int:
    """Number of edge pairs (one from each graph) sharing a sub-segment.

    Containment, partial overlap and equality all count once per pair.
    """
    count = 0
    for a1, b1 in g1.edge_points():
        k1 = _line_key(a1, b1)
        for a2, b2 in g2.edge_points():
            if _line_key(a2, b2) != k1:
                continue
            d = sub2(b1, a1)
            ts = sorted((GeodesicGraph._param(a1, d, a2),
                         GeodesicGraph._param(a1, d, b2)))
            if max(Q(0), ts[0]) < min(Q(1), ts[1]):
                count += 1
    return count


@dataclass
class JoinReport:
    """Both sides of the join identity, computed independently."""

    F: int
    F1: int
    F2: int
    chi_chart: int
    V: int
    V_new: int
    V_common: int
    V1_on_edges: int
    V2_on_edges: int
    V1_disjoint: int
    V2_disjoint: int
    V_ess: int
    overlaps: int

    @property
    def lhs(self) -> int:
        return self.F - self.F1 - self.F2 + self.chi_chart

    @property
    def rhs(self) -> int:
        return self.V_ess - self.overlaps

    @property
    def identity_holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def sandwich_holds(self) -> bool:
        mid = self.lhs + self.overlaps
        return self.V_new <= mid <= self.V


def euler_audit(g1: GeodesicGraph, g2: GeodesicGraph, chi_chart: int = 1,
                stable=False) -> JoinReport:
    """Audit |F|-|F'|-|F''|+chi == |V_ess| - c on a pair of graphs.

    Face counts on the left are box-clipped arrangement counts; the right
    side classifies vertices pairwise and counts overlapping edge pairs.
    Inputs must be cellular in the chart (edges reach the box border or end
    on other edges); dangling free ends break the per-graph Euler formula.
    """
    box = _union_box(g1.box, g2.box)
    joint = g1.join(g2, box=box)
    F = face_count(joint, chi_chart, box=box, stable=stable)
    F1 = face_count(g1, chi_chart, box=box)
    F2 = face_count(g2, chi_chart, box=box)

    g1n = GeodesicGraph(g1._input[0], g1._input[1], g1._input[2], box=box)
    g2n = GeodesicGraph(g2._input[0], g2._input[1], g2._input[2], box=box)
    v1 = set(g1n.vertices)
    v2 = set(g2n.vertices)
    v_common = v1 & v2
    v1_edges = {p for p in v1 - v_common if g2n.on_support(p)}
    v2_edges = {p for p in v2 - v_common if g1n.on_support(p)}
    v1_disj = len(v1) - len(v_common) - len(v1_edges)
    v2_disj = len(v2) - len(v_common) - len(v2_edges)
    crossings = set()
    for a1, b1 in g1n.edge_points():
        for a2, b2 in g2n.edge_points():
            hit = seg_intersection(a1, b1, a2, b2)
            if hit is not None:
                crossings.add(hit[2])
    v_new = crossings - v1 - v2
    V = (len(v1_edges) + len(v2_edges) + v1_disj + v2_disj
         + len(v_common) + len(v_new))
    v_ess = len(v1_edges) + len(v2_edges) + len(v_common) + len(v_new)
    return JoinReport(F=F, F1=F1, F2=F2, chi_chart=chi_chart, V=V,
                      V_new=len(v_new), V_common=len(v_common),
                      V1_on_edges=len(v1_edges), V2_on_edges=len(v2_edges),
                      V1_disjoint=v1_disj, V2_disjoint=v2_disj,
                      V_ess=v_ess, overlaps=overlap_count(g1n, g2n))


def _union_box(b1, b2):
    return (min(b1[0], b2[0]), min(b1[1], b2[1]),
            max(b1[2], b2[2]), max(b1[3], b2[3]))


# ---------------------------------------------------------------------------
# random fixtures for audits
# ---------------------------------------------------------------------------

def random_graph_pair(rng, n_lines=4, span=10, allow_overlap=True):
    """Two random rational line/ray arrangements suitable for join audits."""
    span = int(span)

    def rand_pt():
        return (Q(rng.randint(-span, span), rng.randint(1, 4)),
                Q(rng.randint(-span, span), rng.randint(1, 4)))

    def rand_graph(seed_lines):
        lines, rays = [], []
        for _ in range(seed_lines):
            a = rand_pt()
            b = rand_pt()
            while b == a:
                b = rand_pt()
            if rng.random() < 0.3:
                rays.append((a, sub2(b, a)))
            else:
                lines.append((a, b))
        return lines, rays

    l1, r1 = rand_graph(n_lines)
    l2, r2 = rand_graph(n_lines)
    if allow_overlap and l1 and rng.random() < 0.5:
        a, b = l1[0]
        mid = mul2(Q(1, 2), add2(a, b))
        if rng.random() < 0.5:
            l2.append((mid, b))  # coincident support, shared stretch
        else:
            r2.append((mid, sub2(b, a)))
    box = (Q(-8 * span), Q(-8 * span), Q(8 * span), Q(8 * span))
    g1 = GeodesicGraph(lines=l1, rays=r1, box=box)
    g2 = GeodesicGraph(lines=l2, rays=r2, box=box)
    return g1, g2
