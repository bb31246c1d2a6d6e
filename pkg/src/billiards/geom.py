"""Exact geometry in the projective charts of the three constant-curvature planes.

Curvature chi = 0 is the euclidean plane, chi = -1 the Klein disk (geodesics
are chords of the unit disk), chi = +1 the central projection of the open
northern hemisphere (geodesics are straight lines in the chart).  Everything
is computed over arbitrary-precision rationals; floats appear only in
explicitly diagnostic quantities such as distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

RAT_TYPES = (type(Q(0)), int, Fraction)


class GeometryError(ValueError):
    pass


class ChartError(GeometryError):
    """Input leaves the active projective chart."""


def rat(x) -> Q:
    """Coerce ints, Fractions, 'p/q' strings and rationals to the scalar type."""
    if isinstance(x, str):
        return Q(x)
    if isinstance(x, float):
        raise GeometryError("floats are not accepted in exact geometry: %r" % x)
    return Q(x)


def sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


# ---------------------------------------------------------------------------
# small linear algebra over rationals: 2-vectors, 3-vectors, 3x3 matrices
# ---------------------------------------------------------------------------

def v2(x, y):
    return (rat(x), rat(y))


def sub2(a, b):
    return (a[0] - b[0], a[1] - b[1])


def add2(a, b):
    return (a[0] + b[0], a[1] + b[1])


def mul2(s, a):
    return (s * a[0], s * a[1])


def dot2(a, b):
    return a[0] * b[0] + a[1] * b[1]


def cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def dot3(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def add3(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def neg3(a):
    return (-a[0], -a[1], -a[2])


def scale3(s, a):
    return (s * a[0], s * a[1], s * a[2])


def lift(p):
    """Affine chart point -> homogeneous triple with z = 1."""
    return (p[0], p[1], Q(1))


def matvec(m, v):
    return (m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2])


def matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
                 for i in range(3))


def mat_t(m):
    return tuple(tuple(m[j][i] for j in range(3)) for i in range(3))


def det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def mat_inv(m):
    d = det3(m)
    if d == 0:
        raise GeometryError("singular matrix")
    cof = lambda i, j: ((-1) ** (i + j)) * (
        m[(j + 1) % 3][(i + 1) % 3] * m[(j + 2) % 3][(i + 2) % 3]
        - m[(j + 1) % 3][(i + 2) % 3] * m[(j + 2) % 3][(i + 1) % 3])
    return tuple(tuple(cof(i, j) / d for j in range(3)) for i in range(3))


IDENTITY3 = ((Q(1), Q(0), Q(0)), (Q(0), Q(1), Q(0)), (Q(0), Q(0), Q(1)))
J_FORM = ((Q(1), Q(0), Q(0)), (Q(0), Q(1), Q(0)), (Q(0), Q(0), Q(-1)))


def canonical_triple(x, y, z):
    """Scale a rational triple to a coprime integer triple, last nonzero > 0."""
    x, y, z = rat(x), rat(y), rat(z)
    if x == 0 and y == 0 and z == 0:
        raise GeometryError("zero homogeneous triple")
    denom = 1
    for c in (x, y, z):
        denom = denom * c.denominator // math.gcd(denom, int(c.denominator))
    ix, iy, iz = int(x * denom), int(y * denom), int(z * denom)
    g = math.gcd(math.gcd(abs(ix), abs(iy)), abs(iz))
    ix, iy, iz = ix // g, iy // g, iz // g
    for c in (iz, iy, ix):
        if c != 0:
            if c < 0:
                ix, iy, iz = -ix, -iy, -iz
            break
    return (ix, iy, iz)


# ---------------------------------------------------------------------------
# public domain types
# ---------------------------------------------------------------------------

class ProjPoint:
    """Homogeneous point (x : y : z); equality and hashing are scale-invariant."""

    __slots__ = ("x", "y", "z", "_key")

    def __init__(self, x, y, z=1):
        self.x, self.y, self.z = rat(x), rat(y), rat(z)
        self._key = canonical_triple(self.x, self.y, self.z)

    @classmethod
    def affine(cls, p):
        return cls(p[0], p[1], 1)

    def triple(self):
        return (self.x, self.y, self.z)

    def is_affine(self) -> bool:
        return self.z != 0

    def to_affine(self):
        if self.z == 0:
            raise ChartError("point at infinity has no affine coordinates")
        return (self.x / self.z, self.y / self.z)

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "ProjPoint(%s, %s, %s)" % self._key


def proj_parallel(u, v) -> bool:
    """True iff homogeneous triples u, v agree up to a nonzero scalar."""
    return cross3(u, v) == (0, 0, 0)


@dataclass(frozen=True)
class GeodesicSeg:
    """Directed geodesic segment a -> b, both endpoints affine in the chart."""

    chi: int
    a: tuple
    b: tuple

    def __post_init__(self):
        if self.a == self.b:
            raise GeometryError("degenerate segment")
        if self.chi == -1:
            for p in (self.a, self.b):
                if p[0] * p[0] + p[1] * p[1] >= 1:
                    raise ChartError("endpoint outside the Klein disk: %r" % (p,))


def inside_disk(p) -> bool:
    return p[0] * p[0] + p[1] * p[1] < 1


@dataclass(frozen=True)
class Isometry:
    """Projective isometry of the chi-chart: 3x3 rational matrix plus parity."""

    chi: int
    m: tuple
    parity: int

    @classmethod
    def identity(cls, chi):
        return cls(chi, IDENTITY3, 1)

    def compose(self, other: "Isometry") -> "Isometry":
        if self.chi != other.chi:
            raise GeometryError("cannot compose isometries of different curvature")
        return Isometry(self.chi, matmul(self.m, other.m), self.parity * other.parity)

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "Isometry":
        return Isometry(self.chi, mat_inv(self.m), self.parity)

    def apply_vec(self, v):
        """Raw action on a homogeneous triple (keeps sign information)."""
        return matvec(self.m, v)

    def apply_affine(self, p):
        x, y, z = matvec(self.m, lift(p))
        if z == 0:
            raise ChartError("image left the affine chart")
        return (x / z, y / z)


def apply_isometry(g: Isometry, p: ProjPoint) -> ProjPoint:
    x, y, z = matvec(g.m, p.triple())
    return ProjPoint(x, y, z)


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def orientation(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> int:
    """Sign of the homogeneous determinant, +1 for counterclockwise.

    All points must be affine; the triples are normalized to z > 0 first so
    the sign is chart-meaningful.
    """
    rows = []
    for pt in (p, q, r):
        x, y, z = pt.triple() if isinstance(pt, ProjPoint) else (pt[0], pt[1], Q(1))
        if z == 0:
            raise ChartError("orientation of a point at infinity")
        if z < 0:
            x, y, z = -x, -y, -z
        rows.append((x, y, z))
    return sign(det3(tuple(rows)))


def orient2(a, b, c) -> int:
    """Orientation of three affine points, +1 = counterclockwise."""
    return sign(cross2(sub2(b, a), sub2(c, a)))


def line_through(a, b):
    """Homogeneous functional (u, v, w) vanishing on the affine points a, b.

    A point q is strictly left of the directed line a->b iff the functional
    is positive on lift(q).
    """
    return cross3(lift(a), lift(b))


def eval_line(l, p):
    return l[0] * p[0] + l[1] * p[1] + l[2]


def seg_intersection(a, b, c, d):
    """Intersection of segments [a,b] and [c,d] as (t, u, point) or None.

    t, u are the rational parameters along [a,b] and [c,d]; endpoints count.
    Collinear overlaps return None (handled separately by callers).
    """
    r = sub2(b, a)
    s = sub2(d, c)
    denom = cross2(r, s)
    if denom == 0:
        return None
    qp = sub2(c, a)
    t = cross2(qp, s) / denom
    u = cross2(qp, r) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        return (t, u, add2(a, mul2(t, r)))
    return None


# ---------------------------------------------------------------------------
# isometry constructors
# ---------------------------------------------------------------------------

def make_reflection(chi: int, g: GeodesicSeg) -> Isometry:
    """Geodesic reflection about the complete geodesic through g."""
    a, b = g.a, g.b
    if chi == 0:
        d = sub2(b, a)
        n = (-d[1], d[0])
        nn = dot2(n, n)
        r00 = 1 - 2 * n[0] * n[0] / nn
        r01 = -2 * n[0] * n[1] / nn
        r11 = 1 - 2 * n[1] * n[1] / nn
        # x' = R(x - a) + a
        tx = a[0] - (r00 * a[0] + r01 * a[1])
        ty = a[1] - (r01 * a[0] + r11 * a[1])
        m = ((r00, r01, tx), (r01, r11, ty), (Q(0), Q(0), Q(1)))
        return Isometry(0, m, -1)
    if chi == 1:
        v = cross3(lift(a), lift(b))  # pole of the great circle
        vv = dot3(v, v)
        m = tuple(tuple((Q(1) if i == j else Q(0)) - 2 * v[i] * v[j] / vv
                        for j in range(3)) for i in range(3))
        return Isometry(1, m, -1)
    if chi == -1:
        mline = cross3(lift(a), lift(b))
        n = matvec(J_FORM, mline)
        q = dot3(n, matvec(J_FORM, n))
        if q <= 0:
            raise ChartError("line misses the Klein disk")
        jn = matvec(J_FORM, n)
        m = tuple(tuple((Q(1) if i == j else Q(0)) - 2 * n[i] * jn[j] / q
                        for j in range(3)) for i in range(3))
        return Isometry(-1, m, -1)
    raise GeometryError("curvature must be -1, 0 or +1")


def make_point_symmetry(chi: int, c) -> Isometry:
    """Geodesic symmetry about the affine chart point c (orientation preserving)."""
    c = (rat(c[0]), rat(c[1]))
    if chi == 0:
        m = ((Q(-1), Q(0), 2 * c[0]), (Q(0), Q(-1), 2 * c[1]), (Q(0), Q(0), Q(1)))
        return Isometry(0, m, 1)
    if chi == 1:
        v = lift(c)
        vv = dot3(v, v)
        m = tuple(tuple(2 * v[i] * v[j] / vv - (Q(1) if i == j else Q(0))
                        for j in range(3)) for i in range(3))
        return Isometry(1, m, 1)
    if chi == -1:
        if not inside_disk(c):
            raise ChartError("symmetry center outside the Klein disk")
        v = lift(c)
        jv = matvec(J_FORM, v)
        q = dot3(v, jv)
        m = tuple(tuple(2 * v[i] * jv[j] / q - (Q(1) if i == j else Q(0))
                        for j in range(3)) for i in range(3))
        return Isometry(-1, m, 1)
    raise GeometryError("curvature must be -1, 0 or +1")


def form_defect(g: Isometry):
    """M^T Q M - lambda Q, exactly; zero matrix iff g preserves its chart form."""
    if g.chi == 0:
        # bottom row must be (0,0,1) and the linear block orthogonal up to scale
        bad = []
        if g.m[2] != (Q(0), Q(0), Q(1)):
            bad.append(("bottom row", g.m[2]))
        a, b = (g.m[0][0], g.m[0][1]), (g.m[1][0], g.m[1][1])
        if dot2(a, b) != 0 or dot2(a, a) != dot2(b, b):
            bad.append(("block", None))
        return bad
    q = IDENTITY3 if g.chi == 1 else J_FORM
    mtqm = matmul(mat_t(g.m), matmul(q, g.m))
    lam = None
    for i in range(3):
        if q[i][i] != 0:
            lam = mtqm[i][i] / q[i][i]
            break
    defect = [mtqm[i][j] - lam * q[i][j] for i in range(3) for j in range(3)]
    return [d for d in defect if d != 0] + ([] if lam > 0 else [("lambda", lam)])


# ---------------------------------------------------------------------------
# polygons
# ---------------------------------------------------------------------------

class Polygon:
    """Geodesic polygon in the chi-chart: counterclockwise affine vertices."""

    def __init__(self, chi: int, vertices, name: str = ""):
        self.chi = int(chi)
        if self.chi not in (-1, 0, 1):
            raise GeometryError("curvature must be -1, 0 or +1")
        verts = [(rat(x), rat(y)) for (x, y) in vertices]
        if len(verts) < 3:
            raise GeometryError("a polygon needs at least 3 vertices")
        p = len(verts)
        for i in range(p):
            if verts[i] == verts[(i + 1) % p]:
                raise GeometryError("consecutive vertices coincide")
            if orient2(verts[i], verts[(i + 1) % p], verts[(i + 2) % p]) == 0:
                raise GeometryError("three consecutive vertices are collinear")
        if self.chi == -1:
            for v in verts:
                if not inside_disk(v):
                    raise ChartError("vertex outside the Klein disk: %r" % (v,))
        area2 = sum(cross2(verts[i], verts[(i + 1) % p]) for i in range(p))
        if area2 < 0:
            raise GeometryError("vertices must be listed counterclockwise")
        self._check_simple(verts)
        self.vertices = tuple(verts)
        self.n = p
        self.name = name
        self.side_lines = tuple(line_through(verts[i], verts[(i + 1) % p])
                                for i in range(p))
        self.convex = all(orient2(verts[i], verts[(i + 1) % p], verts[(i + 2) % p]) > 0
                          for i in range(p))

    @staticmethod
    def _check_simple(verts):
        p = len(verts)
        for i in range(p):
            a, b = verts[i], verts[(i + 1) % p]
            for j in range(i + 1, p):
                if j == i or (j + 1) % p == i or (i + 1) % p == j:
                    continue
                c, d = verts[j], verts[(j + 1) % p]
                if seg_intersection(a, b, c, d) is not None:
                    raise GeometryError("polygon boundary is not simple")

    def side(self, i):
        return (self.vertices[i % self.n], self.vertices[(i + 1) % self.n])

    def side_seg(self, i) -> GeodesicSeg:
        a, b = self.side(i)
        return GeodesicSeg(self.chi, a, b)

    def side_reflection(self, i) -> Isometry:
        return make_reflection(self.chi, self.side_seg(i))

    def vertex_lifts(self):
        return [lift(v) for v in self.vertices]

    def contains(self, q, strict=True) -> bool:
        vals = [eval_line(l, q) for l in self.side_lines]
        if strict:
            return all(v > 0 for v in vals)
        return all(v >= 0 for v in vals)

    def locate_boundary(self, q):
        """('corner', i) or ('side', i) or None for a chart point q."""
        for i, v in enumerate(self.vertices):
            if v == (q[0], q[1]):
                return ("corner", i)
        for i in range(self.n):
            a, b = self.side(i)
            if eval_line(self.side_lines[i], q) == 0:
                t = _param_on_segment(a, b, q)
                if t is not None and 0 < t < 1:
                    return ("side", i)
        return None

    def __repr__(self):
        return "Polygon(chi=%d, p=%d%s)" % (
            self.chi, self.n, ", name=%r" % self.name if self.name else "")


def _param_on_segment(a, b, q):
    d = sub2(b, a)
    w = sub2(q, a)
    if cross2(d, w) != 0:
        return None
    if d[0] != 0:
        return w[0] / d[0]
    return w[1] / d[1]


# ---------------------------------------------------------------------------
# exact strict-cone feasibility (the optimization kernel)
# ---------------------------------------------------------------------------

def _rank3(ws):
    basis = []
    for w in ws:
        if len(basis) == 0:
            if w != (0, 0, 0):
                basis.append(w)
        elif len(basis) == 1:
            if cross3(basis[0], w) != (0, 0, 0):
                basis.append(w)
        else:
            if det3((basis[0], basis[1], w)) != 0:
                basis.append(w)
                break
    return basis


def strict_cone_witness(ws):
    """A rational u with u . w > 0 for every w in ws, or None if none exists.

    Exhaustive generator enumeration of the dual cone; exact and complete.
    Every full-dimensional dual cone is positively spanned by rays that are
    either cross products of two constraint normals, their second-level
    products with normals (rank-2 input), or the inputs themselves (rank 1).
    """
    ws = [tuple(w) for w in ws]
    if not ws:
        return (Q(0), Q(0), Q(1))
    for w in ws:
        if w == (0, 0, 0):
            return None
    basis = _rank3(ws)
    rank = len(basis)
    if rank == 1:
        u = ws[0]
        if all(dot3(u, w) > 0 and cross3(u, w) == (0, 0, 0) for w in ws):
            return u
        return None
    cands = []
    n = len(ws)
    for i in range(n):
        for j in range(i + 1, n):
            c = cross3(ws[i], ws[j])
            if c != (0, 0, 0):
                cands.append(c)
                cands.append(neg3(c))
    if rank == 2:
        m = cross3(basis[0], basis[1])
        for w in ws:
            c = cross3(m, w)
            if c != (0, 0, 0):
                cands.append(c)
                cands.append(neg3(c))
    cands.extend(ws)
    total = None
    for c in cands:
        if all(dot3(c, w) >= 0 for w in ws):
            total = c if total is None else add3(total, c)
    if total is None:
        return None
    if all(dot3(total, w) > 0 for w in ws):
        return total
    return None


def nonstrict_cone_nontrivial(ws):
    """True iff some u != 0 has u . w >= 0 for all w (never raises)."""
    ws = [tuple(w) for w in ws]
    if len(_rank3(ws)) < 3:
        return True
    if strict_cone_witness(ws) is not None:
        return True
    # remaining case: full-rank but only boundary solutions; try facet rays
    for i in range(len(ws)):
        for j in range(i + 1, len(ws)):
            for c in (cross3(ws[i], ws[j]),):
                if c == (0, 0, 0):
                    continue
                for cand in (c, neg3(c)):
                    if all(dot3(cand, w) >= 0 for w in ws):
                        return True
    return False


class ConeTracker2D:
    """Open 2-dimensional cone {x : <x, h> > 0 for tracked h}, kept as two rays.

    Rays (r1, r2) with cross2(r1, r2) > 0 span the closed hull; the open cone
    is nonempty iff the rays stay independent.  Used for pencils of directions
    at a polygon corner.
    """

    __slots__ = ("r1", "r2", "alive")

    def __init__(self, r1, r2):
        self.r1, self.r2 = r1, r2
        self.alive = cross2(r1, r2) > 0

    @classmethod
    def from_halfplanes(cls, h1, h2):
        """Cone {x: <x,h1> > 0, <x,h2> > 0}; requires an opening angle < pi."""
        r1 = (h2[1], -h2[0])
        if dot2(r1, h1) < 0 or (dot2(r1, h1) == 0 and cross2(h1, h2) <= 0):
            r1 = (-r1[0], -r1[1])
        r2 = (-h1[1], h1[0])
        if dot2(r2, h2) < 0:
            r2 = (-r2[0], -r2[1])
        c = cls(r1, r2)
        c.alive = c.alive and dot2(r1, h1) >= 0 and dot2(r2, h2) >= 0 \
            and cross2(r1, r2) > 0
        return c

    def clip(self, h):
        """Intersect with {x: <x,h> > 0}."""
        if not self.alive:
            return
        s1, s2 = dot2(self.r1, h), dot2(self.r2, h)
        if s1 <= 0 and s2 <= 0:
            self.alive = False
            return
        if s1 < 0:
            self.r1 = sub2(mul2(s2, self.r1), mul2(s1, self.r2))
        elif s2 < 0:
            self.r2 = sub2(mul2(s1, self.r2), mul2(s2, self.r1))
        # recompute openness: rays must stay strictly independent
        if cross2(self.r1, self.r2) <= 0:
            self.alive = False

    def contains(self, d) -> bool:
        return self.alive and cross2(self.r1, d) > 0 and cross2(d, self.r2) > 0

    def copy(self):
        c = ConeTracker2D(self.r1, self.r2)
        c.alive = self.alive
        return c


def sub3(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


# ---------------------------------------------------------------------------
# hyperbolic distance and admissibility
# ---------------------------------------------------------------------------

def klein_distance(x: ProjPoint, y: ProjPoint) -> float:
    """Hyperbolic distance in the Klein chart: half the log cross-ratio.

    Floating diagnostic; the ideal chord endpoints are irrational in general.
    """
    xa, ya = (float(c) for c in x.to_affine())
    xb, yb = (float(c) for c in y.to_affine())
    if xa * xa + ya * ya >= 1 or xb * xb + yb * yb >= 1:
        raise ChartError("points must lie inside the Klein disk")
    if (xa, ya) == (xb, yb):
        return 0.0
    dx, dy = xb - xa, yb - ya
    # solve |(xa,ya) + t (dx,dy)|^2 = 1; roots ta < 0 < 1 < tb along the chord
    aq = dx * dx + dy * dy
    bq = 2 * (xa * dx + ya * dy)
    cq = xa * xa + ya * ya - 1
    disc = math.sqrt(bq * bq - 4 * aq * cq)
    ta = (-bq - disc) / (2 * aq)
    tb = (-bq + disc) / (2 * aq)
    # cross ratio [a, x, y, b] with positions a=ta, x=0, y=1, b=tb
    cr = ((1 - ta) * tb) / ((-ta) * (tb - 1))
    return 0.5 * math.log(cr)


def is_admissible(P: Polygon) -> bool:
    """Spherical polygons: every one-side reflection doubling fits in an open
    hemisphere.  Non-elliptic polygons are always admissible."""
    if P.chi != 1:
        return True
    lifts = P.vertex_lifts()
    for i in range(P.n):
        refl = P.side_reflection(i)
        vecs = list(lifts) + [refl.apply_vec(v) for v in lifts]
        if strict_cone_witness(vecs) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# convex polygon clipping (for cells and regions)
# ---------------------------------------------------------------------------

def clip_convex(poly, h, strict_keep_positive=True):
    """Clip a convex polygon (list of affine points, ccw) by {q: eval(h,q) >= 0}.

    Returns the clipped vertex list; an empty or degenerate result is [].
    """
    if not poly:
        return []
    vals = [eval_line(h, p) for p in poly]
    if all(v >= 0 for v in vals):
        return list(poly)
    if all(v <= 0 for v in vals):
        return []
    out = []
    n = len(poly)
    for i in range(n):
        p, vp = poly[i], vals[i]
        q, vq = poly[(i + 1) % n], vals[(i + 1) % n]
        if vp >= 0:
            out.append(p)
        if (vp > 0 > vq) or (vp < 0 < vq):
            t = vp / (vp - vq)
            out.append(add2(p, mul2(t, sub2(q, p))))
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def poly_area2(poly):
    """Twice the signed area of an affine polygon."""
    n = len(poly)
    if n < 3:
        return Q(0)
    return sum(cross2(poly[i], poly[(i + 1) % n]) for i in range(n))


def box_polygon(xmin, ymin, xmax, ymax):
    xmin, ymin, xmax, ymax = rat(xmin), rat(ymin), rat(xmax), rat(ymax)
    return [(xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)]
