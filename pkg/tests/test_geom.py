import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from billiards.geom import (Q, ProjPoint, GeodesicSeg, Polygon, Isometry,
                            orientation, make_reflection, make_point_symmetry,
                            apply_isometry, klein_distance, is_admissible,
                            strict_cone_witness, form_defect, matmul,
                            IDENTITY3, dot3, cross3, inside_disk, ChartError,
                            GeometryError, clip_convex, poly_area2, box_polygon)

rats = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def seg(chi, a, b):
    return GeodesicSeg(chi, (Q(a[0]), Q(a[1])), (Q(b[0]), Q(b[1])))


class TestOrientation:
    def test_counterclockwise(self):
        assert orientation(ProjPoint(0, 0), ProjPoint(1, 0), ProjPoint(0, 1)) == 1

    def test_collinear(self):
        assert orientation(ProjPoint(0, 0), ProjPoint(1, 1), ProjPoint(2, 2)) == 0

    def test_clockwise_mirror(self):
        assert orientation(ProjPoint(0, 0), ProjPoint(0, 1), ProjPoint(1, 0)) == -1

    def test_rejects_points_at_infinity(self):
        with pytest.raises(ChartError):
            orientation(ProjPoint(1, 0, 0), ProjPoint(1, 0), ProjPoint(0, 1))

    @given(rats, rats, rats, rats, rats, rats)
    @settings(max_examples=200, deadline=None)
    def test_scale_invariance(self, ax, ay, bx, by, cx, cy):
        lam = Q(7, 3)
        p, q, r = ProjPoint(ax, ay), ProjPoint(bx, by), ProjPoint(cx, cy)
        ps = ProjPoint(lam * Q(ax), lam * Q(ay), lam)
        qs = ProjPoint(lam * Q(bx), lam * Q(by), lam)
        rs = ProjPoint(lam * Q(cx), lam * Q(cy), lam)
        assert orientation(p, q, r) == orientation(ps, qs, rs)


class TestReflections:
    def test_euclid_axis(self):
        g = make_reflection(0, seg(0, (0, 0), (1, 0)))
        assert g.apply_affine((Q(1), Q(2))) == (1, -2)

    def test_klein_axis(self):
        g = make_reflection(-1, seg(-1, (Q(-1, 2), 0), (Q(1, 2), 0)))
        assert g.apply_affine((Q(0), Q(1, 2))) == (0, Q(-1, 2))

    def test_klein_line_missing_disk_rejected(self):
        with pytest.raises(ChartError):
            GeodesicSeg(-1, (Q(2), Q(0)), (Q(2), Q(1)))

    def test_degenerate_segment_rejected(self):
        with pytest.raises(GeometryError):
            seg(0, (1, 1), (1, 1))

    @pytest.mark.parametrize("chi", [-1, 0, 1])
    def test_involution_and_form(self, chi):
        rng = random.Random(20 + chi)
        tested = 0
        while tested < 60:
            a = (Q(rng.randint(-4, 4), 9), Q(rng.randint(-4, 4), 9))
            b = (Q(rng.randint(-4, 4), 9), Q(rng.randint(-4, 4), 9))
            if a == b:
                continue
            if chi == -1 and not (inside_disk(a) and inside_disk(b)):
                continue
            g = make_reflection(chi, GeodesicSeg(chi, a, b))
            assert g.parity == -1
            assert not form_defect(g)
            sq = matmul(g.m, g.m)
            lam = sq[0][0]
            assert sq == tuple(tuple(lam * IDENTITY3[i][j] for j in range(3))
                               for i in range(3))
            tested += 1


class TestPointSymmetry:
    def test_euclid_central(self):
        g = make_point_symmetry(0, (Q(1), Q(1)))
        assert g.apply_affine((Q(0), Q(0))) == (2, 2)

    def test_klein_origin(self):
        g = make_point_symmetry(-1, (Q(0), Q(0)))
        assert g.apply_affine((Q(1, 2), Q(0))) == (Q(-1, 2), 0)

    @pytest.mark.parametrize("chi", [-1, 0, 1])
    def test_fixed_point_and_form(self, chi):
        rng = random.Random(31 + chi)
        for _ in range(40):
            c = (Q(rng.randint(-3, 3), 7), Q(rng.randint(-3, 3), 7))
            if chi == -1 and not inside_disk(c):
                continue
            g = make_point_symmetry(chi, c)
            assert g.parity == 1
            assert g.apply_affine(c) == c
            assert not form_defect(g)

    def test_klein_center_outside_disk_rejected(self):
        with pytest.raises(ChartError):
            make_point_symmetry(-1, (Q(2), Q(0)))


class TestApply:
    def test_identity(self):
        p = ProjPoint(Q(3, 4), Q(-1, 5))
        assert apply_isometry(Isometry.identity(0), p) == p

    def test_functoriality(self):
        g = make_reflection(0, seg(0, (0, 0), (1, 1)))
        h = make_point_symmetry(0, (Q(2), Q(0)))
        p = ProjPoint(Q(1, 3), Q(5, 7))
        assert apply_isometry(g.compose(h), p) == apply_isometry(g, apply_isometry(h, p))

    def test_klein_preserves_disk(self):
        g = make_reflection(-1, seg(-1, (0, 0), (Q(1, 3), Q(1, 5))))
        rng = random.Random(4)
        for _ in range(50):
            p = (Q(rng.randint(-6, 6), 10), Q(rng.randint(-6, 6), 10))
            if not inside_disk(p):
                continue
            assert inside_disk(g.apply_affine(p))


class TestKleinDistance:
    def test_coincident(self):
        assert klein_distance(ProjPoint(Q(1, 3), 0), ProjPoint(Q(1, 3), 0)) == 0

    def test_half_log_three(self):
        d = klein_distance(ProjPoint(0, 0), ProjPoint(Q(1, 2), 0))
        assert abs(d - 0.5 * math.log(3)) < 1e-12

    def test_isometry_invariance(self):
        rng = random.Random(9)
        for _ in range(30):
            pts = []
            while len(pts) < 2:
                p = (Q(rng.randint(-7, 7), 10), Q(rng.randint(-7, 7), 10))
                if inside_disk(p):
                    pts.append(p)
            mirror = []
            while len(mirror) < 2:
                p = (Q(rng.randint(-6, 6), 11), Q(rng.randint(-6, 6), 11))
                if inside_disk(p) and p not in mirror:
                    mirror.append(p)
            g = make_reflection(-1, GeodesicSeg(-1, mirror[0], mirror[1]))
            x, y = (ProjPoint(*p) for p in pts)
            gx, gy = apply_isometry(g, x), apply_isometry(g, y)
            assert abs(klein_distance(x, y) - klein_distance(gx, gy)) < 1e-12

    def test_additivity_along_geodesic(self):
        x = ProjPoint(Q(-1, 2), 0)
        y = ProjPoint(Q(1, 8), 0)
        z = ProjPoint(Q(3, 4), 0)
        assert abs(klein_distance(x, z)
                   - klein_distance(x, y) - klein_distance(y, z)) < 1e-10

    def test_outside_disk_rejected(self):
        with pytest.raises(ChartError):
            klein_distance(ProjPoint(2, 0), ProjPoint(0, 0))


class TestAdmissibility:
    def test_small_spherical_triangle(self, sphere_small):
        assert is_admissible(sphere_small)

    def test_octant_not_admissible(self, octant):
        # a single-side doubling contains an antipodal vertex pair
        assert not is_admissible(octant)

    def test_euclid_always(self, square):
        assert is_admissible(square)


class TestConeFeasibility:
    def test_octant_cone(self):
        assert strict_cone_witness([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) is not None

    def test_opposed_infeasible(self):
        assert strict_cone_witness([(1, 0, 0), (-1, 0, 0)]) is None

    def test_rank_one(self):
        assert strict_cone_witness([(1, 1, 0), (2, 2, 0)]) is not None
        assert strict_cone_witness([(1, 1, 0), (-2, -2, 0)]) is None

    @given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4),
                              st.integers(-4, 4)), min_size=1, max_size=7))
    @settings(max_examples=300, deadline=None)
    def test_against_sampling(self, ws):
        ws = [w for w in ws if w != (0, 0, 0)]
        if not ws:
            return
        witness = strict_cone_witness([tuple(Q(c) for c in w) for w in ws])
        if witness is not None:
            assert all(dot3(witness, w) > 0 for w in ws)
        else:
            # no witness among a modest grid either
            grid = range(-3, 4)
            for x in grid:
                for y in grid:
                    for z in grid:
                        if (x, y, z) != (0, 0, 0):
                            assert not all(x * w[0] + y * w[1] + z * w[2] > 0
                                           for w in ws)


class TestPolygon:
    def test_clockwise_rejected(self):
        with pytest.raises(GeometryError):
            Polygon(0, [(0, 0), (0, 1), (1, 0)])

    def test_collinear_rejected(self):
        with pytest.raises(GeometryError):
            Polygon(0, [(0, 0), (1, 0), (2, 0), (0, 1)])

    def test_non_simple_rejected(self):
        with pytest.raises(GeometryError):
            Polygon(0, [(0, 0), (2, 2), (2, 0), (0, 2)])

    def test_klein_chart(self):
        with pytest.raises(ChartError):
            Polygon(-1, [(0, 0), (2, 0), (0, Q(1, 2))])

    def test_convex_flag(self, square, pentagon):
        assert square.convex and pentagon.convex
        assert not Polygon(0, [(0, 0), (4, 0), (4, 4), (2, 1), (0, 4)]).convex

    def test_contains(self, square):
        assert square.contains((Q(1, 2), Q(1, 2)))
        assert not square.contains((Q(2), Q(0)))

    def test_locate_boundary(self, square):
        assert square.locate_boundary((Q(1, 2), Q(0))) == ("side", 0)
        assert square.locate_boundary((Q(1), Q(1))) == ("corner", 2)


class TestClip:
    def test_clip_square_by_diagonal(self):
        poly = box_polygon(0, 0, 2, 2)
        half = clip_convex(poly, (1, -1, 0))  # keep x >= y
        assert poly_area2(half) == Q(4)

    def test_empty(self):
        poly = box_polygon(0, 0, 1, 1)
        assert clip_convex(poly, (0, 1, -5)) == []
