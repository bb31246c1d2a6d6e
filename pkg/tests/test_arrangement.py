import random

import pytest

from billiards.geom import Q
from billiards.arrangement import (GeodesicGraph, join_graphs, overlap_count,
                                   euler_audit, face_count,
                                   face_count_by_traversal, random_graph_pair)

BOX = (Q(-10), Q(-10), Q(10), Q(10))


def graph(segments=(), rays=(), lines=(), box=BOX):
    return GeodesicGraph(segments=segments, rays=rays, lines=lines, box=box)


class TestNormalization:
    def test_two_crossing_segments(self):
        g = graph(segments=[((-1, 0), (1, 0)), ((0, -1), (0, 1))])
        assert g.n_vertices == 5
        assert g.n_edges == 4

    def test_collinear_touching_merge(self):
        g = graph(segments=[((0, 0), (1, 0)), ((1, 0), (2, 0))])
        assert g.n_vertices == 2
        assert g.n_edges == 1

    def test_partial_overlap_merge(self):
        g = graph(segments=[((0, 0), (2, 0)), ((1, 0), (3, 0))])
        assert g.n_vertices == 2  # merged support [0,3]
        assert g.n_edges == 1

    def test_t_junction(self):
        g = graph(segments=[((-1, 0), (1, 0)), ((0, 0), (0, 1))])
        assert g.n_vertices == 4
        assert g.n_edges == 3


class TestJoin:
    def test_join_with_empty(self):
        g1 = graph(lines=[((0, 0), (1, 2))])
        empty = graph()
        j = join_graphs(g1, empty, box=BOX)
        assert j.n_edges == g1.n_edges and j.n_vertices == g1.n_vertices

    def test_idempotent(self):
        g = graph(lines=[((0, 0), (1, 2)), ((0, 1), (1, 0))])
        j = g.join(g)
        assert (j.n_vertices, j.n_edges) == (g.n_vertices, g.n_edges)


class TestOverlapCount:
    def test_transversal_only(self):
        g1 = graph(segments=[((-1, 0), (1, 0))])
        g2 = graph(segments=[((0, -1), (0, 1))])
        assert overlap_count(g1, g2) == 0

    def test_identical_edges(self):
        g1 = graph(segments=[((0, 0), (2, 0))])
        assert overlap_count(g1, graph(segments=[((0, 0), (2, 0))])) == 1

    def test_partial(self):
        g1 = graph(segments=[((0, 0), (2, 0))])
        g2 = graph(segments=[((1, 0), (3, 0))])
        assert overlap_count(g1, g2) == 1

    def test_containment_and_touching(self):
        g1 = graph(segments=[((0, 0), (4, 0))])
        assert overlap_count(g1, graph(segments=[((1, 0), (2, 0))])) == 1
        # sharing only an endpoint is not an overlap
        assert overlap_count(g1, graph(segments=[((4, 0), (6, 0))])) == 0


class TestFaceCount:
    def test_single_interior_segment(self):
        g = graph(segments=[((-1, 0), (1, 0))])
        assert face_count(g, box=BOX) == 1

    def test_two_crossing_chords(self):
        g = graph(lines=[((-1, -1), (1, 1)), ((-1, 1), (1, -1))], box=BOX)
        assert face_count(g, box=BOX) == 4

    def test_stability_under_enlargement(self):
        # the ray crosses the full chord once, splitting one of its two sides
        g = graph(lines=[((0, 0), (1, 2))], rays=[((-2, 1), (1, 0))], box=BOX)
        assert face_count(g, box=BOX, stable=True) == 3

    def test_traversal_oracle_random(self):
        rng = random.Random(3)
        for _ in range(25):
            g1, g2 = random_graph_pair(rng)
            j = g1.join(g2)
            assert face_count(j) == face_count_by_traversal(j)


def paper_figure():
    g1 = graph(lines=[((0, 0), (1, 2)), ((0, 0), (1, -2))])
    g2 = graph(lines=[((0, c), (1, 2 + c)) for c in (3, 6, -3, -6)])
    return g1, g2


class TestEulerAudit:
    def test_figure_counts(self):
        rep = euler_audit(*paper_figure(), chi_chart=1, stable=True)
        assert (rep.F, rep.F1, rep.F2) == (12, 4, 5)
        assert rep.V_ess == 4
        assert rep.overlaps == 0
        assert rep.lhs == rep.rhs == 4
        assert rep.sandwich_holds

    def test_empty_join(self):
        g1 = graph(lines=[((0, 0), (1, 2))])
        rep = euler_audit(g1, graph(), chi_chart=1)
        assert rep.lhs == rep.rhs == 0

    def test_overlapping_rays(self):
        r1 = graph(rays=[((0, 0), (1, 0))])
        r2 = graph(rays=[((1, 0), (-1, 0))])
        rep = euler_audit(r1, r2, chi_chart=1)
        assert rep.overlaps == 1
        assert rep.identity_holds

    def test_identical_lines(self):
        l1 = graph(lines=[((0, 0), (1, 0))])
        l2 = graph(lines=[((2, 0), (5, 0))])
        rep = euler_audit(l1, l2, chi_chart=1)
        assert rep.overlaps == 1
        assert rep.identity_holds

    def test_no_disjoint_vertices_special_case(self):
        # transversal full lines only: V'_d = V''_d = 0, so lhs + chi-term = |V|
        g1 = graph(lines=[((0, 0), (1, 2)), ((0, 0), (1, -2))])
        g2 = graph(lines=[((0, 1), (1, 3))])
        rep = euler_audit(g1, g2, chi_chart=1)
        assert rep.V1_disjoint == 1  # the private crossing of g1
        assert rep.identity_holds

    def test_hundred_random_joins(self):
        rng = random.Random(7)
        for k in range(100):
            g1, g2 = random_graph_pair(rng)
            rep = euler_audit(g1, g2, chi_chart=1)
            assert rep.identity_holds, (k, rep)
            assert rep.sandwich_holds, (k, rep)
