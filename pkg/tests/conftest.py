import pytest

from billiards.geom import Polygon, Q


@pytest.fixture(scope="session")
def square():
    return Polygon(0, [(0, 0), (1, 0), (1, 1), (0, 1)], "square")


@pytest.fixture(scope="session")
def right_triangle():
    return Polygon(0, [(0, 0), (1, 0), (0, 1)], "right triangle")


@pytest.fixture(scope="session")
def near_equilateral():
    return Polygon(0, [(0, 0), (8, 0), (4, 7)], "near-equilateral")


@pytest.fixture(scope="session")
def pentagon():
    return Polygon(0, [(0, 0), (5, -2), (8, 3), (4, 7), (-2, 4)], "pentagon")


@pytest.fixture(scope="session")
def quad():
    return Polygon(0, [(0, 0), (4, 1), (5, 4), (1, 4)], "quad")


@pytest.fixture(scope="session")
def sphere_small():
    return Polygon(1, [(Q(-1, 10), Q(-1, 12)), (Q(1, 5), Q(-1, 11)),
                       (Q(1, 50), Q(1, 4))], "sphere-small")


@pytest.fixture(scope="session")
def sphere_tri():
    return Polygon(1, [(Q(3, 2), Q(1, 10)), (Q(-1), Q(3, 2)),
                       (Q(-4, 5), Q(-7, 4))], "sphere-tri")


@pytest.fixture(scope="session")
def octant():
    return Polygon(1, [(Q(1, 2), Q(1)), (Q(-10, 7), Q(-2, 7)),
                       (Q(1), Q(-3, 2))], "octant")


@pytest.fixture(scope="session")
def sphere_family_quad():
    return Polygon(1, [(-2, 0), (0, Q(-1, 5)), (Q(1, 2), 0),
                       (Q(1, 4), Q(1, 2))], "family-quad")


@pytest.fixture(scope="session")
def hyper_triangle():
    return Polygon(-1, [(0, 0), (Q(1, 2), 0), (0, Q(1, 2))], "hyper-triangle")


@pytest.fixture(scope="session")
def hyper_tiny():
    return Polygon(-1, [(0, 0), (Q(1, 10), 0), (0, Q(1, 10))], "hyper-tiny")


@pytest.fixture(scope="session")
def large_quad():
    return Polygon(-1, [(Q(99, 100), 0), (0, Q(99, 100)),
                        (Q(-99, 100), 0), (0, Q(-99, 100))], "large-quad")
