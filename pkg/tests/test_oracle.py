import random

import pytest

from rectfvd.oracle import (
    brute_eccentricity_min,
    brute_farthest,
    build_hanan,
    geodesic_distance,
)
from rectfvd.scene import make_scene


def test_grid_counts_s0(s0):
    g = build_hanan(s0)
    assert len(g.points) == 9
    assert g.num_edges == 12


def test_grid_removes_interior_vertices(s2):
    g = build_hanan(s2)
    assert all(not any(r.contains_open(p) for r in s2.rects) for p in g.points)
    # rectangle corners stay (boundaries are free space)
    for c in ((8, -4), (12, 4), (8, 4), (12, -4)):
        assert c in g.index


def test_extra_points_add_lines(s1):
    g = build_hanan(s1, extra={(10, 14)})
    assert 10 in g.xs and 14 in g.ys


def test_distance_detour(s2):
    g = build_hanan(s2)
    # d(s1,s2) = 14 original units = 28 internal (detour 4 over/under the rect)
    assert geodesic_distance(g, (0, 0), (20, 0)) == 28


def test_distance_manhattan_free(s0):
    sc = make_scene([(0, 0)], bbox=(-20, -20, 20, 20))
    g = build_hanan(sc, extra={(6, 8)})
    assert geodesic_distance(g, (0, 0), (6, 8)) == 14


def test_distance_around_side(s2):
    g = build_hanan(s2, extra={(10, 6), (10, -6)})
    assert geodesic_distance(g, (10, 6), (10, -6)) == 16


def test_brute_farthest_examples(s1, s2):
    g1 = build_hanan(s1)
    assert brute_farthest(g1, (0, 0)) == ([1], 20)
    g2 = build_hanan(s2, extra={(10, 6)})
    assert brute_farthest(g2, (10, 6)) == ([0, 1], 16)


def test_brute_farthest_s0(s0):
    sc = make_scene([(0, 0)], bbox=(-20, -20, 20, 20))
    g = build_hanan(sc, extra={(14, -14)})
    assert brute_farthest(g, (14, -14)) == ([0], 28)


def test_brute_eccentricity_s1(s1):
    # the optimum sits on x=5, which must be registered as an extra grid line
    g = build_hanan(s1, extra={(10, 0)})
    pts, v = brute_eccentricity_min(g, g.points)
    assert v == 10
    assert pts == [(10, 0)]


def test_brute_eccentricity_s2(s2):
    g = build_hanan(s2, extra={(10, 4), (10, -4)})
    pts, v = brute_eccentricity_min(g, g.points)
    assert v == 14
    assert sorted(pts) == [(10, -4), (10, 4)]


def test_metric_axioms(s2):
    rng = random.Random(3)
    pts = []
    while len(pts) < 6:
        p = (2 * rng.randrange(-16, 27), 2 * rng.randrange(-18, 19))
        if s2.in_free_space(p):
            pts.append(p)
    g = build_hanan(s2, extra=set(pts))
    for p in pts:
        assert g.distance(p, p) == 0
        for q in pts:
            assert g.distance(p, q) == g.distance(q, p)
            assert g.distance(p, q) >= abs(p[0] - q[0]) + abs(p[1] - q[1])
            for r in pts:
                assert g.distance(p, r) <= g.distance(p, q) + g.distance(q, r)


def test_unregistered_endpoint_raises(s1):
    g = build_hanan(s1)
    with pytest.raises(KeyError):
        g.distance((0, 0), (1, 1))
