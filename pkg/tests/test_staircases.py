import random

import pytest

from rectfvd.oracle import build_hanan
from rectfvd.scene import make_scene
from rectfvd.staircases import DIR_PAIRS, RegionClass, StaircaseFan, classify, reachable, staircase


def test_staircase_free_plane(s1):
    assert staircase(s1, (0, 0), "ru") == [(0, 0), (44, 0)]


def test_staircase_ru_around_rect(s2):
    # original units: (0,0)->(4,0)->(4,2)->(x2(B),2)
    assert staircase(s2, (0, 0), "ru") == [(0, 0), (8, 0), (8, 4), (52, 4)]


def test_staircase_dl_from_above(s2):
    # (5,3) down to rect top, corner (4,2), down to box bottom
    assert staircase(s2, (10, 6), "dl") == [(10, 6), (10, 4), (8, 4), (8, -36)]


def test_staircase_from_boundary_site():
    sc = make_scene([(4, 0), (20, 20)], [(4, -2, 6, 2)])
    # site on the left side of the rect: rightward ray is blocked immediately
    path = staircase(sc, (8, 0), "ru")
    assert path[0] == (8, 0)
    assert path[1] == (8, 4)  # climbs to the top-left corner


def test_classify_quadrant(s1):
    assert classify(s1, (0, 0), (6, 8)) == RegionClass.reg2
    assert classify(s1, (0, 0), (-6, 8)) == RegionClass.reg4
    assert classify(s1, (0, 0), (-6, -8)) == RegionClass.reg6
    assert classify(s1, (0, 0), (6, -8)) == RegionClass.reg8
    # without obstacles the strictly-y-monotone regions collapse onto the paths
    assert classify(s1, (0, 0), (0, 8)) == RegionClass.on_path


def test_classify_reg3_above_rect():
    sc = make_scene([(0, 0), (1, 20)], [(-2, 2, 2, 4), (-2, -4, 2, -2)])
    assert classify(sc, (0, 0), (0, 12)) == RegionClass.reg3
    assert classify(sc, (0, 0), (0, -12)) == RegionClass.reg7


def test_classify_on_path(s1):
    assert classify(s1, (0, 0), (0, 0)) == RegionClass.on_path
    assert classify(s1, (0, 0), (12, 0)) == RegionClass.on_path


def test_classify_detour_region(s2):
    # (7,0) sits right of the rectangle: x-monotone only
    assert classify(s2, (0, 0), (14, 0)) == RegionClass.reg1


def test_reachable_examples(s1, s2):
    assert reachable(s1, (0, 0), (6, 8), "y+")
    assert not reachable(s1, (0, 0), (6, -8), "y+")
    assert not reachable(s2, (0, 0), (14, 0), "y+")
    assert reachable(s2, (0, 0), (14, 0), "x+")


def test_on_path_reachable_both_sides(s1):
    # a point on the shared horizontal ray is reachable for y+ and y-
    assert reachable(s1, (0, 0), (12, 0), "y+")
    assert reachable(s1, (0, 0), (12, 0), "y-")


def _random_scene(rng):
    while True:
        rects = []
        for _ in range(rng.randrange(0, 5)):
            x1 = rng.randrange(-30, 28)
            y1 = rng.randrange(-30, 28)
            r = (x1, y1, x1 + rng.randrange(1, 8), y1 + rng.randrange(1, 8))
            rects.append(r)
        try:
            sites = []
            sc = make_scene([(0, 0)], rects)
        except Exception:
            continue
        pts = []
        while len(pts) < rng.randrange(1, 5):
            p = (rng.randrange(-30, 30), rng.randrange(-30, 30))
            if sc.in_free_space((2 * p[0], 2 * p[1])):
                pts.append(p)
        try:
            return make_scene(pts, rects)
        except Exception:
            continue


def _free_points(scene, rng, k):
    out = []
    box = scene.bbox
    while len(out) < k:
        p = (2 * rng.randrange(box.x1 // 2, box.x2 // 2 + 1), 2 * rng.randrange(box.y1 // 2, box.y2 // 2 + 1))
        if scene.in_free_space(p):
            out.append(p)
    return out


def test_partition_and_lemma_properties():
    rng = random.Random(11)
    for _ in range(12):
        sc = _random_scene(rng)
        s = sc.sites[0]
        fan = StaircaseFan(sc, s)
        pts = _free_points(sc, rng, 25)
        g = build_hanan(sc, extra=set(pts) | {s})
        for p in pts:
            cls = fan.classify(p)
            dirs = [d for d in ("y+", "y-", "x+", "x-") if fan.reachable(p, d)]
            assert dirs, f"{p} reachable in no direction from {s}"
            manhattan = abs(p[0] - s[0]) + abs(p[1] - s[1])
            d_true = g.distance(s, p)
            if cls in (RegionClass.reg2, RegionClass.reg4, RegionClass.reg6, RegionClass.reg8, RegionClass.on_path):
                assert d_true == manhattan
            for d in dirs:
                md = g.monotone_distance(s, p, d)
                assert md == d_true, f"monotone route missing for {p} dir {d}"


def test_staircases_never_cross():
    rng = random.Random(5)
    for _ in range(8):
        sc = _random_scene(rng)
        s = sc.sites[0]
        fan = StaircaseFan(sc, s)
        # pairwise segment-crossing check (shared vertices allowed)
        def segs(verts):
            return list(zip(verts, verts[1:]))

        def crosses(a, b):
            (ax1, ay1), (ax2, ay2) = a
            (bx1, by1), (bx2, by2) = b
            if ax1 == ax2 and by1 == by2:  # vertical vs horizontal
                return (
                    min(bx1, bx2) < ax1 < max(bx1, bx2)
                    and min(ay1, ay2) < by1 < max(ay1, ay2)
                )
            if ay1 == ay2 and bx1 == bx2:
                return crosses(b, a)
            return False

        paths = list(fan.paths.values())
        for i in range(len(paths)):
            for j in range(i + 1, len(paths)):
                for sa in segs(paths[i]):
                    for sb in segs(paths[j]):
                        assert not crosses(sa, sb)
