import json

import pytest
from hypothesis import given, strategies as st

from rectfvd.scene import (
    DIRECTIONS,
    Rect,
    SceneError,
    fmt_half,
    inverse_point,
    load_scene,
    make_scene,
    parse_coord,
    transform_point,
    transform_scene,
    validate_scene,
)


def test_load_minimal():
    sc = load_scene(json.dumps({"sites": [[0, 0]], "rects": []}))
    assert sc.m == 1 and sc.n == 0
    assert sc.sites == ((0, 0),)


def test_load_doubles_coordinates():
    sc = load_scene(json.dumps({"sites": [[0, 0], [10, 0]], "rects": [[4, -2, 6, 2]]}))
    assert sc.sites == ((0, 0), (20, 0))
    assert sc.rects[0].as_tuple() == (8, -4, 12, 4)


def test_load_rejects_site_in_rect():
    with pytest.raises(SceneError, match="inside open rectangle"):
        load_scene(json.dumps({"sites": [[5, 0]], "rects": [[4, -2, 6, 2]]}))


def test_load_rejects_floats():
    with pytest.raises(SceneError, match="non-integer"):
        load_scene(json.dumps({"sites": [[0.5, 0]], "rects": []}))


def test_validate_overlapping_rects():
    sc = make_scene([(20, 20)], [(0, 0, 4, 4)])
    ok = sc.__class__(sc.sites, sc.rects + (Rect(10, 10, 16, 16),), sc.bbox)
    bad = sc.__class__(sc.sites, (Rect(0, 0, 8, 8), Rect(6, 6, 16, 16)), sc.bbox)
    assert validate_scene(ok) == []
    assert any("touch or overlap" in v for v in validate_scene(bad))


def test_validate_touching_rects_rejected():
    with pytest.raises(SceneError, match="touch or overlap"):
        make_scene([(20, 20)], [(0, 0, 4, 4), (4, 0, 8, 4)])


def test_bbox_formula_s1(s1):
    # tight box [0,10]x[0,0], margin 12 -> [-12,22]x[-12,12] in original units
    assert s1.bbox.as_tuple() == (-24, -24, 44, 24)


def test_bbox_formula_s0(s0):
    assert s0.bbox.as_tuple() == (-4, -4, 4, 4)


def test_bbox_formula_s2(s2):
    # tight [0,10]x[-2,2], margin 16 -> [-16,26]x[-18,18]
    assert s2.bbox.as_tuple() == (-32, -36, 52, 36)


def test_sites_sorted_by_x():
    sc = make_scene([(7, 1), (-3, 2), (7, -5)])
    assert sc.sites == ((-6, 4), (14, -10), (14, 2))


def test_transform_identity(s2):
    fr = transform_scene(s2, "y+")
    assert fr.scene.sites == s2.sites
    assert fr.scene.rects == s2.rects


def test_transform_x_plus_example(s2):
    fr = transform_scene(s2, "x+")
    assert fr.scene.sites == ((0, 0), (0, 20))
    assert fr.scene.rects[0].as_tuple() == (-4, 8, 4, 12)


@given(
    st.tuples(st.integers(-100, 100), st.integers(-100, 100)),
    st.sampled_from(DIRECTIONS),
)
def test_transform_round_trip(p, d):
    assert inverse_point(transform_point(p, d), d) == p


@given(
    st.tuples(st.integers(-50, 50), st.integers(-50, 50)),
    st.tuples(st.integers(-50, 50), st.integers(-50, 50)),
    st.sampled_from(DIRECTIONS),
)
def test_transform_preserves_l1(p, q, d):
    tp, tq = transform_point(p, d), transform_point(q, d)
    assert abs(tp[0] - tq[0]) + abs(tp[1] - tq[1]) == abs(p[0] - q[0]) + abs(p[1] - q[1])


@given(st.sampled_from(DIRECTIONS))
def test_transform_maps_direction_to_y_plus(d):
    vec = {"y+": (0, 1), "y-": (0, -1), "x+": (1, 0), "x-": (-1, 0)}[d]
    assert transform_point(vec, d) == (0, 1)


def test_transform_scene_round_trip(s2):
    for d in DIRECTIONS:
        fr = transform_scene(s2, d)
        back = sorted(fr.from_frame(p) for p in fr.scene.sites)
        assert back == sorted(s2.sites)
        assert {fr.original_index(i) for i in range(s2.m)} == set(range(s2.m))


def test_fmt_and_parse():
    assert fmt_half(4) == 2
    assert fmt_half(5) == 2.5
    assert fmt_half(-5) == -2.5
    assert parse_coord("3") == 6
    assert parse_coord("-2.5") == -5
    assert parse_coord("2.5") == 5
    assert parse_coord("4.0") == 8
