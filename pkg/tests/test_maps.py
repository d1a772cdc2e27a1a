import json

import pytest

from rectfvd.maps import build_map, map_to_json


def test_map_s0_single_cell(s0):
    fmap, layer, tables = build_map(s0, "y+")
    labels = [l for l in fmap.cell_labels]
    assert sorted(labels, key=lambda l: (l is None, sorted(l or ()))) == [frozenset({0}), None]


def test_map_s1_cells(s1):
    fmap, _, _ = build_map(s1, "y+")
    non_empty = [l for l in fmap.cell_labels if l is not None]
    # above y=0: cells of site 1 (left of x=5) and site 0 (right); below: empty
    assert sorted(non_empty, key=sorted) == [frozenset({0}), frozenset({1})]
    assert fmap.cell_labels.count(None) == 1


def test_map_s2_structure(s2):
    fmap, _, _ = build_map(s2, "y+", audit=True)
    # each site owns two disconnected cells: its far side above the rectangle
    # and the band next to it below the top-side event
    non_empty = sorted((l for l in fmap.cell_labels if l is not None), key=sorted)
    assert non_empty == [frozenset({0}), frozenset({0}), frozenset({1}), frozenset({1})]
    assert fmap.cell_labels.count(None) == 1
    # every kept edge is axis-aligned
    for e, kind in enumerate(fmap.edge_kind):
        if kind is None:
            continue
        a, b = fmap.sub.edges[e]
        pa, pb = fmap.sub.vpts[a], fmap.sub.vpts[b]
        assert pa[0] == pb[0] or pa[1] == pb[1]


def test_map_json_deterministic(s2):
    fmap, _, _ = build_map(s2, "y+")
    j1 = json.dumps(map_to_json(fmap), sort_keys=True)
    fmap2, _, _ = build_map(s2, "y+")
    j2 = json.dumps(map_to_json(fmap2), sort_keys=True)
    assert j1 == j2
    data = json.loads(j1)
    assert set(data) == {"vertices", "edges", "edge_kinds", "cells"}
    ys = [v[1] for v in data["vertices"]]
    assert ys == sorted(ys)


def test_map_area_conservation(s2):
    fmap, _, _ = build_map(s2, "y+")
    box = s2.bbox
    free_area2 = 2 * (box.x2 - box.x1) * (box.y2 - box.y1)
    for r in s2.rects:
        free_area2 -= 2 * (r.x2 - r.x1) * (r.y2 - r.y1)
    assert fmap.free_area2() == free_area2
