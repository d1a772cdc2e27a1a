"""Explicit directional farthest-point maps as labeled planar subdivisions."""
from __future__ import annotations

from dataclasses import dataclass

from .query import DirectionalLayer
from .scene import Scene, fmt_half, inverse_point
from .subdivision import Subdivision
from .sweep import SweepResult, sweep_direction

KIND_ORDER = {"obstacle": 0, "box": 1, "voronoi": 2}


def scene_boundary_segments(scene: Scene) -> list[tuple[tuple[int, int], tuple[int, int], object]]:
    segs = []
    b = scene.bbox
    segs += [
        ((b.x1, b.y1), (b.x2, b.y1), ("box",)),
        ((b.x2, b.y1), (b.x2, b.y2), ("box",)),
        ((b.x2, b.y2), (b.x1, b.y2), ("box",)),
        ((b.x1, b.y2), (b.x1, b.y1), ("box",)),
    ]
    for k, r in enumerate(scene.rects):
        segs += [
            ((r.x1, r.y1), (r.x2, r.y1), ("obstacle", k)),
            ((r.x2, r.y1), (r.x2, r.y2), ("obstacle", k)),
            ((r.x2, r.y2), (r.x1, r.y2), ("obstacle", k)),
            ((r.x1, r.y2), (r.x1, r.y1), ("obstacle", k)),
        ]
    return segs


def sweep_edge_segments(result: SweepResult) -> list[tuple[tuple[int, int], tuple[int, int], object]]:
    """Map edges of one sweep in original coordinates."""
    d = result.frame.direction
    segs = []
    for s in result.segments:
        if s.fn is None:
            continue  # blocker: geometry coincides with the rectangle's top side
        a = inverse_point((s.x1, s.y), d)
        b = inverse_point((s.x2, s.y), d)
        segs.append((a, b, ("map", d)))
    for x, y0, y1 in result.vedges:
        a = inverse_point((x, y0), d)
        b = inverse_point((x, y1), d)
        segs.append((a, b, ("map", d)))
    for x, y0, y1 in result.slits:
        a = inverse_point((x, y0), d)
        b = inverse_point((x, y1), d)
        segs.append((a, b, ("slit", d)))
    return segs


OBSTACLE_INTERIOR = ("obstacle-interior",)


@dataclass
class FarthestMap:
    """Cells of constant farthest-site set for one direction."""

    direction: str
    sub: Subdivision
    cell_of_face: list[int | None]  # None for obstacle-interior faces
    cell_labels: list[frozenset | None]  # None = reachable from no site
    edge_kind: list[str | None]  # None for dropped (cell-interior) edges

    def cell_count(self) -> int:
        return len(self.cell_labels)

    def free_area2(self) -> int:
        return sum(
            f.area2 for fi, f in enumerate(self.sub.faces) if self.cell_of_face[fi] is not None
        )


def _edge_kind_from_tags(tags) -> str:
    kinds = {t[0] for t in tags}
    if "obstacle" in kinds:
        return "obstacle"
    if "box" in kinds:
        return "box"
    return "voronoi"


def label_and_merge(sub: Subdivision, label_of_face) -> tuple[list[int], list, list[str | None]]:
    """Union faces across same-label non-boundary edges; classify kept edges."""
    labels = [label_of_face(fi) for fi in range(len(sub.faces))]
    parent = list(range(len(sub.faces)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    droppable = []
    for e in range(len(sub.edges)):
        fa, fb = sub.edge_faces(e)
        tags = sub.edge_tags[e]
        kinds = {t[0] for t in tags}
        if "obstacle" in kinds or "box" in kinds or "slit" in kinds:
            continue
        if fa is None or fb is None:
            continue
        if labels[fa] == labels[fb]:
            droppable.append(e)
            ra, rb = find(fa), find(fb)
            if ra != rb:
                parent[ra] = rb
    cell_ids: dict[int, int] = {}
    cell_of_face: list[int | None] = []
    cell_labels = []
    for fi in range(len(sub.faces)):
        r = find(fi)
        if labels[r] is OBSTACLE_INTERIOR:
            cell_of_face.append(None)
            continue
        if r not in cell_ids:
            cell_ids[r] = len(cell_labels)
            cell_labels.append(labels[r])
        cell_of_face.append(cell_ids[r])
    dropset = set(droppable)
    edge_kind: list[str | None] = []
    for e in range(len(sub.edges)):
        if e in dropset:
            edge_kind.append(None)
            continue
        tags = sub.edge_tags[e]
        kinds = {t[0] for t in tags}
        if "obstacle" in kinds:
            edge_kind.append("obstacle")
        elif "box" in kinds:
            edge_kind.append("box")
        else:
            edge_kind.append("voronoi")
    return cell_of_face, cell_labels, edge_kind


def build_map(scene: Scene, d: str, audit: bool = False):
    """Explicit map, its query layer and the corner tables for one direction."""
    result = sweep_direction(scene, d, audit=audit)
    layer = DirectionalLayer(result)
    segs = scene_boundary_segments(scene) + sweep_edge_segments(result)
    sub = Subdivision(segs)

    def label(fi):
        probe = sub.face_probe(fi)
        if any(r.contains_open(probe) for r in scene.rects):
            return OBSTACLE_INTERIOR
        r = layer.eval(probe)
        return None if r is None else r[1]

    cell_of_face, cell_labels, edge_kind = label_and_merge(sub, label)
    fmap = FarthestMap(d, sub, cell_of_face, cell_labels, edge_kind)
    return fmap, layer, result.tables


def map_to_json(fmap: FarthestMap) -> dict:
    """Spec JSON schema: vertices (y,x)-sorted, edges by endpoint ids, cells."""
    sub = fmap.sub
    order = sorted(range(len(sub.vpts)), key=lambda i: (sub.vpts[i][1], sub.vpts[i][0]))
    vmap = {old: new for new, old in enumerate(order)}
    vertices = [[fmt_half(sub.vpts[i][0]), fmt_half(sub.vpts[i][1])] for i in order]
    edges = []
    for e, kind in enumerate(fmap.edge_kind):
        if kind is None:
            continue
        a, b = sub.edges[e]
        vi, vj = sorted((vmap[a], vmap[b]))
        edges.append(((vi, vj), kind, e))
    edges.sort(key=lambda t: t[0])
    cells_edges: dict[int, list[int]] = {}
    for rank, ((vi, vj), kind, e) in enumerate(edges):
        fa, fb = sub.edge_faces(e)
        for f in {fa, fb} - {None}:
            ci = fmap.cell_of_face[f]
            if ci is not None:
                cells_edges.setdefault(ci, []).append(rank)
    cells = []
    for ci, label in enumerate(fmap.cell_labels):
        cells.append(
            {
                "site": None if label is None else min(label),
                "sites": None if label is None else sorted(label),
                "boundary": sorted(set(cells_edges.get(ci, []))),
            }
        )
    cells.sort(key=lambda c: (c["site"] is None, -1 if c["site"] is None else c["site"], c["boundary"]))
    return {
        "vertices": vertices,
        "edges": [[vi, vj] for (vi, vj), _, _ in edges],
        "edge_kinds": [kind for _, kind, _ in edges],
        "cells": cells,
    }
