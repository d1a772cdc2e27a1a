"""Independent ground truth: exact L1 geodesic distances on the Hanan grid.

The grid is induced by every x/y coordinate of sites, rectangle sides, the
bounding box, and any registered extra points; some L1 geodesic between two
registered points always runs along it, so Dijkstra distances are exact.
This module shares no geometry code with the sweep it is used to verify.
"""
from __future__ import annotations

import heapq
from bisect import bisect_left

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _sp_dijkstra

from .scene import Point, Scene


class HananGraph:
    def __init__(self, scene: Scene, extra: set[Point] | frozenset[Point] = frozenset()):
        for p in extra:
            if not scene.in_free_space(p):
                raise ValueError(f"extra point {p} not in free space")
        self.scene = scene
        xs = {scene.bbox.x1, scene.bbox.x2}
        ys = {scene.bbox.y1, scene.bbox.y2}
        for p in scene.sites:
            xs.add(p[0])
            ys.add(p[1])
        for r in scene.rects:
            xs.update((r.x1, r.x2))
            ys.update((r.y1, r.y2))
        for p in extra:
            xs.add(p[0])
            ys.add(p[1])
        self.xs = sorted(xs)
        self.ys = sorted(ys)
        self.index: dict[Point, int] = {}
        pts: list[Point] = []
        for x in self.xs:
            for y in self.ys:
                p = (x, y)
                if self._free(p):
                    self.index[p] = len(pts)
                    pts.append(p)
        self.points = pts
        rows: list[int] = []
        cols: list[int] = []
        data: list[int] = []
        for (x, y), i in self.index.items():
            xi = bisect_left(self.xs, x)
            yi = bisect_left(self.ys, y)
            if xi + 1 < len(self.xs):
                q = (self.xs[xi + 1], y)
                j = self.index.get(q)
                if j is not None and not self._edge_blocked((x, y), q):
                    rows += [i, j]
                    cols += [j, i]
                    data += [q[0] - x, q[0] - x]
            if yi + 1 < len(self.ys):
                q = (x, self.ys[yi + 1])
                j = self.index.get(q)
                if j is not None and not self._edge_blocked((x, y), q):
                    rows += [i, j]
                    cols += [j, i]
                    data += [q[1] - y, q[1] - y]
        n = len(pts)
        self.matrix = csr_matrix((data, (rows, cols)), shape=(n, n))
        self.num_edges = len(data) // 2
        self._dist_cache: dict[Point, np.ndarray] = {}

    def _free(self, p: Point) -> bool:
        return self.scene.in_free_space(p)

    def _edge_blocked(self, a: Point, b: Point) -> bool:
        """True iff the open segment a-b crosses an open rectangle interior."""
        for r in self.scene.rects:
            if a[1] == b[1]:
                if r.y1 < a[1] < r.y2 and r.x1 <= min(a[0], b[0]) and max(a[0], b[0]) <= r.x2:
                    return True
            else:
                if r.x1 < a[0] < r.x2 and r.y1 <= min(a[1], b[1]) and max(a[1], b[1]) <= r.y2:
                    return True
        return False

    def distances_from(self, p: Point) -> np.ndarray:
        """Exact integer distances from a registered point to every grid vertex."""
        cached = self._dist_cache.get(p)
        if cached is not None:
            return cached
        if p not in self.index:
            raise KeyError(f"point {p} not registered in the grid")
        dist = _sp_dijkstra(self.matrix, directed=False, indices=self.index[p])
        out = dist.astype(np.int64, copy=False)
        if not np.array_equal(out[np.isfinite(dist)], dist[np.isfinite(dist)]):
            raise AssertionError("non-integer oracle distance")
        self._dist_cache[p] = out
        return out

    def distance(self, p: Point, q: Point) -> int:
        if q not in self.index:
            raise KeyError(f"point {q} not registered in the grid")
        d = self.distances_from(p)[self.index[q]]
        return int(d)

    def monotone_distance(self, s: Point, q: Point, d: str) -> int | None:
        """Shortest-path length from s to q using only edges monotone in d.

        Pure-python Dijkstra over the filtered grid; used to cross-check that
        reachability implies a monotone geodesic of the same length.
        """
        allow = {
            "y+": lambda a, b: b[1] >= a[1],
            "y-": lambda a, b: b[1] <= a[1],
            "x+": lambda a, b: b[0] >= a[0],
            "x-": lambda a, b: b[0] <= a[0],
        }[d]
        start = self.index[s]
        goal = self.index[q]
        indptr, indices, data = self.matrix.indptr, self.matrix.indices, self.matrix.data
        dist = {start: 0}
        heap = [(0, start)]
        while heap:
            dv, v = heapq.heappop(heap)
            if dv > dist.get(v, 1 << 62):
                continue
            if v == goal:
                return dv
            pv = self.points[v]
            for k in range(indptr[v], indptr[v + 1]):
                w = int(indices[k])
                if not allow(pv, self.points[w]):
                    continue
                nd = dv + int(data[k])
                if nd < dist.get(w, 1 << 62):
                    dist[w] = nd
                    heapq.heappush(heap, (nd, w))
        return None


def build_hanan(scene: Scene, extra: set[Point] | frozenset[Point] = frozenset()) -> HananGraph:
    return HananGraph(scene, extra)


def geodesic_distance(g: HananGraph, p: Point, q: Point) -> int:
    return g.distance(p, q)


def brute_farthest(g: HananGraph, q: Point) -> tuple[list[int], int]:
    """Exact argmax site set (ascending indices) and max geodesic distance."""
    scene = g.scene
    qi = g.index[q]
    best = -1
    arg: list[int] = []
    for i, s in enumerate(scene.sites):
        d = int(g.distances_from(s)[qi])
        if d > best:
            best = d
            arg = [i]
        elif d == best:
            arg.append(i)
    return arg, best


def eccentricity(g: HananGraph, q: Point) -> int:
    return brute_farthest(g, q)[1]


def brute_eccentricity_min(g: HananGraph, candidates: list[Point]) -> tuple[list[Point], int]:
    """Minimizers of the max site distance over the candidate set."""
    site_d = [g.distances_from(s) for s in g.scene.sites]
    best_v: int | None = None
    best_pts: list[Point] = []
    for p in candidates:
        pi = g.index[p]
        ecc = max(int(d[pi]) for d in site_d)
        if best_v is None or ecc < best_v:
            best_v = ecc
            best_pts = [p]
        elif ecc == best_v:
            best_pts.append(p)
    assert best_v is not None
    return best_pts, best_v
