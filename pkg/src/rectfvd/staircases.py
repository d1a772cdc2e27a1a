"""Greedy monotone staircase paths from a point and the eight-region classification.

Each of the eight staircases alternates a ray in its primary direction with a jump
along the blocking rectangle's side to the corner advancing in the secondary
direction, and is clipped at the bounding box.  Rectangle interiors block; their
boundaries are free, so rays slide along sides they merely graze.
"""
from __future__ import annotations

from enum import Enum

from .scene import Point, Rect, Scene

DIR_PAIRS = ("ru", "ur", "ul", "lu", "ld", "dl", "dr", "rd")


class RegionClass(Enum):
    reg1 = 1
    reg2 = 2
    reg3 = 3
    reg4 = 4
    reg5 = 5
    reg6 = 6
    reg7 = 7
    reg8 = 8
    on_path = 0


def ray_hit(scene: Scene, p: Point, d: str) -> tuple[Point, int | None]:
    """First point where the axis ray from p enters an open rectangle.

    Returns (hit point, rect index), or (box clip point, None).  A ray starting
    on a rectangle side pointing into the interior hits immediately.
    """
    x0, y0 = p
    best: tuple[int, int] | None = None  # (coordinate along ray, rect index)
    for k, r in enumerate(scene.rects):
        if d in ("r", "l"):
            if not (r.y1 < y0 < r.y2):
                continue
            if d == "r":
                hit = r.x1 if x0 <= r.x1 else (x0 if x0 < r.x2 else None)
                key = hit
            else:
                hit = r.x2 if x0 >= r.x2 else (x0 if x0 > r.x1 else None)
                key = None if hit is None else -hit
        else:
            if not (r.x1 < x0 < r.x2):
                continue
            if d == "u":
                hit = r.y1 if y0 <= r.y1 else (y0 if y0 < r.y2 else None)
                key = hit
            else:
                hit = r.y2 if y0 >= r.y2 else (y0 if y0 > r.y1 else None)
                key = None if hit is None else -hit
        if hit is not None and (best is None or key < best[0]):
            best = (key, k)
    box = scene.bbox
    if best is None:
        clip = {
            "r": (box.x2, y0),
            "l": (box.x1, y0),
            "u": (x0, box.y2),
            "d": (x0, box.y1),
        }[d]
        return clip, None
    key, k = best
    coord = key if d in ("r", "u") else -key
    hit_pt = (coord, y0) if d in ("r", "l") else (x0, coord)
    return hit_pt, k


# For a staircase (primary, secondary): which corner of the hit rectangle the
# path jumps to before the next primary ray.
_CORNER = {
    ("r", "u"): lambda r: (r.x1, r.y2),
    ("r", "d"): lambda r: (r.x1, r.y1),
    ("l", "u"): lambda r: (r.x2, r.y2),
    ("l", "d"): lambda r: (r.x2, r.y1),
    ("u", "r"): lambda r: (r.x2, r.y1),
    ("u", "l"): lambda r: (r.x1, r.y1),
    ("d", "r"): lambda r: (r.x2, r.y2),
    ("d", "l"): lambda r: (r.x1, r.y2),
}


def staircase(scene: Scene, s: Point, dir_pair: str) -> list[Point]:
    """Vertex list of the staircase from s, ending on the bounding box."""
    if not scene.in_free_space(s):
        raise ValueError(f"staircase origin {s} not in free space")
    primary, secondary = dir_pair[0], dir_pair[1]
    corner_of = _CORNER[(primary, secondary)]
    verts = [s]
    cur = s
    while True:
        hit, k = ray_hit(scene, cur, primary)
        if hit != cur:
            verts.append(hit)
        if k is None:
            break
        nxt = corner_of(scene.rects[k])
        if nxt != hit:
            verts.append(nxt)
        cur = nxt
    return verts


def _on_polyline(verts: list[Point], p: Point) -> bool:
    for a, b in zip(verts, verts[1:]):
        if a[0] == b[0]:
            if p[0] == a[0] and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
                return True
        else:
            if p[1] == a[1] and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]):
                return True
    return p == verts[0]


def _threshold(verts_a: list[Point], verts_b: list[Point], coord: int, horizontal: bool, lo: bool) -> int:
    """Extreme height (or x) of the combined staircase pieces covering a column/row.

    horizontal=True treats the polylines as height-over-x and returns min height
    when lo else max; horizontal=False swaps axes.
    """
    best: int | None = None
    for verts in (verts_a, verts_b):
        for a, b in zip(verts, verts[1:]):
            if horizontal:
                if a[1] != b[1]:
                    continue
                if min(a[0], b[0]) <= coord <= max(a[0], b[0]):
                    v = a[1]
                    if best is None or (v < best if lo else v > best):
                        best = v
            else:
                if a[0] != b[0]:
                    continue
                if min(a[1], b[1]) <= coord <= max(a[1], b[1]):
                    v = a[0]
                    if best is None or (v < best if lo else v > best):
                        best = v
    assert best is not None, "staircase pair does not span the box"
    return best


class StaircaseFan:
    """All eight staircases from one origin, with reachability predicates."""

    def __init__(self, scene: Scene, s: Point):
        if not scene.in_free_space(s):
            raise ValueError(f"point {s} not in free space")
        self.scene = scene
        self.s = s
        self.paths = {dp: staircase(scene, s, dp) for dp in DIR_PAIRS}

    def on_path(self, p: Point) -> bool:
        return any(_on_polyline(v, p) for v in self.paths.values())

    def reachable(self, p: Point, d: str) -> bool:
        """Closed-region reachability: boundaries (the staircases) included."""
        x, y = p
        if d == "y+":
            return y >= _threshold(self.paths["lu"], self.paths["ru"], x, True, lo=True)
        if d == "y-":
            return y <= _threshold(self.paths["ld"], self.paths["rd"], x, True, lo=False)
        if d == "x+":
            return x >= _threshold(self.paths["ur"], self.paths["dr"], y, False, lo=True)
        if d == "x-":
            return x <= _threshold(self.paths["ul"], self.paths["dl"], y, False, lo=False)
        raise ValueError(f"unknown direction {d}")

    def classify(self, p: Point) -> RegionClass:
        if self.on_path(p):
            return RegionClass.on_path
        yp = self.reachable(p, "y+")
        ym = self.reachable(p, "y-")
        xp = self.reachable(p, "x+")
        xm = self.reachable(p, "x-")
        if yp:
            if xp:
                return RegionClass.reg2
            if xm:
                return RegionClass.reg4
            return RegionClass.reg3
        if ym:
            if xm:
                return RegionClass.reg6
            if xp:
                return RegionClass.reg8
            return RegionClass.reg7
        if xp:
            return RegionClass.reg1
        if xm:
            return RegionClass.reg5
        raise AssertionError(f"point {p} in no region of {self.s}")


def classify(scene: Scene, s: Point, p: Point) -> RegionClass:
    if not scene.in_free_space(p):
        raise ValueError(f"point {p} not in free space")
    return StaircaseFan(scene, s).classify(p)


def reachable(scene: Scene, s: Point, p: Point, d: str) -> bool:
    """True iff every geodesic from s to p is monotone in direction d (closed)."""
    if not scene.in_free_space(p):
        raise ValueError(f"point {p} not in free space")
    return StaircaseFan(scene, s).reachable(p, d)
