"""Scene model: exact integer coordinates, validation, bounding box, direction transforms.

All coordinates are stored internally as *doubled* integers (half-units), so every
midpoint construction that arises from halving a distance between scene features is
an exact integer.  Scene files use the original undoubled integers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Point = tuple[int, int]

DIRECTIONS = ("y+", "y-", "x+", "x-")


class SceneError(ValueError):
    """Raised for unparsable or invalid scene input."""


@dataclass(frozen=True)
class Rect:
    """Axis-aligned open rectangle (internal half-unit coordinates), x1<x2, y1<y2."""

    x1: int
    y1: int
    x2: int
    y2: int

    def __post_init__(self):
        if not (self.x1 < self.x2 and self.y1 < self.y2):
            raise SceneError(f"degenerate rectangle {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.x1, self.y1, self.x2, self.y2)

    @property
    def top_left(self) -> Point:
        return (self.x1, self.y2)

    @property
    def top_right(self) -> Point:
        return (self.x2, self.y2)

    def contains_open(self, p: Point) -> bool:
        """True iff p lies strictly inside (rectangle interiors are obstacles)."""
        return self.x1 < p[0] < self.x2 and self.y1 < p[1] < self.y2

    def contains_closed(self, p: Point) -> bool:
        return self.x1 <= p[0] <= self.x2 and self.y1 <= p[1] <= self.y2

    def intersects_closed(self, other: "Rect") -> bool:
        return not (
            self.x2 < other.x1
            or other.x2 < self.x1
            or self.y2 < other.y1
            or other.y2 < self.y1
        )


@dataclass(frozen=True)
class Scene:
    """Sites, rectangular obstacles and the working bounding box, all in half-units.

    Sites are sorted by (x, y, input order); site indices used throughout the
    package refer to this ordering.
    """

    sites: tuple[Point, ...]
    rects: tuple[Rect, ...]
    bbox: Rect

    @property
    def m(self) -> int:
        return len(self.sites)

    @property
    def n(self) -> int:
        return len(self.rects)

    def in_free_space(self, p: Point) -> bool:
        """p avoids every open rectangle and lies inside the box (closed)."""
        if not self.bbox.contains_closed(p):
            return False
        return not any(r.contains_open(p) for r in self.rects)


def _tight_box(sites: Sequence[Point], rects: Sequence[Rect]) -> tuple[int, int, int, int]:
    xs = [p[0] for p in sites] + [v for r in rects for v in (r.x1, r.x2)]
    ys = [p[1] for p in sites] + [v for r in rects for v in (r.y1, r.y2)]
    return (min(xs), min(ys), max(xs), max(ys))


def compute_bounding_box(sites: Sequence[Point], rects: Sequence[Rect]) -> Rect:
    """Tight box of all features inflated on each side by (width + height + 2).

    The margin is in original units; internally everything is doubled.  A
    post-build assertion elsewhere checks that no subdivision vertex escapes.
    """
    x1, y1, x2, y2 = _tight_box(sites, rects)
    margin = (x2 - x1) + (y2 - y1) + 4  # +2 original units, doubled
    return Rect(x1 - margin, y1 - margin, x2 + margin, y2 + margin)


def make_scene(
    sites: Iterable[tuple[int, int]],
    rects: Iterable[tuple[int, int, int, int]] = (),
    bbox: tuple[int, int, int, int] | None = None,
    doubled: bool = False,
) -> Scene:
    """Build and validate a Scene from original-unit (or pre-doubled) integers."""
    f = 1 if doubled else 2
    site_list = [(int(x) * f, int(y) * f) for x, y in sites]
    rect_list = [Rect(int(a) * f, int(b) * f, int(c) * f, int(d) * f) for a, b, c, d in rects]
    site_list.sort(key=lambda p: (p[0], p[1]))
    if bbox is not None:
        box = Rect(*(int(v) * f for v in bbox))
    else:
        if not site_list:
            raise SceneError("scene needs at least one site")
        box = compute_bounding_box(site_list, rect_list)
    scene = Scene(tuple(site_list), tuple(rect_list), box)
    violations = validate_scene(scene)
    if violations:
        raise SceneError("; ".join(violations))
    return scene


def load_scene(text: str | bytes) -> Scene:
    """Parse the scene JSON schema: {"sites": [[x,y],..], "rects": [[x1,y1,x2,y2],..]}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneError(f"scene JSON parse error: {exc}") from exc
    if not isinstance(data, dict) or "sites" not in data:
        raise SceneError("scene JSON must be an object with a 'sites' array")
    for key in ("sites", "rects"):
        for row in data.get(key, ()):
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise SceneError(f"non-integer coordinate {v!r} in {key}")
    return make_scene(data["sites"], data.get("rects", ()), data.get("bbox"))


def validate_scene(scene: Scene) -> list[str]:
    """Return a list of invariant violations (empty means the scene is valid)."""
    out: list[str] = []
    if scene.m < 1:
        out.append("scene has no sites")
    for i, r in enumerate(scene.rects):
        for j in range(i + 1, scene.n):
            if r.intersects_closed(scene.rects[j]):
                out.append(f"rectangles {i} and {j} touch or overlap")
    for i, p in enumerate(scene.sites):
        for k, r in enumerate(scene.rects):
            if r.contains_open(p):
                out.append(f"site {i} lies inside open rectangle {k}")
    box = scene.bbox
    for i, p in enumerate(scene.sites):
        if not (box.x1 < p[0] < box.x2 and box.y1 < p[1] < box.y2):
            out.append(f"site {i} not strictly inside the bounding box")
    for k, r in enumerate(scene.rects):
        if not (box.x1 < r.x1 and r.x2 < box.x2 and box.y1 < r.y1 and r.y2 < box.y2):
            out.append(f"rectangle {k} not strictly inside the bounding box")
    return out


# Direction transforms.  Each maps its direction vector onto (0, 1) so a single
# upward sweep serves all four directions; every map is an L1 isometry.
_FWD = {
    "y+": lambda x, y: (x, y),
    "y-": lambda x, y: (x, -y),
    "x+": lambda x, y: (y, x),
    "x-": lambda x, y: (y, -x),
}
_INV = {
    "y+": lambda x, y: (x, y),
    "y-": lambda x, y: (x, -y),
    "x+": lambda x, y: (y, x),
    "x-": lambda x, y: (-y, x),
}


def transform_point(p: Point, d: str) -> Point:
    return _FWD[d](p[0], p[1])


def inverse_point(p: Point, d: str) -> Point:
    return _INV[d](p[0], p[1])


def _transform_rect(r: Rect, d: str) -> Rect:
    ax, ay = _FWD[d](r.x1, r.y1)
    bx, by = _FWD[d](r.x2, r.y2)
    return Rect(min(ax, bx), min(ay, by), max(ax, bx), max(ay, by))


@dataclass(frozen=True)
class FrameScene:
    """A scene mapped into the frame where direction `d` becomes y+.

    `order[i]` is the original site index of frame site i.
    """

    direction: str
    scene: Scene
    order: tuple[int, ...] = field(repr=False)

    def to_frame(self, p: Point) -> Point:
        return transform_point(p, self.direction)

    def from_frame(self, p: Point) -> Point:
        return inverse_point(p, self.direction)

    def original_index(self, frame_idx: int) -> int:
        return self.order[frame_idx]

    def original_set(self, frame_ids: Iterable[int]) -> frozenset[int]:
        return frozenset(self.order[i] for i in frame_ids)


def transform_scene(scene: Scene, d: str) -> FrameScene:
    """Map the scene so direction d becomes y+; sites are re-sorted in frame."""
    pts = [(transform_point(p, d), i) for i, p in enumerate(scene.sites)]
    pts.sort(key=lambda t: (t[0][0], t[0][1], t[1]))
    sites = tuple(p for p, _ in pts)
    order = tuple(i for _, i in pts)
    rects = tuple(_transform_rect(r, d) for r in scene.rects)
    box = _transform_rect(scene.bbox, d)
    return FrameScene(d, Scene(sites, rects, box), order)


def fmt_half(v: int) -> int | float:
    """Internal half-unit integer -> original-unit number (exact halves allowed)."""
    if v % 2 == 0:
        return v // 2
    return v / 2  # exact binary .5


def fmt_point(p: Point) -> list:
    return [fmt_half(p[0]), fmt_half(p[1])]


def parse_coord(text: str) -> int:
    """Original-unit coordinate string (integer or .5 decimal) -> internal units."""
    s = text.strip()
    if s.endswith(".5") or s.endswith(".0"):
        whole, frac = s[:-2], s[-1]
        sign = -1 if whole.startswith("-") else 1
        base = int(whole) * 2
        return base + (sign if frac == "5" else 0)
    return int(s) * 2
