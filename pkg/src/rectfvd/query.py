"""Farthest-neighbor queries: downward ray shooting onto a directional layer
plus binary search along the hit segment, combined over the four directions.

The ray shooter is a static segment tree over the layer's horizontal segments
with per-node y-sorted lists (build O(k log k), query O(log^2 k)).
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .scene import DIRECTIONS, Point, Scene, transform_point
from .stepfn import Owners
from .sweep import Mark, Segment, SweepResult, sweep_direction


class RayShooter:
    """First-hit-below queries over horizontal segments (and point marks)."""

    def __init__(self, items: list[tuple[int, int, int]]):
        # items: (x1, x2, y); zero-length items are point marks
        self.items = items
        coords = sorted({x for it in items for x in (it[0], it[1])})
        self.coords = coords
        self.slots = max(1, 2 * len(coords) - 1)
        size = 1
        while size < self.slots:
            size *= 2
        self.size = size
        self.tree: list[list[tuple[int, int]]] = [[] for _ in range(2 * size)]
        for idx, (x1, x2, y) in enumerate(items):
            lo = 2 * bisect_left(coords, x1)
            hi = 2 * bisect_left(coords, x2)
            self._insert(lo, hi, y, idx)
        for node in self.tree:
            node.sort()

    def _insert(self, lo: int, hi: int, y: int, idx: int) -> None:
        lo += self.size
        hi += self.size + 1
        while lo < hi:
            if lo & 1:
                self.tree[lo].append((y, idx))
                lo += 1
            if hi & 1:
                hi -= 1
                self.tree[hi].append((y, idx))
            lo //= 2
            hi //= 2

    def _slot(self, x) -> int | None:
        c = self.coords
        if not c or x < c[0] or x > c[-1]:
            return None
        i = bisect_left(c, x)
        if i < len(c) and c[i] == x:
            return 2 * i
        return 2 * i - 1

    def _path(self, slot: int):
        node = slot + self.size
        while node >= 1:
            yield self.tree[node]
            node //= 2

    def shoot(self, x, y) -> list[int]:
        """Indices of all items at the highest height <= y covering x."""
        slot = self._slot(x)
        if slot is None or slot >= self.slots:
            return []
        best: int | None = None
        for node in self._path(slot):
            j = bisect_right(node, (y, 1 << 60)) - 1
            if j >= 0:
                hy = node[j][0]
                if best is None or hy > best:
                    best = hy
        if best is None:
            return []
        out = []
        for node in self._path(slot):
            j = bisect_right(node, (best, 1 << 60)) - 1
            while j >= 0 and node[j][0] == best:
                out.append(node[j][1])
                j -= 1
        return sorted(set(out))

    def covering(self, x, y_max) -> list[int]:
        """All items covering column x with height <= y_max, any order."""
        slot = self._slot(x)
        if slot is None or slot >= self.slots:
            return []
        out = []
        for node in self._path(slot):
            j = bisect_right(node, (y_max, 1 << 60)) - 1
            out.extend(idx for (hy, idx) in node[: j + 1])
        return out


@dataclass
class ColumnPiece:
    """One vertical stretch of a column profile: value(y) = base + (y - y0)."""

    y0: int
    y1: int  # valid for y in [y0, y1); last piece may be open-ended
    base: int | None  # None = unreachable stretch
    owners: Owners


class DirectionalLayer:
    """Query layer for one direction, stored in its own sweep frame."""

    def __init__(self, result: SweepResult):
        self.result = result
        self.frame = result.frame
        self.payload: list[Segment | Mark] = list(result.segments) + list(result.marks)
        items = []
        for p in self.payload:
            if isinstance(p, Segment):
                items.append((p.x1, p.x2, p.y))
            else:
                items.append((p.x, p.x, p.y))
        self.shooter = RayShooter(items)

    # -- point evaluation ---------------------------------------------------

    def eval_frame(self, p) -> tuple[int, Owners] | None:
        """Exact (distance, frame-index owner set) at a frame point, or None."""
        x, y = p
        hits = self.shooter.shoot(x, y)
        if not hits:
            return None
        value = None
        owners: set = set()
        blocked = False
        for idx in hits:
            item = self.payload[idx]
            if isinstance(item, Segment):
                if item.fn is None:
                    blocked = True
                    continue
                v = item.fn.value_at(x) + (y - item.y)
                o = item.fn.owners_at(x)
            else:
                v = item.value + (y - item.y)
                o = item.owners
            if value is None or v > value:
                value, owners = v, set(o)
            elif v == value:
                owners |= o
        if value is None:
            return None  # only blockers hit: unreachable from every site
        assert not blocked, "blocker and live segment at the same hit height"
        return value, frozenset(owners)

    def eval(self, p) -> tuple[int, frozenset] | None:
        """Evaluate at an original-frame point; owners in original site ids."""
        r = self.eval_frame(transform_point(p, self.frame.direction))
        if r is None:
            return None
        v, own = r
        return v, self.frame.original_set(own)

    # -- profiles used by trace walking --------------------------------------

    def column_pieces(self, x, y_lo, y_hi) -> list[ColumnPiece]:
        """Profile of the distance along frame column x over [y_lo, y_hi]."""
        idxs = self.shooter.covering(x, y_hi)
        segs: dict[int, tuple[int | None, Owners]] = {}
        for idx in idxs:
            item = self.payload[idx]
            if isinstance(item, Segment):
                val = None if item.fn is None else item.fn.value_at(x)
                own = frozenset() if item.fn is None else item.fn.owners_at(x)
            else:
                val, own = item.value, item.owners
            prev = segs.get(item.y)
            if prev is None:
                segs[item.y] = (val, own)
            else:
                pv, po = prev
                if val is None:
                    segs[item.y] = (pv, po)
                elif pv is None:
                    segs[item.y] = (val, own)
                else:
                    assert pv == val
                    segs[item.y] = (val, po | own)
        levels = sorted(segs)
        out: list[ColumnPiece] = []
        marks = [l for l in levels if y_lo < l <= y_hi]
        cut = [y_lo] + marks + [y_hi]
        for a, b in zip(cut, cut[1:]):
            prior_idx = bisect_right(levels, a) - 1
            if prior_idx >= 0:
                lvl = levels[prior_idx]
                v, o = segs[lvl]
                base = None if v is None else v + (a - lvl)
                out.append(ColumnPiece(a, b, base, o))
            else:
                out.append(ColumnPiece(a, b, None, frozenset()))
        if not out:
            out.append(ColumnPiece(y_lo, y_hi, None, frozenset()))
        return out

    def feature_xs(self) -> list[int]:
        """Frame x-coordinates where segment structure changes (for traces)."""
        out: set[int] = set()
        for p in self.payload:
            if isinstance(p, Segment):
                out.add(p.x1)
                out.add(p.x2)
                if p.fn is not None:
                    out.update(p.fn.xs)
                    out.update(p.fn.pties.keys())
            else:
                out.add(p.x)
        return sorted(out)

    def feature_ys(self) -> list[int]:
        return sorted({p.y for p in self.payload})


class FarthestNeighborIndex:
    """Four directional layers plus the transforms combining them."""

    def __init__(self, scene: Scene, audit: bool = False):
        self.scene = scene
        self.results = {d: sweep_direction(scene, d, audit=audit) for d in DIRECTIONS}
        self.layers = {d: DirectionalLayer(self.results[d]) for d in DIRECTIONS}

    def farthest_in_direction(self, d: str, q: Point) -> tuple[list[int], int] | None:
        if not self.scene.in_free_space(q):
            raise ValueError(f"query point {q} not in free space")
        r = self.layers[d].eval(q)
        if r is None:
            return None
        v, own = r
        return sorted(own), v

    def farthest_neighbor(self, q: Point) -> tuple[list[int], int]:
        if not self.scene.in_free_space(q):
            raise ValueError(f"query point {q} not in free space")
        best: int | None = None
        sites: set[int] = set()
        for d in DIRECTIONS:
            r = self.layers[d].eval(q)
            if r is None:
                continue
            v, own = r
            if best is None or v > best:
                best, sites = v, set(own)
            elif v == best:
                sites |= own
        assert best is not None, f"no direction reaches {q}"
        return sorted(sites), best

    def eccentricity(self, q) -> int:
        best = None
        for d in DIRECTIONS:
            r = self.layers[d].eval(q)
            if r is not None and (best is None or r[0] > best):
                best = r[0]
        assert best is not None
        return best


def build_index(scene: Scene, audit: bool = False) -> FarthestNeighborIndex:
    return FarthestNeighborIndex(scene, audit=audit)
