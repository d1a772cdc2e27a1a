"""Planar subdivision from an axis-aligned / 45-degree segment soup.

Segments are bucketed by supporting line, overlaps are unioned, mutual
intersections split everything into atomic edges, and faces are extracted by
half-edge rotation with hole assignment by leftward ray shooting.  All
coordinates are integers (crossings of these line classes at integer points are
guaranteed by the even-coordinate scene model); probe points for face labeling
are quarter-unit rationals.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass, field
from fractions import Fraction

Pt = tuple[int, int]

# direction id -> unit step; sorted counterclockwise starting at +x
_DIRS = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
_DIR_ID = {d: i for i, d in enumerate(_DIRS)}


def _line_key(a: Pt, b: Pt):
    (x1, y1), (x2, y2) = a, b
    if x1 == x2:
        return ("v", x1)
    if y1 == y2:
        return ("h", y1)
    if (x2 - x1) == (y2 - y1):
        return ("d", y1 - x1)  # slope +1
    if (x2 - x1) == -(y2 - y1):
        return ("a", y1 + x1)  # slope -1
    raise ValueError(f"segment {a}-{b} not axis-aligned or 45 degrees")


def _param(key, p: Pt) -> int:
    kind = key[0]
    return p[1] if kind == "v" else p[0]


def _point(key, t: int) -> Pt:
    kind, c = key
    if kind == "v":
        return (c, t)
    if kind == "h":
        return (t, c)
    if kind == "d":
        return (t, t + c)
    return (t, c - t)


def _line_intersection(k1, k2) -> Pt | None:
    """Intersection point of two supporting lines (None if parallel)."""
    if k1[0] == k2[0]:
        return None
    (a, c1), (b, c2) = k1, k2
    kinds = {k1[0]: k1[1], k2[0]: k2[1]}

    def solve(kx: dict) -> Pt | None:
        if "v" in kx and "h" in kx:
            return (kx["v"], kx["h"])
        if "v" in kx and "d" in kx:
            return (kx["v"], kx["v"] + kx["d"])
        if "v" in kx and "a" in kx:
            return (kx["v"], kx["a"] - kx["v"])
        if "h" in kx and "d" in kx:
            return (kx["h"] - kx["d"], kx["h"])
        if "h" in kx and "a" in kx:
            return (kx["a"] - kx["h"], kx["h"])
        if "d" in kx and "a" in kx:
            s = kx["a"] - kx["d"]
            if s % 2:
                return None  # crosses at a half-integer: cannot happen for scene data
            x = s // 2
            return (x, x + kx["d"])
        return None

    return solve(kinds)


@dataclass
class Face:
    cycle: list[int]  # directed edge ids of the outer boundary (CCW)
    holes: list[list[int]] = field(default_factory=list)
    label: object = None
    area2: int = 0  # doubled signed area of outer minus holes


class Subdivision:
    """Atomic planar graph plus extracted faces."""

    def __init__(self, segments: list[tuple[Pt, Pt, object]]):
        # 1. bucket by supporting line, union covered intervals, collect cuts
        lines: dict[object, dict] = {}
        for a, b, tag in segments:
            if a == b:
                continue
            key = _line_key(a, b)
            rec = lines.setdefault(key, {"ivals": [], "cuts": set(), "tags": []})
            t1, t2 = sorted((_param(key, a), _param(key, b)))
            rec["ivals"].append((t1, t2))
            rec["cuts"].update((t1, t2))
            rec["tags"].append((t1, t2, tag))
        keys = list(lines)
        for i, k1 in enumerate(keys):
            for k2 in keys[i + 1 :]:
                p = _line_intersection(k1, k2)
                if p is None:
                    continue
                t1, t2 = _param(k1, p), _param(k2, p)
                if _covered(lines[k1]["ivals"], t1) and _covered(lines[k2]["ivals"], t2):
                    lines[k1]["cuts"].add(t1)
                    lines[k2]["cuts"].add(t2)

        # 2. atomic edges
        self.vertices: dict[Pt, int] = {}
        self.vpts: list[Pt] = []
        edges: list[tuple[int, int, object]] = []
        self.edge_tags: list[list] = []
        for key, rec in lines.items():
            ivals = _merge_ivals(rec["ivals"])
            cuts = sorted(rec["cuts"])
            for t1, t2 in ivals:
                pts = [t1] + [c for c in cuts if t1 < c < t2] + [t2]
                for a, b in zip(pts, pts[1:]):
                    va = self._vid(_point(key, a))
                    vb = self._vid(_point(key, b))
                    tags = [t for (u, v, t) in rec["tags"] if u <= a and b <= v]
                    edges.append((va, vb, tags))
        self.edges: list[tuple[int, int]] = [(a, b) for a, b, _ in edges]
        self.edge_tags = [t for _, _, t in edges]
        self._build_half_edges()
        self._extract_faces()

    def _vid(self, p: Pt) -> int:
        i = self.vertices.get(p)
        if i is None:
            i = len(self.vpts)
            self.vertices[p] = i
            self.vpts.append(p)
        return i

    # -- half-edge machinery ---------------------------------------------------

    def _build_half_edges(self):
        # half-edge 2e = edges[e] forward, 2e+1 = backward
        self.he_target = []
        self.he_origin = []
        for a, b in self.edges:
            self.he_origin += [a, b]
            self.he_target += [b, a]
        out: dict[int, list[int]] = {}
        for h in range(len(self.he_origin)):
            out.setdefault(self.he_origin[h], []).append(h)

        def dir_id(h):
            a = self.vpts[self.he_origin[h]]
            b = self.vpts[self.he_target[h]]
            dx, dy = b[0] - a[0], b[1] - a[1]
            sx = (dx > 0) - (dx < 0)
            sy = (dy > 0) - (dy < 0)
            return _DIR_ID[(sx, sy)]

        for hs in out.values():
            hs.sort(key=dir_id)
        # next(h): among half-edges leaving target(h), the clockwise-next from
        # the reversal of h; this keeps the face on the left of every cycle
        self.he_next = [0] * len(self.he_origin)
        for h in range(len(self.he_origin)):
            tw = h ^ 1
            hs = out[self.he_origin[tw]]
            i = hs.index(tw)
            self.he_next[h] = hs[(i - 1) % len(hs)]

    def _extract_faces(self):
        nh = len(self.he_origin)
        cycle_of = [-1] * nh
        cycles: list[list[int]] = []
        for h in range(nh):
            if cycle_of[h] != -1:
                continue
            cyc = []
            cur = h
            while cycle_of[cur] == -1:
                cycle_of[cur] = len(cycles)
                cyc.append(cur)
                cur = self.he_next[cur]
            cycles.append(cyc)
        area2 = []
        for cyc in cycles:
            s = 0
            for h in cyc:
                a = self.vpts[self.he_origin[h]]
                b = self.vpts[self.he_target[h]]
                s += a[0] * b[1] - b[0] * a[1]
            area2.append(s)
        # positive cycles are outer boundaries; non-positive are holes / the
        # outer world.  Zero-area cycles are slit boundaries: treat as holes.
        self.cycles = cycles
        self.cycle_area2 = area2
        self.cycle_of = cycle_of
        outer = [i for i, a in enumerate(area2) if a > 0]
        self.faces: list[Face] = [Face(cycles[i], area2=area2[i]) for i in outer]
        self.face_of_cycle = {i: j for j, i in enumerate(outer)}
        self.face_outer_cycle = outer
        self.outer_cycles = set(outer)
        self.hole_host: dict[int, int] = {}
        self._cycle_edges = [
            [(self.vpts[self.he_origin[h]], self.vpts[self.he_target[h]]) for h in cyc]
            for cyc in cycles
        ]
        for ci, a in enumerate(area2):
            if a > 0:
                continue
            host = self._containing_face(ci)
            if host is not None:
                self.faces[host].holes.append(self.cycles[ci])
                self.faces[host].area2 += a
                self.hole_host[ci] = host

    def _cycle_probe(self, ci: int) -> tuple[Fraction, Fraction]:
        """Quarter-offset point just on the face-left side of the cycle.

        Quarter coordinates never lie on any edge of the integer arrangement,
        and the face-left side of a hole cycle is its host face.
        """
        h = max(self.cycles[ci], key=self._he_len2)
        a = self.vpts[self.he_origin[h]]
        b = self.vpts[self.he_target[h]]
        mx = Fraction(a[0] + b[0], 2)
        my = Fraction(a[1] + b[1], 2)
        dx, dy = b[0] - a[0], b[1] - a[1]
        sx = (dx > 0) - (dx < 0)
        sy = (dy > 0) - (dy < 0)
        return (mx - Fraction(sy, 4), my + Fraction(sx, 4))

    def _point_in_cycle(self, q, ci: int) -> bool:
        """Exact leftward-ray crossing parity for a probe on no edge."""
        qx, qy = q
        crossings = 0
        for pa, pb in self._cycle_edges[ci]:
            if pa[1] == pb[1]:
                continue
            if (pa[1] > qy) == (pb[1] > qy):
                continue
            if pa[0] == pb[0]:
                x = Fraction(pa[0])
            else:
                slope = (pb[0] - pa[0]) // (pb[1] - pa[1])
                x = pa[0] + slope * (qy - pa[1])
            if x < qx:
                crossings += 1
        return crossings % 2 == 1

    def _containing_face(self, ci: int) -> int | None:
        """Host face of a hole cycle via the innermost cycle containing a probe
        just outside it; CCW wins area ties (a face exactly filling a hole)."""
        q = self._cycle_probe(ci)
        best = None
        best_key = None
        for cj in range(len(self.cycles)):
            if cj == ci:
                continue
            area = abs(self.cycle_area2[cj])
            if area == 0:
                continue
            key = (area, 0 if cj in self.outer_cycles else 1)
            if best_key is not None and key >= best_key:
                continue
            if self._point_in_cycle(q, cj):
                best, best_key = cj, key
        if best is None:
            return None
        assert best in self.outer_cycles, "hole nested inside a dead region"
        return self.face_of_cycle[best]

    # -- probes ------------------------------------------------------------------

    def face_probe(self, fi: int) -> tuple[Fraction, Fraction]:
        """A rational point strictly inside face fi (left of its CCW boundary)."""
        return self._cycle_probe(self.face_outer_cycle[fi])

    def _he_len2(self, h: int) -> int:
        a = self.vpts[self.he_origin[h]]
        b = self.vpts[self.he_target[h]]
        return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2

    def edge_faces(self, e: int) -> tuple[int | None, int | None]:
        """Face ids on (left of forward, left of backward) side of edge e."""
        out = []
        for h in (2 * e, 2 * e + 1):
            ci = self.cycle_of[h]
            if ci in self.outer_cycles:
                out.append(self.face_of_cycle[ci])
            else:
                out.append(self.hole_host.get(ci))
        return out[0], out[1]

    def total_area2(self) -> int:
        return sum(f.area2 for f in self.faces)


def _merge_ivals(ivals: list[tuple[int, int]]) -> list[tuple[int, int]]:
    ivals = sorted(ivals)
    out = [list(ivals[0])]
    for a, b in ivals[1:]:
        if a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


def _covered(ivals: list[tuple[int, int]], t: int) -> bool:
    return any(a <= t <= b for a, b in ivals)
