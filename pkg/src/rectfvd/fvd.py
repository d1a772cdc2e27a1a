"""Explicit farthest-point Voronoi diagram and geodesic center.

Pipeline: vertical decomposition into rectangular faces; per-face traces where
one directional map stops strictly dominating another (exact per-column
threshold solving; within a gap free of structural candidates the threshold is
monotone with slopes 0/+-1 and jumps only at integer columns, so endpoint
slopes decide and bisection refines exactly); zone assignment; then one global
overlay of map edges, traces and decomposition segments, glued by merging
faces with equal farthest-site sets.  The center is minimized exactly over the
resulting one-skeleton.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .maps import OBSTACLE_INTERIOR, label_and_merge, scene_boundary_segments, sweep_edge_segments
from .query import FarthestNeighborIndex
from .scene import DIRECTIONS, Point, Scene, inverse_point, transform_point
from .subdivision import Subdivision

Pt = tuple[int, int]


@dataclass
class VerticalDecomposition:
    segments: list[tuple[int, int, int]]  # (x, y_lo, y_hi) maximal free extensions
    faces: list[tuple[int, int, int, int]]  # rectangles (x1, y1, x2, y2)


def _vertical_extension(scene: Scene, x: int, y_lo: int, y_hi: int) -> tuple[int, int]:
    """Maximal free vertical stretch through [y_lo, y_hi] at column x.

    Only rectangles strictly spanning x block; grazing a side slides past.
    """
    top = scene.bbox.y2
    bot = scene.bbox.y1
    for r in scene.rects:
        if r.x1 < x < r.x2:
            if r.y2 <= y_lo:
                bot = max(bot, r.y2)
            if r.y1 >= y_hi:
                top = min(top, r.y1)
    return bot, top


def vertical_decomposition(scene: Scene) -> VerticalDecomposition:
    segs: list[tuple[int, int, int]] = []
    for r in scene.rects:
        for x in (r.x1, r.x2):
            lo, hi = _vertical_extension(scene, x, r.y1, r.y2)
            segs.append((x, lo, hi))
    soup = scene_boundary_segments(scene)
    for x, lo, hi in segs:
        soup.append(((x, lo), (x, hi), ("vd",)))
    sub = Subdivision(soup)
    faces = []
    for fi, face in enumerate(sub.faces):
        probe = sub.face_probe(fi)
        if any(r.contains_open(probe) for r in scene.rects):
            continue
        pts = [sub.vpts[sub.he_origin[h]] for h in face.cycle]
        x1 = min(p[0] for p in pts)
        x2 = max(p[0] for p in pts)
        y1 = min(p[1] for p in pts)
        y2 = max(p[1] for p in pts)
        assert face.area2 == 2 * (x2 - x1) * (y2 - y1), "decomposition face not a rectangle"
        faces.append((x1, y1, x2, y2))
    faces.sort()
    return VerticalDecomposition(segs, faces)


# -- traces ---------------------------------------------------------------------


@dataclass
class Trace:
    """Dominance threshold polyline of one map against another across a face.

    Vertices are exact points in the primary direction's frame; strictly above
    the curve (in frame orientation) the primary map strictly dominates.
    Vertical connector pieces appear where a tie region collapses.
    """

    direction: str
    other: str
    vertices: list[Pt]


def _inv_frac(p, d: str):
    """inverse_point that also accepts Fraction coordinates."""
    x, y = p
    if d == "y+":
        return (x, y)
    if d == "y-":
        return (x, -y)
    if d == "x+":
        return (y, x)
    return (-y, x)


def _fwd_frac(p, d: str):
    x, y = p
    if d == "y+":
        return (x, y)
    if d == "y-":
        return (x, -y)
    if d == "x+":
        return (y, x)
    return (y, -x)


class _ColumnSolver:
    """Exact dominance-threshold machinery for one ordered direction pair,
    working in the primary direction's frame.

    Feature lines of both layers map to axis-parallel lines of this frame:
    vertical ones are the trace's static column candidates, horizontal ones
    ("levels") are where distance functions bend or jump along a column.
    Between candidates the threshold is monotone with slopes 0/+-1 and jumps
    only at integer columns.
    """

    def __init__(self, index: FarthestNeighborIndex, d: str, d2: str):
        self.index = index
        self.d = d
        self.d2 = d2
        self.layer = index.layers[d]
        self.layer2 = index.layers[d2]
        self._memo: dict = {}
        vlines: set[int] = set()
        levels: set[int] = set()
        for layer in (self.layer, self.layer2):
            e = layer.frame.direction
            p0 = transform_point(inverse_point((0, 0), d), e)
            px = transform_point(inverse_point((1, 0), d), e)
            py = transform_point(inverse_point((0, 1), d), e)
            ex = (px[0] - p0[0], px[1] - p0[1])
            ey = (py[0] - p0[0], py[1] - p0[1])
            assert ex[0] * ey[0] + ex[1] * ey[1] == 0
            for fx in layer.feature_xs():
                if ex[0] != 0:  # frame-x varies with our x: a vertical line
                    vlines.add((fx - p0[0]) * ex[0])
                else:
                    levels.add((fx - p0[0]) * ey[0])
            for fy in layer.feature_ys():
                if ex[1] != 0:
                    vlines.add((fy - p0[1]) * ex[1])
                else:
                    levels.add((fy - p0[1]) * ey[1])
        self._vlines = sorted(vlines)
        self._levels = sorted(levels)

    def values(self, p_frame) -> tuple[int | None, int | None]:
        got = self._memo.get(p_frame)
        if got is not None:
            return got
        orig = _inv_frac(p_frame, self.d)
        r1 = self.layer.eval(orig)
        r2 = self.layer2.eval(orig)
        out = (None if r1 is None else r1[0], None if r2 is None else r2[0])
        self._memo[p_frame] = out
        return out

    def dominates(self, p_frame) -> bool:
        v1, v2 = self.values(p_frame)
        if v1 is None:
            return False
        return v2 is None or v1 > v2

    # threshold per column -------------------------------------------------------

    def threshold(self, x, y_lo: int, y_hi: int):
        """Topmost y in [y_lo, y_hi] at which strict dominance of d fails;
        y_lo means strict dominance on the whole closed column."""
        if not self.dominates((x, y_hi)):
            return y_hi
        bounds = [y_lo] + [l for l in self._levels if y_lo < l < y_hi] + [y_hi]
        for i in range(len(bounds) - 1, 0, -1):
            ya, yb = bounds[i - 1], bounds[i]
            if yb != y_hi and not self.dominates((x, yb)):
                return yb
            q1 = Fraction(3 * ya + yb, 4)
            q2 = Fraction(ya + 3 * yb, 4)
            v11, v21 = self.values((x, q1))
            v12, v22 = self.values((x, q2))
            if v11 is None or v12 is None:
                assert v11 is None and v12 is None
                return yb  # primary unreachable on the gap: failure up to yb
            if v21 is None or v22 is None:
                assert v21 is None and v22 is None
                if not self.dominates((x, ya)):
                    return ya
                continue
            s1 = (v12 - v11) / (q2 - q1)
            s2 = (v22 - v21) / (q2 - q1)
            dsl = s1 - s2
            dc = (v11 - s1 * q1) - (v21 - s2 * q1)
            top = dsl * yb + dc
            bot = dsl * ya + dc
            if top <= 0:
                return yb
            if bot > 0:
                if not self.dominates((x, ya)):
                    return ya
                continue
            assert dsl > 0
            y_star = -dc / dsl
            assert ya <= y_star <= yb
            return int(y_star) if y_star.denominator == 1 else y_star
        return y_lo

    # full trace across a frame-face ----------------------------------------------

    def trace(self, fx1: int, fy1: int, fx2: int, fy2: int) -> Trace:
        xs = sorted({fx1, fx2} | {v for v in self._vlines if fx1 < v < fx2})
        th = {x: self.threshold(x, fy1, fy2) for x in xs}
        verts: list = [(xs[0], th[xs[0]])]
        for xa, xb in zip(xs, xs[1:]):
            self._refine(xa, th[xa], xb, th[xb], fy1, fy2, verts)
        return Trace(self.d, self.d2, _dedupe(verts))

    def _refine(self, xa, ya, xb, yb, fy1, fy2, out: list) -> None:
        dy = yb - ya
        dx = xb - xa
        if dy == 0:
            # monotone within the gap: equal ends certify a flat piece
            out.append((xb, yb))
            return
        if dx == 1:
            self._unit_gap(xa, ya, xb, yb, fy1, fy2, out)
            return
        if abs(dy) == dx and self._verify_diagonal(xa, ya, xb, yb, fy1, fy2):
            out.append((xb, yb))
            return
        xm = (xa + xb) // 2
        ym = self.threshold(xm, fy1, fy2)
        self._refine(xa, ya, xm, ym, fy1, fy2, out)
        self._refine(xm, ym, xb, yb, fy1, fy2, out)

    def _unit_gap(self, xa, ya, xb, yb, fy1, fy2, out: list) -> None:
        """Resolve a unit-width gap: one open linear piece plus jumps pinned
        to the integer endpoints; two interior probes recover the piece."""
        q1 = self.threshold(Fraction(4 * xa + 1, 4), fy1, fy2)
        q2 = self.threshold(Fraction(4 * xa + 3, 4), fy1, fy2)
        slope = 2 * (q2 - q1)  # probes are half a unit apart
        assert slope in (0, 1, -1), (xa, ya, xb, yb, q1, q2)
        start_f = Fraction(q1) - Fraction(slope, 4)
        end_f = Fraction(q2) + Fraction(slope, 4)
        assert start_f.denominator == 1 and end_f.denominator == 1, (q1, q2)
        start = int(start_f)
        end = int(end_f)
        if start != ya:
            out.append((xa, start))
        out.append((xb, end))
        if end != yb:
            out.append((xb, yb))

    def _verify_diagonal(self, xa, ya, xb, yb, fy1, fy2) -> bool:
        """True iff the threshold equals the +-1-slope line on [xa, xb].

        Checks the dominance sign along the two quarter-offset parallels: the
        threshold then stays in a half-unit tube around the line, which pins
        it exactly (jumps have integer height, bends sit on integer columns).
        """
        s = 1 if yb > ya else -1
        b = ya - s * xa
        for off, want in ((Fraction(1, 4), True), (Fraction(-1, 4), False)):
            cross = {Fraction(xa), Fraction(xb)}
            for L in self._levels:
                xc = Fraction(L - b - off, s)
                if xa < xc < xb:
                    cross.add(xc)
            pts = sorted(cross)
            for xc in pts[1:-1]:
                if self.dominates((xc, s * xc + b + off)) != want:
                    return False
            for u, v in zip(pts, pts[1:]):
                p1 = Fraction(3 * u + v, 4)
                p2 = Fraction(u + 3 * v, 4)
                a1 = self.values((p1, s * p1 + b + off))
                a2 = self.values((p2, s * p2 + b + off))
                if (a1[0] is None) != (a2[0] is None) or (a1[1] is None) != (a2[1] is None):
                    return False  # reachability flip inside a piece: bisect instead
                if a1[0] is None:
                    if want:
                        return False
                    continue
                if a1[1] is None:
                    if not want:
                        return False
                    continue
                d1 = a1[0] - a1[1]
                d2 = a2[0] - a2[1]
                slope = (d2 - d1) / (p2 - p1)
                at_u = d1 + slope * (u - p1)
                at_v = d1 + slope * (v - p1)
                if want:
                    if not (d1 > 0 and d2 > 0 and at_u >= 0 and at_v >= 0):
                        return False
                else:
                    if not (d1 <= 0 and d2 <= 0 and at_u <= 0 and at_v <= 0):
                        return False
        return True


def _dedupe(verts):
    out = [verts[0]]
    for v in verts[1:]:
        if v != out[-1]:
            out.append(v)
    return out


def compute_trace(
    index: FarthestNeighborIndex, face: tuple[int, int, int, int], d: str, d2: str
) -> Trace:
    """Trace of direction d against d2 over one decomposition face; vertices in
    d's frame coordinates."""
    x1, y1, x2, y2 = face
    corners = [transform_point((x1, y1), d), transform_point((x2, y2), d)]
    fx1, fx2 = sorted((corners[0][0], corners[1][0]))
    fy1, fy2 = sorted((corners[0][1], corners[1][1]))
    return _ColumnSolver(index, d, d2).trace(fx1, fy1, fx2, fy2)


def trace_segments_original(trace: Trace) -> list[tuple[Pt, Pt]]:
    pts = [inverse_point(v, trace.direction) for v in trace.vertices]
    return [(a, b) for a, b in zip(pts, pts[1:]) if a != b]


@dataclass
class FaceZones:
    face: tuple[int, int, int, int]
    traces: dict[str, list[Trace]]

    def zone_of(self, index: FarthestNeighborIndex, p) -> str | None:
        """Strictly dominant direction at p, or None inside the bisector zone."""
        vals = {}
        for d in DIRECTIONS:
            r = index.layers[d].eval(p)
            vals[d] = None if r is None else r[0]
        best = max(v for v in vals.values() if v is not None)
        winners = [d for d in DIRECTIONS if vals[d] == best]
        return winners[0] if len(winners) == 1 else None

    def assigned(self, index: FarthestNeighborIndex, p) -> str:
        """Zone with the bisector leftover assigned by priority y+ y- x+ x-."""
        z = self.zone_of(index, p)
        if z is not None:
            return z
        vals = {}
        for d in DIRECTIONS:
            r = index.layers[d].eval(p)
            vals[d] = None if r is None else r[0]
        best = max(v for v in vals.values() if v is not None)
        for d in DIRECTIONS:
            if vals[d] == best:
                return d
        raise AssertionError("unreachable")


def zones(index: FarthestNeighborIndex, face: tuple[int, int, int, int]) -> FaceZones:
    traces = {
        d: [compute_trace(index, face, d, d2) for d2 in DIRECTIONS if d2 != d]
        for d in DIRECTIONS
    }
    return FaceZones(face, traces)


# -- the diagram -------------------------------------------------------------------


@dataclass
class Diagram:
    scene: Scene
    sub: Subdivision
    cell_of_face: list[int | None]
    cell_labels: list[frozenset]
    edge_kind: list[str | None]
    face_zones: list[FaceZones]

    def free_area2(self) -> int:
        return sum(
            f.area2 for fi, f in enumerate(self.sub.faces) if self.cell_of_face[fi] is not None
        )

    def locate(self, p) -> tuple[str, object]:
        """('edge', e) if p lies on a kept edge, else ('cell', cell id)."""
        sub = self.sub
        for e, kind in enumerate(self.edge_kind):
            if kind is None:
                continue
            a, b = sub.edges[e]
            if _on_segment(sub.vpts[a], sub.vpts[b], p):
                return ("edge", e)
        fi = self._containing_face(p)
        ci = self.cell_of_face[fi]
        assert ci is not None, f"point {p} inside an obstacle"
        return ("cell", ci)

    def _containing_face(self, p) -> int:
        sub = self.sub
        best = None
        best_key = None
        for ci in range(len(sub.cycles)):
            area = abs(sub.cycle_area2[ci])
            if area == 0:
                continue
            key = (area, 0 if ci in sub.outer_cycles else 1)
            if best_key is not None and key >= best_key:
                continue
            if sub._point_in_cycle(p, ci):
                best, best_key = ci, key
        assert best is not None and best in sub.outer_cycles, f"{p} not inside any face"
        return sub.face_of_cycle[best]

    def edge_cells(self, e: int) -> set[int]:
        fa, fb = self.sub.edge_faces(e)
        out = set()
        for f in (fa, fb):
            if f is not None and self.cell_of_face[f] is not None:
                out.add(self.cell_of_face[f])
        return out


def _on_segment(a: Pt, b: Pt, p) -> bool:
    px, py = p
    if (b[0] - a[0]) * (py - a[1]) != (b[1] - a[1]) * (px - a[0]):
        return False
    return min(a[0], b[0]) <= px <= max(a[0], b[0]) and min(a[1], b[1]) <= py <= max(a[1], b[1])


def assemble(scene: Scene, index: FarthestNeighborIndex) -> Diagram:
    vd = vertical_decomposition(scene)
    soup = scene_boundary_segments(scene)
    for x, lo, hi in vd.segments:
        soup.append(((x, lo), (x, hi), ("vd",)))
    for d in DIRECTIONS:
        soup += sweep_edge_segments(index.results[d])
    face_zones = []
    for face in vd.faces:
        fz = zones(index, face)
        face_zones.append(fz)
        for d, traces in fz.traces.items():
            for tr in traces:
                for a, b in trace_segments_original(tr):
                    soup.append((a, b, ("trace", d, tr.other)))
    sub = Subdivision(soup)

    def label(fi):
        probe = sub.face_probe(fi)
        if any(r.contains_open(probe) for r in scene.rects):
            return OBSTACLE_INTERIOR
        sites, _ = index.farthest_neighbor(probe)
        return frozenset(sites)

    cell_of_face, cell_labels, edge_kind = label_and_merge(sub, label)
    return Diagram(scene, sub, cell_of_face, cell_labels, edge_kind, face_zones)


# -- geodesic center -----------------------------------------------------------------


@dataclass
class CenterResult:
    value: int
    points: list[Pt]
    segments: list[tuple[Pt, Pt]]


def _minimize_on_edge(index: FarthestNeighborIndex, a: Pt, b: Pt):
    """Exact minimum of the eccentricity along the closed segment ab.

    Returns (value, list of maximal minimizing parameter intervals, param->pt).
    Between structural candidates every directional distance is linear, so the
    eccentricity is a max of at most four lines there (convex per gap).
    """
    T = max(abs(b[0] - a[0]), abs(b[1] - a[1]))
    sx = ((b[0] - a[0]) > 0) - ((b[0] - a[0]) < 0)
    sy = ((b[1] - a[1]) > 0) - ((b[1] - a[1]) < 0)

    def at(t):
        return (a[0] + sx * t, a[1] + sy * t)

    cands = {0, T}
    for d in DIRECTIONS:
        layer = index.layers[d]
        fa = transform_point(a, d)
        fb = transform_point(b, d)
        fsx = ((fb[0] - fa[0]) > 0) - ((fb[0] - fa[0]) < 0)
        fsy = ((fb[1] - fa[1]) > 0) - ((fb[1] - fa[1]) < 0)
        if fsx != 0:
            for fx in layer.feature_xs():
                t = (fx - fa[0]) * fsx
                if 0 < t < T:
                    cands.add(t)
        if fsy != 0:
            for fy in layer.feature_ys():
                t = (fy - fa[1]) * fsy
                if 0 < t < T:
                    cands.add(t)
    cands = sorted(cands)

    best = None
    argmins: list[tuple[int, int]] = []

    def note(t1, t2, v):
        nonlocal best, argmins
        if best is None or v < best:
            best = v
            argmins = [(t1, t2)]
        elif v == best:
            argmins.append((t1, t2))

    for t in cands:
        note(t, t, index.eccentricity(at(t)))
    for ta, tb in zip(cands, cands[1:]):
        lines = []
        q1 = Fraction(3 * ta + tb, 4)
        q2 = Fraction(ta + 3 * tb, 4)
        for d in DIRECTIONS:
            r1 = index.layers[d].eval(at(q1))
            r2 = index.layers[d].eval(at(q2))
            if r1 is None or r2 is None:
                assert r1 is None and r2 is None, "reachability changed inside a gap"
                continue
            slope = (r2[0] - r1[0]) / (q2 - q1)
            lines.append((slope, r1[0] - slope * q1))
        assert lines, "eccentricity undefined on a gap"
        brk = {Fraction(ta), Fraction(tb)}
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                (s1, c1), (s2, c2) = lines[i], lines[j]
                if s1 != s2:
                    t_c = Fraction(c2 - c1, s1 - s2)
                    if ta < t_c < tb:
                        brk.add(t_c)
        pts = sorted(brk)
        vals = [max(s * t + c for s, c in lines) for t in pts]
        for t, v in zip(pts[1:-1], vals[1:-1]):
            assert t.denominator == 1 and v.denominator == 1, "non-integer breakpoint"
            note(int(t), int(t), int(v))
        for (t1, v1), (t2, v2) in zip(zip(pts, vals), zip(pts[1:], vals[1:])):
            if v1 == v2:
                assert v1.denominator == 1
                note(int(t1), int(t2), int(v1))
    return best, argmins, at


def geodesic_center(diagram: Diagram, index: FarthestNeighborIndex) -> CenterResult:
    scene = diagram.scene
    if scene.m == 1:
        return CenterResult(0, [scene.sites[0]], [])
    sub = diagram.sub
    best = None
    points: set[Pt] = set()
    segments: set[tuple[Pt, Pt]] = set()
    for e, kind in enumerate(diagram.edge_kind):
        if kind is None:
            continue
        va, vb = sub.edges[e]
        pa, pb = sub.vpts[va], sub.vpts[vb]
        if pa == pb:
            continue
        v, argmins, at = _minimize_on_edge(index, pa, pb)
        if best is None or v < best:
            best = v
            points = set()
            segments = set()
        if v == best:
            for t1, t2 in argmins:
                if t1 == t2:
                    points.add(at(t1))
                else:
                    segments.add(tuple(sorted((at(t1), at(t2)))))
    segs = _merge_collinear(sorted(segments))
    pts = sorted(p for p in points if not any(_on_segment(s[0], s[1], p) for s in segs))
    return CenterResult(best, pts, segs)


def _merge_collinear(segs):
    from .subdivision import _line_key, _param, _point

    by_line: dict = {}
    for a, b in segs:
        key = _line_key(a, b)
        t1, t2 = sorted((_param(key, a), _param(key, b)))
        by_line.setdefault(key, []).append((t1, t2))
    out = []
    for key, ivals in by_line.items():
        ivals.sort()
        cur = list(ivals[0])
        for t1, t2 in ivals[1:]:
            if t1 <= cur[1]:
                cur[1] = max(cur[1], t2)
            else:
                out.append((_point(key, cur[0]), _point(key, cur[1])))
                cur = [t1, t2]
        out.append((_point(key, cur[0]), _point(key, cur[1])))
    return sorted(out)
