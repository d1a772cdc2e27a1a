"""Upward plane sweep building one directional farthest-point layer.

The status is the ordered sequence of free intervals on the sweep line; each
interval carries a reachability bitmask and a StepFn distance envelope with a
lazy additive height offset.  Site events merge a distance cone, bottom-side
events split an interval, top-side events merge two intervals and rebuild the
distance function over the vanished rectangle's top side from corner distances
maintained per rectangle (funnel membership + two-corner recurrence).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .scene import FrameScene, Point, Rect, Scene, transform_scene
from .stepfn import MergeReport, Owners, StepFn, _normalize, cone, line


def _manhattan(a: Point, b: Point) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass
class Segment:
    """Horizontal query-layer piece (frame coordinates); fn=None is a blocker."""

    y: int
    x1: int
    x2: int
    fn: StepFn | None


@dataclass
class Mark:
    """Zero-width tie marker: sites tying the envelope at exactly one column."""

    y: int
    x: int
    value: int
    owners: Owners


@dataclass
class CornerTable:
    rect: int
    alpha: Point
    beta: Point
    below_left: int | None
    below_right: int | None
    member_mask: int
    dists: dict[int, tuple[int, int]]  # site -> (d(alpha,s), d(beta,s))
    s_alpha: Owners = frozenset()
    s_beta: Owners = frozenset()


@dataclass
class TopEventRecord:
    """Audit record: inputs and output of one top-side distance computation."""

    rect: int
    y: int
    span: tuple[int, int]
    tents: list[tuple[int, int, int]]  # (site, d_alpha, d_beta_raw)
    pruned: list[tuple[int, int, int]]
    envelope: StepFn | None


@dataclass
class SweepResult:
    frame: FrameScene
    segments: list[Segment]
    marks: list[Mark]
    vedges: list[tuple[int, int, int]]  # (x, y_birth, y_death)
    slits: list[tuple[int, int, int]]
    tables: list[CornerTable]
    records: list[TopEventRecord]
    warnings: list[str] = field(default_factory=list)


class _Node:
    __slots__ = ("x1", "x2", "mask", "fn", "base_y")

    def __init__(self, x1: int, x2: int, mask: int = 0, fn: StepFn | None = None, base_y: int = 0):
        self.x1 = x1
        self.x2 = x2
        self.mask = mask
        self.fn = fn
        self.base_y = base_y

    def bring_to(self, y: int) -> None:
        if self.fn is not None and y != self.base_y:
            self.fn.shift(y - self.base_y)
        self.base_y = y


def precompute_below_links(scene: Scene) -> list[tuple[int | None, int | None]]:
    """First rectangle hit by the downward ray from each top corner (None = floor).

    A ray grazing another rectangle's side slides past it; only strict x-interior
    hits block.
    """
    out = []
    for r in scene.rects:
        links = []
        for cx in (r.x1, r.x2):
            best = None
            best_y = None
            for j, q in enumerate(scene.rects):
                if q.x1 < cx < q.x2 and q.y2 < r.y2:
                    if best_y is None or q.y2 > best_y:
                        best, best_y = j, q.y2
            links.append(best)
        out.append((links[0], links[1]))
    return out


def prune_sites(tents: list[tuple[int, int, int]], span: int) -> list[tuple[int, int, int]]:
    """Drop funnel sites that are farthest nowhere on the top side.

    tents: (site, d_alpha, d_beta_raw) in ascending site-x order.  Keeps the
    normalized difference d_beta - d_alpha non-increasing; on a violation the
    corner-distance comparison decides which of the pair is dominated.
    """
    stack: list[tuple[int, int, int]] = []
    for t in tents:
        i, da, db_raw = t
        dba = (db_raw + span) - da
        while True:
            if not stack:
                stack.append(t)
                break
            ti, tda, tdb_raw = stack[-1]
            tdba = (tdb_raw + span) - tda
            if dba <= tdba:
                stack.append(t)
                break
            if da < tda:
                break  # dominated: min(da+t, db-t) < incumbent tent everywhere
            stack.pop()  # incumbent dominated (weakly when distances tie)
    return stack


def tent_envelope(
    tents: list[tuple[int, int, int]], xa: int, xb: int, birth_y: int
) -> StepFn | None:
    """Exact upper envelope of min(d_alpha + t, d_beta - t) tents over [xa, xb].

    Works for any tent set: tents are ordered by apex so the still-rising set is
    always a prefix; prefix maxima of d_alpha and suffix maxima of the
    normalized d_beta then give the envelope with complete tie sets.
    """
    if not tents:
        return None
    C = xb - xa
    norm = []
    for i, da, db_raw in tents:
        db = db_raw + C
        assert da <= db and db - da <= 2 * C, f"corner distances violate triangle: {i}"
        assert (db - da) % 2 == 0
        norm.append(((db - da) // 2, i, da, db))
    norm.sort(key=lambda t: (-t[0], t[1]))
    k = len(norm)
    # prefix maxima of rising intercepts, suffix maxima of falling intercepts
    pref_v = [None] * (k + 1)
    pref_s: list[frozenset] = [frozenset()] * (k + 1)
    for j in range(k):
        _, i, da, _ = norm[j]
        if pref_v[j] is None or da > pref_v[j]:
            pref_v[j + 1], pref_s[j + 1] = da, frozenset((i,))
        elif da == pref_v[j]:
            pref_v[j + 1], pref_s[j + 1] = da, pref_s[j] | {i}
        else:
            pref_v[j + 1], pref_s[j + 1] = pref_v[j], pref_s[j]
    suf_v = [None] * (k + 1)
    suf_s: list[frozenset] = [frozenset()] * (k + 1)
    for j in range(k - 1, -1, -1):
        _, i, _, db = norm[j]
        if suf_v[j + 1] is None or db > suf_v[j + 1]:
            suf_v[j], suf_s[j] = db, frozenset((i,))
        elif db == suf_v[j + 1]:
            suf_v[j], suf_s[j] = db, suf_s[j + 1] | {i}
        else:
            suf_v[j], suf_s[j] = suf_v[j + 1], suf_s[j + 1]

    bounds = sorted({0, C} | {t[0] for t in norm if 0 <= t[0] <= C})
    pieces: list[tuple[int, int, int, int, Owners]] = []  # t0, t1, v0, v1, owners
    touches: dict[int, frozenset] = {}
    for t0, t1 in zip(bounds, bounds[1:]):
        rising = _count_ge(norm, t1)  # apexes >= t1: still rising through [t0,t1]
        falling = k - _count_ge_strict(norm, t0)  # apexes <= t0
        P, PS = pref_v[rising], pref_s[rising]
        S, SS = suf_v[k - falling], suf_s[k - falling]
        assert P is not None or S is not None
        if P is None:
            pieces.append((t0, t1, S - t0, S - t1, SS))
        elif S is None:
            pieces.append((t0, t1, P + t0, P + t1, PS))
        else:
            assert (S - P) % 2 == 0
            tc = (S - P) // 2  # crossing of the two parallel families
            if tc <= t0:
                pieces.append((t0, t1, P + t0, P + t1, PS))
                if tc == t0:
                    touches[t0] = touches.get(t0, frozenset()) | SS
            elif tc >= t1:
                pieces.append((t0, t1, S - t0, S - t1, SS))
                if tc == t1:
                    touches[t1] = touches.get(t1, frozenset()) | PS
            else:
                pieces.append((t0, tc, S - t0, S - tc, SS))
                pieces.append((tc, t1, P + tc, P + t1, PS))

    xs = [xa + p[0] for p in pieces] + [xb]
    vs = [p[2] for p in pieces] + [pieces[-1][3]]
    owns = [p[4] for p in pieces]
    fn = _normalize(xs, vs, owns)
    fn.births = {x: birth_y for x in fn.junctions()}
    for t, sites in touches.items():
        missing = sites - fn.owners_at(xa + t)
        if missing:
            fn.pties[xa + t] = (missing, birth_y)
    return fn


def _count_ge(norm, t):
    # norm sorted by apex descending; count apexes >= t
    lo, hi = 0, len(norm)
    while lo < hi:
        mid = (lo + hi) // 2
        if norm[mid][0] >= t:
            lo = mid + 1
        else:
            hi = mid
    return lo


def _count_ge_strict(norm, t):
    # count apexes > t
    lo, hi = 0, len(norm)
    while lo < hi:
        mid = (lo + hi) // 2
        if norm[mid][0] > t:
            lo = mid + 1
        else:
            hi = mid
    return lo


class Sweep:
    def __init__(self, frame: FrameScene, audit: bool = False):
        self.frame = frame
        self.scene = frame.scene
        self.audit = audit
        box = self.scene.bbox
        self.nodes: list[_Node] = [_Node(box.x1, box.x2)]
        self.segments: list[Segment] = []
        self.marks: list[Mark] = []
        self.vedges: list[tuple[int, int, int]] = []
        self.slits: list[tuple[int, int, int]] = []
        self.tables: list[CornerTable | None] = [None] * self.scene.n
        self.links = precompute_below_links(self.scene)
        self.records: list[TopEventRecord] = []
        self.warnings: list[str] = []
        self._dirty: list[tuple[int, int]] = []
        self._blockers: list[tuple[int, int]] = []

    # -- node lookup -------------------------------------------------------

    def _node_index_at(self, x: int) -> int:
        lo, hi = 0, len(self.nodes) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self.nodes[mid].x2 < x:
                lo = mid + 1
            else:
                hi = mid
        n = self.nodes[lo]
        assert n.x1 <= x <= n.x2, f"x={x} not on any free interval"
        return lo

    # -- reporting ----------------------------------------------------------

    def _apply_report(self, report: MergeReport, y: int):
        self._dirty.extend(report.dirty)
        for x, birth in report.killed_bps:
            if y > birth:
                self.vedges.append((x, birth, y))
        for x, birth in report.killed_pties:
            if y > birth:
                self.slits.append((x, birth, y))

    # -- event handlers -------------------------------------------------------

    def handle_site(self, i: int, p: Point, y: int) -> None:
        from .staircases import ray_hit

        # horizontal reach slides along rectangle boundaries (strict blocking),
        # so a site on a bottom side seeds the intervals on both flanks
        left_pt, _ = ray_hit(self.scene, p, "l")
        right_pt, _ = ray_hit(self.scene, p, "r")
        L, R = left_pt[0], right_pt[0]
        touched = [n for n in self.nodes if L <= n.x1 and n.x2 <= R]
        assert touched, f"site {p} reaches no free interval"
        assert any(n.x1 <= p[0] <= n.x2 for n in touched) or not any(
            n.x1 <= p[0] <= n.x2 for n in self.nodes
        )
        for node in touched:
            node.mask |= 1 << i
            node.bring_to(y)
            challenger = cone(node.x1, node.x2, p[0], 0, frozenset((i,)))
            if node.fn is None:
                node.fn = challenger
                self._dirty.append((node.x1, node.x2))
            else:
                node.fn, report = node.fn.merge_max(challenger, y)
                self._apply_report(report, y)

    def handle_bottom(self, k: int, r: Rect, y: int) -> None:
        idx = self._node_index_at(r.x1)
        node = self.nodes[idx]
        assert node.x1 <= r.x1 < r.x2 <= node.x2, "bottom side not inside one interval"
        assert node.x1 < r.x1 and r.x2 < node.x2, "rectangle touches a neighbor"
        node.bring_to(y)
        if node.fn is None:
            u = _Node(node.x1, r.x1, node.mask, None, y)
            w = _Node(r.x2, node.x2, node.mask, None, y)
        else:
            ufn, _ = node.fn.slice(node.x1, r.x1, y)
            wfn, _ = node.fn.slice(r.x2, node.x2, y)
            alive = set(ufn.births) | set(wfn.births)
            for x, birth in node.fn.births.items():
                if x not in alive and y > birth:
                    self.vedges.append((x, birth, y))
            alive_p = set(ufn.pties) | set(wfn.pties)
            for x, (_, birth) in node.fn.pties.items():
                if x not in alive_p and y > birth:
                    self.slits.append((x, birth, y))
            u = _Node(node.x1, r.x1, node.mask, ufn, y)
            w = _Node(r.x2, node.x2, node.mask, wfn, y)
        self.nodes[idx : idx + 1] = [u, w]

    def handle_top(self, k: int, r: Rect, y: int) -> None:
        iu = self._node_index_at(r.x1)
        iw = self._node_index_at(r.x2)
        u, w = self.nodes[iu], self.nodes[iw]
        assert u.x2 == r.x1 and w.x1 == r.x2, "top side nodes out of alignment"
        u.bring_to(y)
        w.bring_to(y)
        table = self._corner_table(k, r, y)
        self.tables[k] = table

        mask_v = u.mask | w.mask
        sites = self.scene.sites

        # newly reachable sites sweep over the vanished rectangle onto the flanks
        new_left = ~u.mask & w.mask
        if new_left:
            best = max((sites[i][0] - sites[i][1]) for i in _bits(new_left))
            own = frozenset(i for i in _bits(new_left) if sites[i][0] - sites[i][1] == best)
            sx, sy = sites[next(iter(own))]
            chal = line(u.x1, u.x2, -1, sx, y - sy, own)
            self._merge_into(u, chal, y)
        new_right = ~w.mask & u.mask
        if new_right:
            best = max((-sites[i][0] - sites[i][1]) for i in _bits(new_right))
            own = frozenset(i for i in _bits(new_right) if -sites[i][0] - sites[i][1] == best)
            sx, sy = sites[next(iter(own))]
            chal = line(w.x1, w.x2, 1, sx, y - sy, own)
            self._merge_into(w, chal, y)

        top_fn, record = self._top_range_fn(k, r, y, table, mask_v)
        self.records.append(record)

        if top_fn is None:
            assert u.fn is None and w.fn is None, "unreachable top side with reachable flank"
            merged_fn = None
            self._blockers.append((r.x1, r.x2))
        else:
            assert u.fn is not None and w.fn is not None, "reachable top side with unreachable flank"
            merged_fn = StepFn.concat([u.fn, top_fn, w.fn], seam_birth=y)
            self._dirty.append((r.x1, r.x2))
        merged = _Node(u.x1, w.x2, mask_v, merged_fn, y)
        self.nodes[iu : iw + 1] = [merged]

    def _merge_into(self, node: _Node, challenger: StepFn, y: int) -> None:
        if node.fn is None:
            node.fn = challenger
            self._dirty.append((node.x1, node.x2))
        else:
            node.fn, report = node.fn.merge_max(challenger, y)
            self._apply_report(report, y)

    # -- corner machinery ---------------------------------------------------

    def _corner_table(self, k: int, r: Rect, y: int) -> CornerTable:
        scene = self.scene
        alpha, beta = r.top_left, r.top_right
        la, lb = self.links[k]
        ta = self.tables[la] if la is not None else None
        tb = self.tables[lb] if lb is not None else None
        member = 0
        dists: dict[int, tuple[int, int]] = {}
        for i, s in enumerate(scene.sites):
            if s[1] > r.y2:
                continue  # not swept yet: above the funnel entirely
            in_span = r.x1 <= s[0] <= r.x2
            via_a = s[0] < r.x1 and ta is not None and (ta.member_mask >> i) & 1
            via_b = s[0] > r.x2 and tb is not None and (tb.member_mask >> i) & 1
            if not (in_span or via_a or via_b):
                continue
            member |= 1 << i
            if ta is not None and (ta.member_mask >> i) & 1:
                da = min(
                    _manhattan(alpha, ta.alpha) + ta.dists[i][0],
                    _manhattan(alpha, ta.beta) + ta.dists[i][1],
                )
            else:
                da = _manhattan(alpha, s)
            if tb is not None and (tb.member_mask >> i) & 1:
                db = min(
                    _manhattan(beta, tb.alpha) + tb.dists[i][0],
                    _manhattan(beta, tb.beta) + tb.dists[i][1],
                )
            else:
                db = _manhattan(beta, s)
            dists[i] = (da, db)
        return CornerTable(k, alpha, beta, la, lb, member, dists)

    def _top_range_fn(
        self, k: int, r: Rect, y: int, table: CornerTable, mask_v: int
    ) -> tuple[StepFn | None, TopEventRecord]:
        scene = self.scene
        sites = scene.sites
        active = table.member_mask & mask_v
        tents = [(i, table.dists[i][0], table.dists[i][1]) for i in _bits(active)]
        pruned = prune_sites(tents, r.x2 - r.x1)
        env = tent_envelope(tents, r.x1, r.x2, y)
        record = TopEventRecord(k, y, (r.x1, r.x2), tents, pruned, env)
        parts: list[StepFn] = []
        rest = mask_v & ~table.member_mask
        s_alpha = [i for i in _bits(rest) if sites[i][0] <= r.x1]
        s_beta = [i for i in _bits(rest) if sites[i][0] >= r.x2]
        assert len(s_alpha) + len(s_beta) == bin(rest).count("1"), "non-member site inside span"
        if s_alpha:
            best = max(-sites[i][0] - sites[i][1] for i in s_alpha)
            own = frozenset(i for i in s_alpha if -sites[i][0] - sites[i][1] == best)
            sx, sy = sites[next(iter(own))]
            parts.append(line(r.x1, r.x2, 1, sx, y - sy, own))
            table.s_alpha = own
        if s_beta:
            best = max(sites[i][0] - sites[i][1] for i in s_beta)
            own = frozenset(i for i in s_beta if sites[i][0] - sites[i][1] == best)
            sx, sy = sites[next(iter(own))]
            parts.append(line(r.x1, r.x2, -1, sx, y - sy, own))
            table.s_beta = own
        if env is not None:
            parts.append(env)
        if not parts:
            return None, record
        acc = parts[0]
        for g in parts[1:]:
            acc, _ = acc.merge_max(g, y)
        record.envelope = env
        return acc, record

    # -- batch emission -------------------------------------------------------

    def flush(self, y: int) -> None:
        if not self._dirty and not self._blockers:
            return
        pts = sorted({a for a, _ in self._dirty} | {b for _, b in self._dirty}
                     | {a for a, _ in self._blockers} | {b for _, b in self._blockers})
        ranges = _merge_union(self._dirty + self._blockers)
        for a, b in ranges:
            if a == b:
                node = self.nodes[self._node_index_at(a)]
                if node.fn is not None:
                    self.marks.append(Mark(y, a, node.fn.value_at(a), node.fn.owners_at(a)))
                continue
            cuts = [p for p in pts if a <= p <= b]
            for c1, c2 in zip(cuts, cuts[1:]):
                node = self.nodes[self._node_index_at(c1)]
                assert node.x1 <= c1 < c2 <= node.x2, "dirty range straddles intervals"
                if node.fn is None:
                    self.segments.append(Segment(y, c1, c2, None))
                else:
                    self.segments.append(Segment(y, c1, c2, _snapshot(node.fn, c1, c2)))
        self._dirty = []
        self._blockers = []

    # -- audit ----------------------------------------------------------------

    def check_invariants(self, y: int) -> None:
        sites = self.scene.sites
        prev_x2 = None
        for node in self.nodes:
            assert prev_x2 is None or node.x1 > prev_x2
            prev_x2 = node.x2
            if node.fn is None:
                continue
            assert node.fn.lo == node.x1 and node.fn.hi == node.x2
            handoffs = 0
            for j in range(len(node.fn.owners) - 1):
                L, Rn = node.fn.owners[j], node.fn.owners[j + 1]
                if L == Rn:
                    continue
                if not (L & Rn):
                    handoffs += 1
                for a in L - Rn:
                    for b in Rn - L:
                        assert sites[a][0] > sites[b][0], (
                            f"owner x-order violated at event y={y}: {a} before {b}"
                        )
            assert handoffs <= max(0, self.scene.m - 1), "too many owner handoffs"

    # -- driver ----------------------------------------------------------------

    def run(self) -> SweepResult:
        scene = self.scene
        events: list[tuple[int, int, int, int]] = []
        for k, r in enumerate(scene.rects):
            events.append((r.y1, 0, r.x1, k))
            events.append((r.y2, 1, r.x1, k))
        for i, s in enumerate(scene.sites):
            events.append((s[1], 2, s[0], i))
        events.sort()
        pos = 0
        while pos < len(events):
            y = events[pos][0]
            while pos < len(events) and events[pos][0] == y:
                ey, cls, ex, idx = events[pos]
                if cls == 0:
                    self.handle_bottom(idx, scene.rects[idx], y)
                elif cls == 1:
                    self.handle_top(idx, scene.rects[idx], y)
                else:
                    self.handle_site(idx, scene.sites[idx], y)
                pos += 1
            self.flush(y)
            if self.audit:
                self.check_invariants(y)
        top = scene.bbox.y2
        assert len(self.nodes) == 1, "status did not merge back to a single interval"
        node = self.nodes[0]
        if node.fn is not None:
            for x, birth in node.fn.births.items():
                if top > birth:
                    self.vedges.append((x, birth, top))
            for x, (_, birth) in node.fn.pties.items():
                if top > birth:
                    self.slits.append((x, birth, top))
        tables = [t for t in self.tables if t is not None]
        return SweepResult(
            self.frame,
            self.segments,
            self.marks,
            self.vedges,
            self.slits,
            tables,
            self.records,
            self.warnings,
        )


def _snapshot(fn: StepFn, a: int, b: int) -> StepFn:
    """Non-destructive restriction carrying boundary ties as point ties."""
    snap, _ = fn.copy().slice(a, b, cut_y=0)
    for x in (a, b):
        full = fn.owners_at(x)
        have = snap.owners_at(x)
        missing = full - have
        if missing:
            prev = snap.pties.get(x)
            snap.pties[x] = ((prev[0] | missing) if prev else missing, 0)
    return snap


def _merge_union(ranges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    if not ranges:
        return []
    rs = sorted(ranges)
    out = [list(rs[0])]
    for a, b in rs[1:]:
        if a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


def sweep_direction(scene: Scene, d: str, audit: bool = False) -> SweepResult:
    frame = transform_scene(scene, d)
    return Sweep(frame, audit=audit).run()
