"""Piecewise-linear distance envelopes with slope +-1 and exact integer breakpoints.

A StepFn is the fused distance-function / boundary-list node sequence carried by
each sweep-status interval: breakpoints with values, per-piece owner sets, birth
heights for owner-change junctions (lower endpoints of vertical subdivision
edges), and point-ties for sites that touch the envelope at isolated points.
All values at integer x share one parity, so every crossing is an exact integer.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

Owners = frozenset


@dataclass
class MergeReport:
    dirty: list[tuple[int, int]] = field(default_factory=list)
    killed_bps: list[tuple[int, int]] = field(default_factory=list)  # (x, birth_y)
    killed_pties: list[tuple[int, int]] = field(default_factory=list)


class StepFn:
    __slots__ = ("xs", "vs", "owners", "births", "pties")

    def __init__(self, xs, vs, owners, births=None, pties=None):
        self.xs: list[int] = xs
        self.vs: list[int] = vs
        self.owners: list[Owners] = owners
        self.births: dict[int, int] = births or {}
        self.pties: dict[int, tuple[Owners, int]] = pties or {}
        self._check()

    def _check(self):
        assert len(self.xs) >= 2 and len(self.vs) == len(self.xs)
        assert len(self.owners) == len(self.xs) - 1
        for i in range(len(self.xs) - 1):
            dx = self.xs[i + 1] - self.xs[i]
            assert dx > 0, f"non-increasing breakpoints {self.xs}"
            assert abs(self.vs[i + 1] - self.vs[i]) == dx, (
                f"slope not +-1 on [{self.xs[i]},{self.xs[i+1]}]: {self.vs[i]}->{self.vs[i+1]}"
            )
            assert self.owners[i], "piece with empty owner set"

    @property
    def lo(self) -> int:
        return self.xs[0]

    @property
    def hi(self) -> int:
        return self.xs[-1]

    def copy(self) -> "StepFn":
        return StepFn(list(self.xs), list(self.vs), list(self.owners), dict(self.births), dict(self.pties))

    def shift(self, dy: int) -> None:
        if dy:
            self.vs = [v + dy for v in self.vs]

    def _piece_index(self, x: int) -> int:
        """Index of a piece whose closed range contains x."""
        i = bisect_right(self.xs, x) - 1
        if i >= len(self.owners):
            i = len(self.owners) - 1
        return i

    def value_at(self, x) -> int:
        assert self.lo <= x <= self.hi
        i = self._piece_index(x)
        dx = self.xs[i + 1] - self.xs[i]
        slope = (self.vs[i + 1] - self.vs[i]) // dx
        return self.vs[i] + slope * (x - self.xs[i])

    def slope_right_of(self, x: int) -> int:
        """Slope of the piece immediately right of x (left piece at hi)."""
        i = self._piece_index(x) if x < self.hi else len(self.owners) - 1
        dx = self.xs[i + 1] - self.xs[i]
        return (self.vs[i + 1] - self.vs[i]) // dx

    def owners_at(self, x) -> Owners:
        """Full tie set at a point: adjacent piece owners plus point-ties."""
        assert self.lo <= x <= self.hi
        out: set = set()
        i = bisect_left(self.xs, x)
        if i < len(self.xs) and self.xs[i] == x:  # exactly a breakpoint
            if i > 0:
                out |= self.owners[i - 1]
            if i < len(self.owners):
                out |= self.owners[i]
        else:
            out |= self.owners[i - 1]
        extra = self.pties.get(x)
        if extra is not None:
            out |= extra[0]
        return frozenset(out)

    def junctions(self) -> list[int]:
        """Interior breakpoints where the owner set changes (boundary points)."""
        out = []
        for i in range(1, len(self.xs) - 1):
            if self.owners[i - 1] != self.owners[i]:
                out.append(self.xs[i])
        return out

    # -- structural edits -------------------------------------------------

    def slice(self, a: int, b: int, cut_y: int) -> tuple["StepFn", list[tuple[int, int]]]:
        """Restriction to [a, b].

        Owner-change junctions falling on the cut coordinates stop being
        junctions; their vertical edges are reported as killed, and the owners
        from the discarded side persist as point-ties along the cut column.
        """
        assert self.lo <= a < b <= self.hi
        killed: list[tuple[int, int]] = []
        xs = [a]
        vs = [self.value_at(a)]
        owners = []
        i0 = self._piece_index(a)
        for i in range(i0, len(self.owners)):
            x1, x2 = self.xs[i], self.xs[i + 1]
            if x2 <= a:
                continue
            if x1 >= b:
                break
            owners.append(self.owners[i])
            nx = min(x2, b)
            xs.append(nx)
            vs.append(self.value_at(nx))
            if nx == b:
                break
        births = {}
        pties = {x: t for x, t in self.pties.items() if a <= x <= b}
        for x, birth in self.births.items():
            if a < x < b:
                births[x] = birth
            elif x == a or x == b:
                killed.append((x, birth))
                # tie from the discarded side persists along the cut column
                j = bisect_left(self.xs, x)
                discarded = self.owners[j] if x == b else self.owners[j - 1]
                kept = owners[-1] if x == b else owners[0]
                extra = discarded - kept
                if extra:
                    old = pties.get(x)
                    merged = extra | (old[0] if old else frozenset())
                    pties[x] = (frozenset(merged), old[1] if old else cut_y)
            else:
                killed.append((x, birth))
        fn = StepFn(xs, vs, owners, births, pties)
        return fn, killed

    @staticmethod
    def concat(parts: list["StepFn"], seam_birth: int) -> "StepFn":
        """Join adjacent functions; new owner-change seams are born at seam_birth."""
        assert parts
        xs = list(parts[0].xs)
        vs = list(parts[0].vs)
        owners = list(parts[0].owners)
        births = dict(parts[0].births)
        pties = dict(parts[0].pties)
        for nxt in parts[1:]:
            assert xs[-1] == nxt.lo
            assert vs[-1] == nxt.vs[0], f"discontinuity at x={xs[-1]}: {vs[-1]} vs {nxt.vs[0]}"
            if owners[-1] != nxt.owners[0]:
                births[xs[-1]] = seam_birth
            xs += nxt.xs[1:]
            vs += nxt.vs[1:]
            owners += nxt.owners
            births.update(nxt.births)
            pties.update(nxt.pties)
        fn = _normalize(xs, vs, owners)
        fn.births = {x: births[x] for x in fn.junctions() if x in births}
        fn.pties = pties
        return fn

    # -- envelope merge ----------------------------------------------------

    def merge_max(self, g: "StepFn", y: int) -> tuple["StepFn", MergeReport]:
        """Upper envelope of self and a challenger g on the same range.

        Returns the merged function plus a report of changed ranges, killed
        boundary points and killed point-ties.  New junctions and point-ties
        are born at height y.
        """
        f = self
        assert f.lo == g.lo and f.hi == g.hi
        cuts = sorted(set(f.xs) | set(g.xs))
        # add interior crossings so sign(g - f) is constant on open pieces
        full: list[int] = []
        for a, b in zip(cuts, cuts[1:]):
            full.append(a)
            da = g.value_at(a) - f.value_at(a)
            db = g.value_at(b) - f.value_at(b)
            if (da > 0 > db) or (da < 0 < db):
                xc_num = -da * (b - a)
                denom = db - da
                assert xc_num % denom == 0, "non-integer crossing"
                full.append(a + xc_num // denom)
        full.append(cuts[-1])

        xs = [full[0]]
        vs = [max(f.value_at(full[0]), g.value_at(full[0]))]
        owners: list[Owners] = []
        dirty: list[tuple[int, int]] = []
        for a, b in zip(full, full[1:]):
            fa, fb = f.value_at(a), f.value_at(b)
            ga, gb = g.value_at(a), g.value_at(b)
            da, db = ga - fa, gb - fb
            if da == 0 and db == 0:
                fo = f.owners[f._piece_index(a)]
                go = g.owners[g._piece_index(a)]
                own = fo | go
                val_b = fb
                if not (go <= fo):
                    dirty.append((a, b))
            elif da >= 0 and db >= 0:
                own = g.owners[g._piece_index(a)]
                val_b = gb
                dirty.append((a, b))
            else:
                assert da <= 0 and db <= 0
                own = f.owners[f._piece_index(a)]
                val_b = fb
            xs.append(b)
            vs.append(val_b)
            owners.append(own)

        merged = _normalize(xs, vs, owners)

        # junction bookkeeping: inherit surviving births, kill the rest
        report = MergeReport(dirty=_union_ranges(dirty))
        new_junct = set(merged.junctions())
        for x, birth in f.births.items():
            j = bisect_left(f.xs, x)
            same = (
                x in new_junct
                and merged.owners[merged._piece_index(x) - 1] == f.owners[j - 1]
                and merged.owners[merged._piece_index(x)] == f.owners[j]
            )
            if same:
                merged.births[x] = birth
            else:
                report.killed_bps.append((x, birth))
        for x in new_junct:
            if x not in merged.births:
                merged.births[x] = y

        # point-ties: survivors keep their birth; equality touches create new ones
        for x, (sites, birth) in f.pties.items():
            if merged.value_at(x) == f.value_at(x):
                missing = sites - merged.owners_at(x)
                if missing != sites:
                    pass  # partially absorbed into pieces; keep the remainder
                if missing:
                    merged.pties[x] = (missing, birth)
                else:
                    report.killed_pties.append((x, birth))
            else:
                report.killed_pties.append((x, birth))
        for x in full:
            v = merged.value_at(x)
            tied: set = set()
            if f.value_at(x) == v:
                tied |= f.owners_at(x)
            if g.value_at(x) == v:
                tied |= g.owners_at(x)
            missing = frozenset(tied) - merged.owners_at(x)
            if missing:
                prev = merged.pties.get(x)
                if prev:
                    merged.pties[x] = (prev[0] | missing, prev[1])
                else:
                    merged.pties[x] = (missing, y)
                report.dirty.append((x, x))
        report.dirty = _union_ranges(report.dirty)
        return merged, report


def _normalize(xs: list[int], vs: list[int], owners: list[Owners]) -> StepFn:
    """Drop breakpoints where neither slope nor owner set changes."""
    nxs = [xs[0]]
    nvs = [vs[0]]
    nowners: list[Owners] = []
    for i in range(len(owners)):
        if nowners:
            prev_dx = nxs[-1] - nxs[-2]
            prev_slope = (nvs[-1] - nvs[-2]) // prev_dx
            dx = xs[i + 1] - xs[i]
            slope = (vs[i + 1] - vs[i]) // dx
            if slope == prev_slope and owners[i] == nowners[-1]:
                nxs[-1] = xs[i + 1]
                nvs[-1] = vs[i + 1]
                continue
        nxs.append(xs[i + 1])
        nvs.append(vs[i + 1])
        nowners.append(owners[i])
    return StepFn(nxs, nvs, nowners)


def _union_ranges(ranges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    if not ranges:
        return []
    ranges = sorted(ranges)
    out = [list(ranges[0])]
    for a, b in ranges[1:]:
        if a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


def cone(lo: int, hi: int, apex_x: int, apex_v: int, owner: Owners) -> StepFn:
    """|x - apex_x| + apex_v clipped to [lo, hi] (apex may lie outside)."""
    xs = [lo]
    if lo < apex_x < hi:
        xs.append(apex_x)
    xs.append(hi)
    vs = [abs(x - apex_x) + apex_v for x in xs]
    return StepFn(xs, vs, [owner] * (len(xs) - 1))


def line(lo: int, hi: int, slope: int, x0: int, v0: int, owner: Owners) -> StepFn:
    """Single slope +-1 piece through (x0, v0)."""
    assert slope in (1, -1)
    return StepFn([lo, hi], [v0 + slope * (lo - x0), v0 + slope * (hi - x0)], [owner])
