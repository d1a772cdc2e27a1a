import random

import pytest

from rectfvd.stepfn import StepFn, cone, line, _normalize


def F(*xs):
    return frozenset(xs)


def random_stepfn(rng, lo, hi, labels, v0=None):
    """Random slope +-1 walk at unit resolution, random owner labels."""
    xs = [lo]
    vs = [v0 if v0 is not None else rng.randrange(0, 20, 2)]
    owners = []
    x = lo
    while x < hi:
        step = rng.randrange(1, min(5, hi - x) + 1)
        slope = rng.choice((1, -1))
        if vs[-1] + slope * step < 0:
            slope = 1
        x += step
        xs.append(x)
        vs.append(vs[-1] + slope * step)
        owners.append(F(rng.choice(labels)))
    return _rebuild(xs, vs, owners)


def _rebuild(xs, vs, owners):
    return _normalize(xs, vs, owners)


def brute_owner(fn, x):
    return fn.owners_at(x)


def check_merge(f, g):
    merged, report = f.merge_max(g, y=100)
    for x in range(f.lo, f.hi + 1):
        fv, gv = f.value_at(x), g.value_at(x)
        assert merged.value_at(x) == max(fv, gv)
        want = set()
        if fv >= gv:
            want |= f.owners_at(x)
        if gv >= fv:
            want |= g.owners_at(x)
        assert merged.owners_at(x) == frozenset(want), f"owner mismatch at x={x}"
    return merged, report


def test_cone_basics():
    c = cone(0, 10, 4, 0, F(7))
    assert c.value_at(0) == 4
    assert c.value_at(4) == 0
    assert c.value_at(10) == 6
    assert c.owners_at(3) == F(7)


def test_two_cone_merge_boundary_point():
    a = cone(-10, 22, 0, 0, F(0))
    b = cone(-10, 22, 10, 0, F(1))
    merged, report = check_merge(a, b)
    # farthest envelope of |x| and |x-10| switches owners at x=5
    assert merged.junctions() == [5]
    assert merged.value_at(5) == 5
    assert merged.owners_at(5) == F(0, 1)
    assert merged.births[5] == 100


def test_dominated_cone_no_update():
    a = cone(0, 20, 10, 10, F(0))  # |x-10| + 10
    b = cone(0, 20, 10, 0, F(1))  # strictly below
    merged, report = check_merge(a, b)
    assert report.dirty == []
    assert merged.junctions() == []


def test_touch_point_records_tie():
    a = cone(0, 20, 10, 10, F(0))  # valley at (10, 10)
    b = StepFn([0, 10, 20], [0, 10, 0], [F(1), F(1)])  # peak at (10, 10)
    merged, report = check_merge(a, b)
    assert merged.owners_at(10) == F(0, 1)
    assert merged.pties[10][0] == F(1)
    assert (10, 10) in report.dirty


def test_tie_stretch_unions_owners():
    a = line(0, 10, 1, 0, 4, F(0))
    b = line(0, 10, 1, 0, 4, F(1))
    merged, report = check_merge(a, b)
    assert merged.owners_at(5) == F(0, 1)
    assert report.dirty == [(0, 10)]


def test_anchored_overwrite_kills_interior_bps():
    a = cone(-10, 22, 0, 0, F(0))
    b = cone(-10, 22, 10, 0, F(1))
    merged, _ = a.merge_max(b, y=0)
    assert merged.births[5] == 0
    big = line(-10, 22, -1, -10, 100, F(2))  # beats everything
    merged2, report = check_merge(merged, big)
    assert (5, 0) in report.killed_bps
    assert merged2.junctions() == []


def test_slice_reports_cut_junction():
    a = cone(-10, 22, 0, 0, F(0))
    b = cone(-10, 22, 10, 0, F(1))
    merged, _ = a.merge_max(b, y=0)
    left, killed = merged.slice(-10, 5, cut_y=8)
    assert killed == [(5, 0)]
    assert left.hi == 5
    # farthest envelope: owner 1 wins left of 5; discarded right side (owner 0)
    # persists as a point-tie on the cut column
    assert left.owners[-1] == F(1)
    assert left.pties[5][0] == F(0)
    assert left.owners_at(5) == F(0, 1)


def test_concat_seam_birth():
    a = line(0, 5, -1, 0, 10, F(0))
    b = line(5, 12, 1, 5, 5, F(1))
    fn = StepFn.concat([a, b], seam_birth=77)
    assert fn.junctions() == [5]
    assert fn.births[5] == 77
    c = line(5, 12, 1, 5, 5, F(0))
    fn2 = StepFn.concat([a, c], seam_birth=77)
    # owner unchanged: slope breakpoint survives but it is not a junction
    assert fn2.junctions() == []
    assert fn2.births == {}
    assert fn2.xs == [0, 5, 12]


def test_concat_merges_identical_pieces():
    a = line(0, 5, 1, 0, 2, F(0))
    b = line(5, 9, 1, 5, 7, F(0))
    fn = StepFn.concat([a, b], seam_birth=1)
    assert fn.xs == [0, 9]


def test_shift_lazy_offset():
    c = cone(0, 10, 4, 0, F(0))
    c.shift(5)
    assert c.value_at(4) == 5


def test_randomized_merges_match_brute_force():
    rng = random.Random(42)
    for trial in range(300):
        lo = rng.randrange(-8, 0) * 2
        hi = lo + rng.randrange(4, 30) * 2
        f = random_stepfn(rng, lo, hi, labels=[0, 1, 2])
        g = random_stepfn(rng, lo, hi, labels=[3, 4, 5])
        check_merge(f, g)


def test_randomized_chained_merges():
    rng = random.Random(7)
    for trial in range(100):
        lo, hi = 0, 40
        fns = [random_stepfn(rng, lo, hi, labels=[k]) for k in range(4)]
        acc = fns[0]
        for g in fns[1:]:
            acc, _ = acc.merge_max(g, y=0)
        for x in range(lo, hi + 1):
            vals = [f.value_at(x) for f in fns]
            mx = max(vals)
            assert acc.value_at(x) == mx
            want = frozenset().union(*(f.owners_at(x) for f, v in zip(fns, vals) if v == mx))
            assert acc.owners_at(x) == want
