"""Random scene generation and the oracle-equivalence check suite.

Everything here is seeded and exact; the CLI `check` command and the
acceptance tests share this code so one path gates both.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .fvd import assemble, geodesic_center
from .oracle import brute_eccentricity_min, brute_farthest, build_hanan
from .query import FarthestNeighborIndex, build_index
from .scene import Point, Scene, make_scene


def generate_scene(rng: random.Random, n: int, m: int, coord: int) -> Scene:
    """Valid random scene with exactly n disjoint rectangles and m sites."""
    while True:
        rects: list[tuple[int, int, int, int]] = []
        tries = 0
        while len(rects) < n and tries < 2000:
            tries += 1
            w = rng.randrange(1, max(2, coord // 4))
            h = rng.randrange(1, max(2, coord // 4))
            x1 = rng.randrange(-coord, coord - w + 1)
            y1 = rng.randrange(-coord, coord - h + 1)
            cand = (x1, y1, x1 + w, y1 + h)
            if all(
                cand[2] < r[0] or r[2] < cand[0] or cand[3] < r[1] or r[3] < cand[1]
                for r in rects
            ):
                rects.append(cand)
        if len(rects) < n:
            continue

        def free(p):
            return not any(r[0] < p[0] < r[2] and r[1] < p[1] < r[3] for r in rects)

        sites: list[tuple[int, int]] = []
        tries = 0
        while len(sites) < m and tries < 5000:
            tries += 1
            p = (rng.randrange(-coord, coord + 1), rng.randrange(-coord, coord + 1))
            if free(p) and p not in sites:
                sites.append(p)
        if len(sites) < m:
            continue
        try:
            return make_scene(sites, rects)
        except Exception:
            continue


def sample_free_points(scene: Scene, rng: random.Random, k: int) -> list[Point]:
    """k random free-space points on the integer grid inside the box."""
    box = scene.bbox
    out: list[Point] = []
    while len(out) < k:
        p = (
            2 * rng.randrange(box.x1 // 2, box.x2 // 2 + 1),
            2 * rng.randrange(box.y1 // 2, box.y2 // 2 + 1),
        )
        if scene.in_free_space(p):
            out.append(p)
    return out


@dataclass
class CheckReport:
    scenes: int = 0
    queries: int = 0
    cell_points: int = 0
    failures: list[str] = field(default_factory=list)
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return not self.failures


def check_queries(scene: Scene, index: FarthestNeighborIndex, pts, hanan, report: CheckReport):
    for q in pts:
        want = brute_farthest(hanan, q)
        got = index.farthest_neighbor(q)
        report.queries += 1
        if (got[0], got[1]) != (want[0], want[1]):
            report.failures.append(f"query {q}: structure {got} oracle {want}")
            return False
    return True


def check_diagram(scene: Scene, diagram, pts, hanan, report: CheckReport):
    for q in pts:
        arg, _ = brute_farthest(hanan, q)
        argset = frozenset(arg)
        kind, ref = diagram.locate(q)
        report.cell_points += 1
        if kind == "cell":
            owners = diagram.cell_labels[ref]
            if not owners <= argset:
                report.failures.append(f"cell point {q}: owners {set(owners)} vs argmax {arg}")
                return False
            if len(arg) >= 2 and owners != argset:
                report.failures.append(
                    f"tied point {q} not on an edge and cell set {set(owners)} != {arg}"
                )
                return False
        else:
            cells = diagram.edge_cells(ref)
            union = frozenset().union(*(diagram.cell_labels[c] for c in cells)) if cells else frozenset()
            if not union <= argset:
                report.failures.append(f"edge point {q}: incident owners {set(union)} vs {arg}")
                return False
    return True


def check_structure(scene: Scene, index: FarthestNeighborIndex, diagram, report: CheckReport):
    # axis-alignment of map edges and slope classes of diagram edges
    for d, res in index.results.items():
        for seg in res.segments:
            if seg.fn is not None and seg.x1 >= seg.x2:
                report.failures.append(f"degenerate segment in {d}")
                return False
    for e, kind in enumerate(diagram.edge_kind):
        if kind is None:
            continue
        a, b = diagram.sub.edges[e]
        pa, pb = diagram.sub.vpts[a], diagram.sub.vpts[b]
        dx, dy = abs(pa[0] - pb[0]), abs(pa[1] - pb[1])
        if not (dx == 0 or dy == 0 or dx == dy):
            report.failures.append(f"edge {pa}-{pb} not axis-aligned or slope +-1")
            return False
    # boundary lists and owner ordering are asserted during audited sweeps
    return True


def check_corner_tables(scene: Scene, index: FarthestNeighborIndex, report: CheckReport):
    from .scene import transform_scene

    for d, res in index.results.items():
        frame = res.frame
        back = frame.from_frame
        hanan = build_hanan(scene)
        for table in res.tables:
            for i, (da, db) in table.dists.items():
                orig_site = scene.sites[frame.original_index(i)]
                for corner, dist in ((table.alpha, da), (table.beta, db)):
                    oc = back(corner)
                    want = hanan.distance(oc, orig_site)
                    if want != dist:
                        report.failures.append(
                            f"corner table {d} rect {table.rect}: d({oc},{orig_site})={dist} oracle {want}"
                        )
                        return False
    return True


def check_top_envelopes(index: FarthestNeighborIndex, report: CheckReport):
    for d, res in index.results.items():
        for rec in res.records:
            xa, xb = rec.span
            if rec.envelope is None:
                if rec.tents:
                    report.failures.append(f"{d} rect {rec.rect}: empty envelope with tents")
                    return False
                continue
            for x in range(xa, xb + 1):
                want = max(min(da + (x - xa), db_raw + (xb - x)) for _, da, db_raw in rec.tents)
                if rec.envelope.value_at(x) != want:
                    report.failures.append(
                        f"{d} rect {rec.rect}: envelope({x})={rec.envelope.value_at(x)} brute {want}"
                    )
                    return False
    return True


def check_center(scene: Scene, diagram, index, center, rng, samples, report: CheckReport):
    extra = set(center.points) | {p for s in center.segments for p in s}
    hanan = build_hanan(scene, extra=extra)
    pts, v = brute_eccentricity_min(hanan, list(hanan.points))
    if center.value != v:
        report.failures.append(f"center value {center.value} vs brute {v}")
        return False
    for p in sample_free_points(scene, rng, samples):
        ecc = index.eccentricity(p)
        if ecc < center.value:
            report.failures.append(f"sample {p} has eccentricity {ecc} < center {center.value}")
            return False
    return True


def run_check(
    scenes: int,
    samples: int,
    seed: int,
    n_max: int = 8,
    m_max: int = 12,
    coord: int = 100,
    diagram_samples: int | None = None,
    center_samples: int = 200,
    progress=None,
) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport()
    for k in range(scenes):
        n = rng.randrange(0, n_max + 1)
        m = rng.randrange(1, m_max + 1)
        scene = generate_scene(rng, n, m, coord)
        report.scenes += 1
        try:
            index = build_index(scene, audit=True)
            diagram = assemble(scene, index)
            center = geodesic_center(diagram, index)
            pts = sample_free_points(scene, rng, samples)
            dpts = sample_free_points(scene, rng, diagram_samples or samples)
            hanan = build_hanan(scene, extra=set(pts) | set(dpts))
            ok = (
                check_queries(scene, index, pts, hanan, report)
                and check_diagram(scene, diagram, dpts, hanan, report)
                and check_structure(scene, index, diagram, report)
                and check_corner_tables(scene, index, report)
                and check_top_envelopes(index, report)
                and check_center(scene, diagram, index, center, rng, center_samples, report)
            )
        except AssertionError as exc:
            report.failures.append(f"internal invariant: {exc}")
            ok = False
        if not ok:
            report.counterexample = {
                "sites": [[p[0] // 2, p[1] // 2] for p in scene.sites],
                "rects": [[r.x1 // 2, r.y1 // 2, r.x2 // 2, r.y2 // 2] for r in scene.rects],
            }
            return report
        if progress is not None:
            progress(k + 1, scenes)
    return report
