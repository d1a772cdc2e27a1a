"""Deterministic SVG rendering of maps and diagrams."""
from __future__ import annotations

from .fvd import Diagram
from .maps import FarthestMap

_HUES = [210, 30, 120, 280, 0, 60, 170, 330, 90, 250, 150, 20]


def _cell_color(label) -> str:
    if label is None:
        return "#dddddd"
    hue = _HUES[min(label) % len(_HUES)]
    return f"hsl({hue},60%,75%)"


def _fmt(v) -> str:
    # internal half-units -> original units with exact .5 decimals
    if v % 2 == 0:
        return str(v // 2)
    sign = "-" if v < 0 else ""
    return f"{sign}{abs(v) // 2}.5"


class _Canvas:
    def __init__(self, box):
        self.x1, self.y1, self.x2, self.y2 = box
        self.parts: list[str] = []

    def pt(self, p) -> str:
        # flip y so larger y renders upward
        return f"{_fmt(p[0])},{_fmt(self.y1 + self.y2 - p[1])}"

    def poly(self, pts, fill, stroke, width, klass) -> None:
        d = " ".join(self.pt(p) for p in pts)
        self.parts.append(
            f'<polygon points="{d}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="{width}" class="{klass}"/>'
        )

    def line(self, a, b, stroke, width, klass) -> None:
        pa, pb = self.pt(a), self.pt(b)
        xa, ya = pa.split(",")
        xb, yb = pb.split(",")
        self.parts.append(
            f'<path d="M {xa} {ya} L {xb} {yb}" stroke="{stroke}" '
            f'stroke-width="{width}" fill="none" class="{klass}"/>'
        )

    def dot(self, p, label) -> None:
        x, y = self.pt(p).split(",")
        self.parts.append(f'<circle cx="{x}" cy="{y}" r="0.8" fill="#222" class="site"/>')
        self.parts.append(
            f'<text x="{x}" y="{y}" dx="1.2" dy="-0.8" font-size="3" class="site-label">{label}</text>'
        )

    def render(self) -> bytes:
        w = _fmt(self.x2 - self.x1)
        h = _fmt(self.y2 - self.y1)
        head = (
            '<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="{_fmt(self.x1)} {_fmt(self.y1)} {w} {h}">'
        )
        return ("\n".join([head] + self.parts + ["</svg>"])).encode()


def _render_subdivision(scene, sub, cell_of_face, cell_labels, edge_kind) -> bytes:
    cv = _Canvas(scene.bbox.as_tuple())
    order = sorted(
        range(len(sub.faces)),
        key=lambda fi: (sub.faces[fi].area2, min(sub.vpts[sub.he_origin[h]] for h in sub.faces[fi].cycle)),
        reverse=True,
    )
    for fi in order:
        ci = cell_of_face[fi]
        if ci is None:
            continue
        pts = [sub.vpts[sub.he_origin[h]] for h in sub.faces[fi].cycle]
        cv.poly(pts, _cell_color(cell_labels[ci]), "none", 0, "cell")
    for r in scene.rects:
        cv.poly(
            [(r.x1, r.y1), (r.x2, r.y1), (r.x2, r.y2), (r.x1, r.y2)],
            "#999999",
            "#555555",
            "0.3",
            "obstacle",
        )
    edges = []
    for e, kind in enumerate(edge_kind):
        if kind != "voronoi":
            continue
        a, b = sub.edges[e]
        edges.append(tuple(sorted((sub.vpts[a], sub.vpts[b]))))
    for a, b in _merge_chains(sorted(set(edges))):
        cv.line(a, b, "#111111", "0.5", "voronoi")
    for i, s in enumerate(scene.sites):
        cv.dot(s, str(i + 1))
    return cv.render()


def _merge_chains(edges):
    """Merge collinear touching edges into maximal runs for compact paths."""
    from .subdivision import _line_key, _param, _point

    by_line: dict = {}
    for a, b in edges:
        if a == b:
            continue
        key = _line_key(a, b)
        t1, t2 = sorted((_param(key, a), _param(key, b)))
        by_line.setdefault(key, []).append((t1, t2))
    out = []
    for key in sorted(by_line, key=str):
        ivals = sorted(by_line[key])
        cur = list(ivals[0])
        for t1, t2 in ivals[1:]:
            if t1 <= cur[1]:
                cur[1] = max(cur[1], t2)
            else:
                out.append((_point(key, cur[0]), _point(key, cur[1])))
                cur = [t1, t2]
        out.append((_point(key, cur[0]), _point(key, cur[1])))
    return out


def render_diagram(diagram: Diagram) -> bytes:
    return _render_subdivision(
        diagram.scene,
        diagram.sub,
        diagram.cell_of_face,
        diagram.cell_labels,
        diagram.edge_kind,
    )


def render_map(scene, fmap: FarthestMap) -> bytes:
    return _render_subdivision(scene, fmap.sub, fmap.cell_of_face, fmap.cell_labels, fmap.edge_kind)
