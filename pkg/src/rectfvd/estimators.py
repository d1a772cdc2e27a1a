"""Scikit-learn style estimators wrapping the exact geometric engine.

The heavy lifting stays in the geometry modules; these classes adapt it to the
fit/predict idiom so the solver composes with pipelines and model selection
utilities.  Inputs are validated to be exact integers (or exact halves), never
silently rounded.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .fvd import assemble, geodesic_center
from .query import build_index
from .scene import fmt_half, make_scene


def check_coordinates(X, name: str = "X") -> np.ndarray:
    """Validate an (n, 2) array of exact integer or half-integer coordinates."""
    arr = np.asarray(X)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"{name} must have shape (n, 2), got {arr.shape}")
    doubled = 2 * arr.astype(np.float64)
    rounded = np.rint(doubled)
    if not np.array_equal(doubled, rounded):
        raise ValueError(f"{name} must contain integers or exact halves")
    return rounded.astype(np.int64)


def check_rects(rects) -> list[tuple[int, int, int, int]]:
    out = []
    for i, r in enumerate(rects or ()):
        vals = tuple(r)
        if len(vals) != 4:
            raise ValueError(f"rectangle {i} must be (x1, y1, x2, y2)")
        if any(v != int(v) for v in vals):
            raise ValueError(f"rectangle {i} must have integer coordinates")
        vals = tuple(int(v) for v in vals)
        if not (vals[0] < vals[2] and vals[1] < vals[3]):
            raise ValueError(f"rectangle {i} is degenerate")
        out.append(vals)
    return out


class GeodesicFarthestNeighbors(BaseEstimator):
    """Farthest-neighbor queries under the L1 geodesic metric among rectangles.

    Parameters
    ----------
    rects : sequence of (x1, y1, x2, y2) integer rectangles (obstacles)
    bbox : optional explicit bounding box (x1, y1, x2, y2)

    After ``fit(X)`` with X an (m, 2) integer array of sites, ``predict(Q)``
    returns the smallest index among the farthest sites for each query point
    and ``farthest(Q)`` the exact distances with the full tied index sets.
    """

    def __init__(self, rects=(), bbox=None):
        self.rects = rects
        self.bbox = bbox

    def fit(self, X, y=None):
        sites = check_coordinates(X, "X")  # arrives doubled
        rects = check_rects(self.rects)
        self.scene_ = make_scene(
            [tuple(map(int, p)) for p in sites],
            [(2 * a, 2 * b, 2 * c, 2 * d) for a, b, c, d in rects],
            bbox=None if self.bbox is None else tuple(2 * int(v) for v in self.bbox),
            doubled=True,
        )
        self.index_ = build_index(self.scene_)
        self.n_features_in_ = 2
        return self

    def farthest(self, Q):
        """Exact farthest distances and tied site-index sets for query points."""
        self._check_fitted()
        pts = check_coordinates(Q, "Q")
        dists = np.empty(len(pts), dtype=np.float64)
        sets = []
        for i, p in enumerate(pts):
            sites, v = self.index_.farthest_neighbor((int(p[0]), int(p[1])))
            dists[i] = v / 2.0
            sets.append(tuple(sites))
        return dists, sets

    def predict(self, Q):
        dists, sets = self.farthest(Q)
        return np.array([s[0] for s in sets], dtype=np.int64)

    def _check_fitted(self):
        if not hasattr(self, "index_"):
            raise RuntimeError("estimator is not fitted; call fit(X) first")


class FarthestVoronoi(BaseEstimator):
    """Explicit L1 geodesic farthest-point Voronoi diagram and center.

    ``fit(X)`` builds the diagram; fitted attributes expose the exact center
    value (``center_value_``), its points/segments, and the cell count.
    ``predict(Q)`` labels query points with the smallest farthest-site index.
    """

    def __init__(self, rects=(), bbox=None):
        self.rects = rects
        self.bbox = bbox

    def fit(self, X, y=None):
        base = GeodesicFarthestNeighbors(rects=self.rects, bbox=self.bbox).fit(X)
        self.scene_ = base.scene_
        self.index_ = base.index_
        self.diagram_ = assemble(self.scene_, self.index_)
        center = geodesic_center(self.diagram_, self.index_)
        self.center_value_ = center.value / 2.0
        self.center_points_ = [(fmt_half(p[0]), fmt_half(p[1])) for p in center.points]
        self.center_segments_ = [
            ((fmt_half(a[0]), fmt_half(a[1])), (fmt_half(b[0]), fmt_half(b[1])))
            for a, b in center.segments
        ]
        self.n_cells_ = len(self.diagram_.cell_labels)
        self.n_features_in_ = 2
        return self

    def predict(self, Q):
        if not hasattr(self, "index_"):
            raise RuntimeError("estimator is not fitted; call fit(X) first")
        pts = check_coordinates(Q, "Q")
        out = np.empty(len(pts), dtype=np.int64)
        for i, p in enumerate(pts):
            sites, _ = self.index_.farthest_neighbor((int(p[0]), int(p[1])))
            out[i] = sites[0]
        return out
