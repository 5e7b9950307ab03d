"""Finite metric spaces: point clouds under l2/linf, or explicit matrices."""
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import kernels
from .report import Report

L2 = "l2"
LINF = "linf"
MATRIX = "matrix"
METRIC_KINDS = (L2, LINF, MATRIX)


def point_set(members):
    """Normalise an iterable of point indices to a sorted, duplicate-free array."""
    return np.unique(np.asarray(list(members) if not isinstance(members, np.ndarray) else members,
                                dtype=np.int64))


@dataclass(eq=False)
class Space:
    """A finite metric space.

    Coordinate spaces hold an ``(N, n)`` array in ``points``; matrix spaces
    hold an ``(N, N)`` array in ``matrix`` and have dimension 0.
    """

    metric: str
    points: np.ndarray = None
    matrix: np.ndarray = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.metric not in METRIC_KINDS:
            raise ValueError(f"unknown metric kind {self.metric!r}")
        if self.metric == MATRIX:
            if self.matrix is None:
                raise ValueError("matrix space needs a distance matrix")
            self.matrix = np.asarray(self.matrix, dtype=np.float64)
            if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
                raise ValueError("distance matrix must be square")
            if self.matrix.shape[0] < 1:
                raise ValueError("space needs at least one point")
        else:
            if self.points is None:
                raise ValueError("coordinate space needs points")
            self.points = np.asarray(self.points, dtype=np.float64)
            if self.points.ndim != 2 or self.points.shape[1] < 1:
                raise ValueError("points must be an (N, n) array with n >= 1")
            if self.points.shape[0] < 1:
                raise ValueError("space needs at least one point")

    @property
    def dimension(self):
        return 0 if self.metric == MATRIX else self.points.shape[1]

    @property
    def size(self):
        return (self.matrix if self.metric == MATRIX else self.points).shape[0]

    @property
    def has_coordinates(self):
        return self.metric != MATRIX

    def _check(self, p):
        if not 0 <= p < self.size:
            raise IndexError(f"point index {p} out of range [0, {self.size})")

    def distance(self, p, q):
        self._check(p)
        self._check(q)
        if self.metric == MATRIX:
            return float(self.matrix[p, q])
        diff = np.abs(self.points[p] - self.points[q])
        if self.metric == LINF:
            return float(diff.max())
        return float(np.sqrt((diff * diff).sum()))

    def distances_from(self, p, targets=None):
        """Distances from point ``p`` to ``targets`` (all points by default)."""
        self._check(p)
        if self.metric == MATRIX:
            row = self.matrix[p]
            return row if targets is None else row[targets]
        pts = self.points if targets is None else self.points[targets]
        diff = np.abs(pts - self.points[p])
        if self.metric == LINF:
            return diff.max(axis=1)
        return np.sqrt((diff * diff).sum(axis=1))

    def distance_block(self, rows, cols=None):
        """Dense distance block ``d(rows[a], cols[b])``."""
        rows = np.asarray(rows, dtype=np.int64)
        if self.metric == MATRIX:
            block = self.matrix[rows]
            return block if cols is None else block[:, cols]
        cpts = self.points if cols is None else self.points[cols]
        diff = np.abs(self.points[rows][:, None, :] - cpts[None, :, :])
        if self.metric == LINF:
            return diff.max(axis=2)
        return np.sqrt((diff * diff).sum(axis=2))


def distance(space, p, q):
    return space.distance(p, q)


def ball(space, x, r):
    """Closed ball ``{y : d(x, y) <= r}`` as a sorted index array."""
    if r < 0:
        raise ValueError(f"negative radius {r}")
    return np.flatnonzero(space.distances_from(x) <= r).astype(np.int64)


def set_diameter(space, members):
    """Largest pairwise distance within ``members`` (0 for a singleton)."""
    members = np.asarray(members, dtype=np.int64)
    if members.size == 0:
        raise ValueError("diameter of an empty set is undefined")
    if members.size == 1:
        return 0.0
    if space.metric == MATRIX:
        return float(space.matrix[np.ix_(members, members)].max())
    kind = 0 if space.metric == L2 else 1
    return float(kernels.set_diameter(space.points, members, kind))


def verify_metric(space, tol=0.0):
    """Check the metric axioms; coordinate spaces are valid by construction."""
    report = Report("metric")
    if space.metric != MATRIX:
        return report
    m = space.matrix
    n = m.shape[0]
    diag = np.flatnonzero(np.diag(m) != 0)
    if diag.size:
        report.fail("nonzero-diagonal", point=int(diag[0]), value=float(m[diag[0], diag[0]]))
    neg = np.argwhere(m < 0)
    if neg.size:
        a, b = map(int, neg[0])
        report.fail("negative-entry", pair=[a, b], value=float(m[a, b]))
    asym = np.argwhere(m != m.T)
    if asym.size:
        a, b = map(int, asym[0])
        report.fail("asymmetry", pair=[a, b], values=[float(m[a, b]), float(m[b, a])])
    # d(a,b) <= d(a,c) + d(c,b) for every c at once
    for a, b in combinations(range(n), 2):
        via = m[a] + m[:, b]
        c = int(np.argmin(via))
        if m[a, b] > via[c] + tol:
            report.fail("triangle", triple=[a, b, c],
                        values=[float(m[a, b]), float(m[a, c]), float(m[c, b])])
            break
    return report
