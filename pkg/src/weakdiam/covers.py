"""Linear-control covers of point clouds by shifted half-open grids.

A cover at radius ``r`` consists of ``n + 1`` families of lattice cells of
side ``s = 2(n+1) r``; family ``i`` is shifted by ``i * s / (n + 1)`` along
the diagonal. Along any one axis the bad zones (within ``r`` of a cell wall)
of the ``n + 1`` shifts tile the period exactly, so each axis rules out at
most one family and some family keeps the whole ball inside one cell.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .metric import L2, LINF, ball, set_diameter
from .report import Report

DIAGONAL = "diagonal"
PRODUCT = "product"


@dataclass
class Cell:
    family: int
    coords: tuple
    members: np.ndarray


@dataclass
class Cover:
    radius: float
    side: float
    shifts: list
    families: list
    K: float
    construction: str = DIAGONAL
    _assignment: list = field(default=None, repr=False)

    @property
    def family_count(self):
        return len(self.families)

    def assignment(self, n_points):
        """Per family, the index of the cell holding each point (-1 if none).

        Raises ``ValueError`` if a point lies in two cells of one family.
        """
        if self._assignment is None:
            out = []
            for fam in self.families:
                owner = np.full(n_points, -1, dtype=np.int64)
                for j, cell in enumerate(fam):
                    if (owner[cell.members] != -1).any():
                        raise ValueError("cells of one family overlap")
                    owner[cell.members] = j
                out.append(owner)
            self._assignment = out
        return self._assignment


def grid_constant(dimension, metric, construction=DIAGONAL):
    """Mesh constant K of the grid construction: mesh <= K * r."""
    n = dimension
    base = 2 * (n + 1) if construction == DIAGONAL else 4
    return base * math.sqrt(n) if metric == L2 else float(base)


def _cells_for_shift(points, shift, side, family):
    lattice = np.floor((points - shift) / side).astype(np.int64)
    keys, inverse = np.unique(lattice, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    order = np.argsort(inverse, kind="stable")
    bounds = np.searchsorted(inverse[order], np.arange(len(keys) + 1))
    return [
        Cell(family, tuple(int(c) for c in keys[j]), order[bounds[j]:bounds[j + 1]].astype(np.int64))
        for j in range(len(keys))
    ]


def shifted_grid_cover(space, r, construction=DIAGONAL):
    """Grid cover with Lebesgue number >= r and mesh <= K r.

    ``construction="product"`` selects the 2**n-family variant (side 4r,
    each axis independently shifted by 0 or 2r) for cross-checking.
    """
    if not space.has_coordinates:
        raise ValueError("grid covers need a coordinate space, not a distance matrix")
    if space.metric not in (L2, LINF):
        raise ValueError(f"unsupported metric {space.metric!r}")
    if not r > 0:
        raise ValueError(f"cover radius must be positive, got {r}")
    n = space.dimension
    pts = space.points
    if construction == DIAGONAL:
        side = 2 * (n + 1) * r
        shifts = [np.full(n, i * side / (n + 1)) for i in range(n + 1)]
    elif construction == PRODUCT:
        side = 4 * r
        shifts = [np.array([(mask >> j & 1) * side / 2 for j in range(n)], dtype=np.float64)
                  for mask in range(2 ** n)]
    else:
        raise ValueError(f"unknown construction {construction!r}")
    families = [_cells_for_shift(pts, shift, side, i) for i, shift in enumerate(shifts)]
    return Cover(r, side, [s.tolist() for s in shifts], families,
                 grid_constant(n, space.metric, construction), construction)


def _lebesgue_failures(space, cover, r, chunk=512):
    """Points ``x`` whose ball B(x, r) sits inside no cell of the cover."""
    N = space.size
    owners = cover.assignment(N)
    bad = []
    for lo in range(0, N, chunk):
        rows = np.arange(lo, min(N, lo + chunk))
        inside = space.distance_block(rows) <= r
        good = np.zeros(len(rows), dtype=bool)
        for owner in owners:
            mine = owner[rows]
            spill = inside & (owner[None, :] != mine[:, None])
            good |= (mine >= 0) & ~spill.any(axis=1)
        bad.extend(rows[~good].tolist())
    return bad


def verify_cover(space, cover, r, K):
    """Exhaustive check of disjointness, mesh <= K r and Lebesgue number >= r."""
    report = Report("cover")
    try:
        cover.assignment(space.size)
    except ValueError:
        for i, fam in enumerate(cover.families):
            seen = {}
            for j, cell in enumerate(fam):
                for p in cell.members.tolist():
                    if p in seen:
                        report.fail("overlap", family=i, cells=[seen[p], j], point=p)
                        break
                    seen[p] = j
        # Lebesgue check on an overlapping cover: scan every cell per point
        for x in range(space.size):
            b = set(ball(space, x, r).tolist())
            if not any(b <= set(c.members.tolist()) for fam in cover.families for c in fam):
                report.fail("lebesgue", point=x, radius=r)
                break
    else:
        bad = _lebesgue_failures(space, cover, r)
        if bad:
            report.fail("lebesgue", point=bad[0], radius=r)
    limit = K * r
    for i, fam in enumerate(cover.families):
        for j, cell in enumerate(fam):
            if cell.members.size == 0:
                report.fail("empty-cell", family=i, cell=j)
                continue
            d = set_diameter(space, cell.members)
            if d > limit:
                report.fail("mesh", family=i, cell=j, diameter=d, limit=limit)
                break
    return report


def scale_index(K, d):
    """The unique integer l with (2K+1)**(l-1) / 2 <= d < (2K+1)**l / 2."""
    if not K > 1:
        raise ValueError(f"K must exceed 1, got {K}")
    if not d > 0:
        raise ValueError(f"scale index needs d > 0, got {d}")
    q = 2 * K + 1
    ell = math.floor(math.log(2 * d, q)) + 1
    while q ** (ell - 1) / 2 > d:
        ell -= 1
    while d >= q ** ell / 2:
        ell += 1
    return ell
