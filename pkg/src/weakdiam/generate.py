"""Seeded instance generators: sampled disks, boxes and grid cells."""
import itertools
from dataclasses import dataclass

import numpy as np

from .metric import L2, LINF, Space
from .pipeline import Instance
from .spacefill import roundness_check
from .system import ObjectSystem

KINDS = ("disks", "boxes", "grid-objects")


@dataclass
class GenParams:
    n: int = 2                   # dimension
    points: int = 500
    objects: int = 50
    radius: tuple = (1.0, 2.0)   # disk radius / box half-width range
    seed: int = 0
    cloud: str = "random"        # random | grid
    extent: float = None         # side of the sampling box; default gives unit density
    metric: str = L2

    def validate(self):
        if self.n < 1 or self.points < 1 or self.objects < 1:
            raise ValueError("dimension and counts must be positive")
        lo, hi = self.radius
        if not 0 <= lo <= hi < np.inf:
            raise ValueError(f"radius range must satisfy 0 <= lo <= hi < inf, got {self.radius}")
        if self.cloud not in ("random", "grid"):
            raise ValueError(f"unknown cloud kind {self.cloud!r}")


def _grid_side(points, n):
    return max(1, int(round(points ** (1.0 / n))))


def make_cloud(p, rng):
    if p.cloud == "grid":
        m = _grid_side(p.points, p.n)
        step = 1.0 if p.extent is None else p.extent / max(m - 1, 1)
        axes = [np.arange(m) * step] * p.n
        return np.array(list(itertools.product(*axes)), dtype=np.float64)
    extent = p.points ** (1.0 / p.n) if p.extent is None else p.extent
    return rng.uniform(0.0, extent, size=(p.points, p.n))


def generate(kind, params=None, **overrides):
    """Deterministic instance of the given kind; object centres are cloud points."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; choose from {KINDS}")
    p = params or GenParams()
    if overrides:
        p = GenParams(**{**p.__dict__, **overrides})
    p.validate()
    rng = np.random.default_rng(p.seed)

    if kind == "grid-objects":
        m = _grid_side(p.points, p.n)
        if m < 2:
            raise ValueError("grid-objects needs at least 2 points per axis")
        pts = np.array(list(itertools.product(range(m), repeat=p.n)), dtype=np.float64)
        space = Space(LINF, points=pts)
        corners = rng.integers(0, m - 1, size=(p.objects, p.n))
        objects = [
            np.flatnonzero(np.all((pts >= c) & (pts <= c + 1), axis=1)) for c in corners
        ]
        inst = Instance(space, ObjectSystem(space, objects), name=f"grid-objects-{p.seed}", seed=p.seed)
        inst.extra["corners"] = corners
        return inst

    pts = make_cloud(p, rng)
    metric = p.metric if kind == "disks" else LINF
    space = Space(metric, points=pts)
    centres = rng.integers(0, len(pts), size=p.objects)
    lo, hi = p.radius
    objects = []
    for c in centres:
        if kind == "disks":
            rad = rng.uniform(lo, hi)
            d = space.distances_from(int(c))
            objects.append(np.flatnonzero(d <= rad))
        else:
            half = rng.uniform(lo, hi, size=p.n)
            objects.append(np.flatnonzero(np.all(np.abs(pts - pts[c]) <= half, axis=1)))
    return Instance(space, ObjectSystem(space, objects), name=f"{kind}-{p.seed}", seed=p.seed)


def certify_roundness(instance, depth=8):
    """Largest eta in {1, 1/2, ..., 1/2^depth} for which every object is eta-round, else None."""
    for j in range(depth + 1):
        eta = 0.5 ** j
        if all(roundness_check(instance.space, obj, eta).ok for obj in instance.system):
            return eta
    return None
