"""Space-filling profiles: shallow unions, disjoint-object counts, roundness.

An object system is f-space-filling when every ball B(x, r) meets at most
f(r/s) pairwise-disjoint objects of diameter >= s. Nothing here assumes a
closed form for f; counts are measured on the instance.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import hop_distances, intersection_graph
from .metric import ball, set_diameter
from .report import Report, WeakDiamError
from .system import ObjectSystem

EXACT = "exact"
GREEDY = "greedy"
EXACT_LIMIT = 25


class ExactCountRefused(WeakDiamError):
    """Too many candidates for the exact branch-and-bound count."""


@dataclass(frozen=True)
class SpacefillQuery:
    x: int
    r: float
    s: float

    def __post_init__(self):
        if not (self.r > 0 and self.s > 0):
            raise ValueError(f"query radii must be positive, got r={self.r}, s={self.s}")


def shallow_union_system(system, t, graph=None):
    """Object i becomes the union of all objects within t hops of it."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if t == 0:
        return ObjectSystem(system.space, list(system.objects))
    G = intersection_graph(system.space, system) if graph is None else graph
    unions = []
    for i in range(len(system)):
        near = np.flatnonzero(hop_distances(G, [i], cutoff=t) >= 0)
        unions.append(np.unique(np.concatenate([system[j] for j in near])))
    return ObjectSystem(system.space, unions)


def _candidates(system, q):
    near = ball(system.space, q.x, q.r)
    mask = np.zeros(system.space.size, dtype=bool)
    mask[near] = True
    diams = system.diameters
    return [i for i, obj in enumerate(system)
            if diams[i] >= q.s and mask[obj].any()]


def _max_disjoint(sets):
    """Largest pairwise-disjoint subfamily (branch and bound on conflicts)."""
    m = len(sets)
    conflict = [0] * m
    for a in range(m):
        for b in range(a + 1, m):
            if not sets[a].isdisjoint(sets[b]):
                conflict[a] |= 1 << b
                conflict[b] |= 1 << a
    best = 0

    def grow(avail, size):
        nonlocal best
        if avail == 0:
            best = max(best, size)
            return
        if size + bin(avail).count("1") <= best:
            return
        v = (avail & -avail).bit_length() - 1
        grow(avail & ~conflict[v] & ~(1 << v), size + 1)
        grow(avail & ~(1 << v), size)

    grow((1 << m) - 1, 0)
    return best


def spacefill_count(system, q, mode=EXACT, limit=EXACT_LIMIT):
    """Pairwise-disjoint objects of diameter >= s meeting B(x, r).

    ``exact`` maximises the family; ``greedy`` scans ids ascending and gives
    a lower bound.
    """
    cand = _candidates(system, q)
    sets = [frozenset(system[i].tolist()) for i in cand]
    if mode == GREEDY:
        used, count = set(), 0
        for s in sets:
            if used.isdisjoint(s):
                used |= s
                count += 1
        return count
    if mode != EXACT:
        raise ValueError(f"unknown mode {mode!r}")
    if len(cand) > limit:
        raise ExactCountRefused(f"{len(cand)} candidates exceed the exact limit {limit}")
    return _max_disjoint(sets)


def lemcons_check(system, t, queries, limit=EXACT_LIMIT, unions=None):
    """Counts of the t-shallow unions never beat the base system's counts.

    For each (x, r, s): count(unions; x, r, s) <= count(system; x, r + s, s / (2t + 2)).
    """
    report = Report("shallow-union-spacefill")
    unions = shallow_union_system(system, t) if unions is None else unions
    rows = []
    for q in queries:
        lhs = spacefill_count(unions, q, EXACT, limit)
        wide = SpacefillQuery(q.x, q.r + q.s, q.s / (2 * t + 2))
        rhs = spacefill_count(system, wide, EXACT, limit)
        rows.append((q, lhs, rhs))
        if lhs > rhs:
            report.fail("count", x=q.x, r=q.r, s=q.s, unions=lhs, base=rhs)
    report.rows = rows
    return report


def _good_intervals(dv, dvp, gap, eta):
    """Radii r at which v' witnesses roundness for v, as half-open intervals.

    v' fails at r iff its eta*r ball reaches outside S (r >= gap/eta) or
    holds some y with d(v', y) / eta <= r < d(v, y).
    """
    lo = dvp / eta
    hi = dv
    keep = lo < hi
    bad = sorted(zip(lo[keep].tolist(), hi[keep].tolist()))
    cap = gap / eta
    good, cur = [], 0.0
    for a, b in bad:
        if a >= cap:
            break
        if a > cur:
            good.append((cur, min(a, cap)))
        cur = max(cur, b)
        if cur >= cap:
            break
    if cur < cap:
        good.append((cur, cap))
    return good


def roundness_check(space, S, eta):
    """Is S eta-round: for all v in S and r <= diam S, some B(v', eta r) fits in S and B(v, r)?

    Exact for finite spaces: for each v the witnessing radii of every v' are
    computed as half-open intervals and must cover (0, diam S].
    """
    if not 0 < eta <= 1:
        raise ValueError(f"eta must lie in (0, 1], got {eta}")
    S = np.asarray(S, dtype=np.int64)
    if S.size == 0:
        raise ValueError("roundness of the empty set is undefined")
    report = Report("roundness")
    diam = set_diameter(space, S)
    if diam == 0:
        return report
    inside = np.zeros(space.size, dtype=bool)
    inside[S] = True
    rows = space.distance_block(S)
    outside = ~inside
    gaps = rows[:, outside].min(axis=1) if outside.any() else np.full(len(S), math.inf)
    for a, v in enumerate(S.tolist()):
        pieces = []
        for b in range(len(S)):
            pieces.extend(_good_intervals(rows[a], rows[b], gaps[b], eta))
        pieces.sort()
        reach = 0.0
        for lo, hi in pieces:
            if lo > reach:
                break
            reach = max(reach, hi)
        if reach <= diam:
            report.fail("not-round", point=v, radius=reach, diameter=diam)
            return report
    return report


def round_spacefill_bound(K, eta, x):
    """K ** ceil(log2((x + 1) / eta)), computed exactly."""
    if K < 1 or not 0 < eta <= 1 or not x > 0:
        raise ValueError("need K >= 1, eta in (0, 1], x > 0")
    q = (Fraction(x) + 1) / Fraction(eta)
    e = max(0, math.ceil(math.log2(q)))
    while e > 0 and 2 ** (e - 1) >= q:
        e -= 1
    while 2 ** e < q:
        e += 1
    return int(K) ** e


def _greedy_halving_cover(block, rad, start=0):
    """Farthest-point greedy cover by balls of radius ``rad`` centred at members.

    ``block`` is the members' pairwise distance matrix.
    """
    uncovered = np.ones(len(block), dtype=bool)
    nearest = np.full(len(block), math.inf)
    count = 0
    pick = start
    while True:
        count += 1
        nearest = np.minimum(nearest, block[pick])
        uncovered &= block[pick] > rad
        if not uncovered.any():
            return count
        pick = int(np.argmax(np.where(uncovered, nearest, -1.0)))


def doubling_estimate(space, samples=None, seed=0):
    """Largest greedy count of radius-r/2 balls covering a ball B(x, r).

    With ``samples=None`` every point and every distinct radius d(x, y) is
    tried; a ball's membership only changes at those radii while the half
    radius grows, so this bounds the doubling constant from above.
    """
    N = space.size
    if N == 1:
        return 1
    D = space.distance_block(np.arange(N))
    if samples is None:
        pairs = [(x, float(r)) for x in range(N) for r in np.unique(D[x]) if r > 0]
    else:
        rng = np.random.default_rng(seed)
        pairs = []
        for _ in range(samples):
            x = int(rng.integers(N))
            pos = D[x][D[x] > 0]
            if pos.size:
                pairs.append((x, float(rng.choice(pos))))
    best = 1
    for x, r in pairs:
        members = np.flatnonzero(D[x] <= r)
        start = int(np.searchsorted(members, x))
        best = max(best, _greedy_halving_cover(D[np.ix_(members, members)], r / 2, start))
    return best
