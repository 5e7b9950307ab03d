"""Multi-scale laminar webs built from grid covers.

For every family ``i`` and scale ``l`` the cover at radius ``(2K+1)**l``
contributes its cells. A cell ``U`` is trimmed by removing every
lower-scale cell of the same family reachable from ``U`` by a descending
chain of overlapping, non-nested cells (the set ``R(U)``). Trimmed cells of
one family, together with all singletons, form a laminar system, and the
union over families catches every finite set up to the factor
``C = 2K(2K+1)``.
"""
from dataclasses import dataclass, field

import numpy as np

from .covers import DIAGONAL, grid_constant, scale_index, shifted_grid_cover, verify_cover
from .metric import ball, set_diameter
from .report import Report, ScaleRangeError, VerificationError

SINGLETON = None


@dataclass(eq=False)
class WebElement:
    id: int
    family: int
    scale: object  # int, or SINGLETON (None) for the one-point level
    coords: tuple
    raw: np.ndarray
    trimmed: np.ndarray
    R: tuple = ()

    @property
    def is_singleton(self):
        return self.scale is SINGLETON

    def __repr__(self):
        lvl = "singleton" if self.is_singleton else f"l={self.scale}"
        return (f"WebElement(id={self.id}, family={self.family}, {lvl}, "
                f"|raw|={len(self.raw)}, |trimmed|={len(self.trimmed)})")


@dataclass(eq=False)
class Web:
    space: object
    K: float
    l_min: int
    l_max: int
    family_count: int
    elements: list
    by_level: dict          # (family, scale) -> element ids
    owner: dict             # (family, scale) -> point -> element id (-1 if none)
    singletons: list        # family -> point -> element id
    construction: str = DIAGONAL
    _diam: dict = field(default_factory=dict, repr=False)
    _sets: dict = field(default_factory=dict, repr=False)

    @property
    def C(self):
        return 2 * self.K * (2 * self.K + 1)

    @property
    def base(self):
        return 2 * self.K + 1

    @property
    def scales(self):
        return range(self.l_min, self.l_max + 1)

    def trimmed_diameter(self, eid):
        d = self._diam.get(eid)
        if d is None:
            t = self.elements[eid].trimmed
            d = set_diameter(self.space, t) if t.size else 0.0
            self._diam[eid] = d
        return d

    def trimmed_set(self, eid):
        s = self._sets.get(eid)
        if s is None:
            s = frozenset(self.elements[eid].trimmed.tolist())
            self._sets[eid] = s
        return s

    def family_elements(self, i, include_empty=False):
        ids = [eid for (f, _), lst in sorted(self.by_level.items()) if f == i for eid in lst]
        ids.extend(self.singletons[i].tolist())
        if not include_empty:
            ids = [e for e in ids if self.elements[e].trimmed.size]
        return ids


def _contains(big, small):
    return bool(np.isin(small, big, assume_unique=True).all())


def build_web(space, l_min, l_max, covers=None, K=None, construction=DIAGONAL, verify=True):
    """Build the web over scales ``l_min..l_max`` plus the singleton level.

    ``covers`` optionally maps each scale to a user-supplied
    :class:`~weakdiam.covers.Cover`; ``K`` must then be given.
    """
    if l_min > l_max:
        raise ValueError(f"empty scale range [{l_min}, {l_max}]")
    if covers is None:
        if not space.has_coordinates:
            raise ValueError("matrix spaces need explicit covers for every scale")
        K = grid_constant(space.dimension, space.metric, construction)
    elif K is None:
        raise ValueError("user covers must declare their constant K")
    q = 2 * K + 1
    N = space.size

    level_covers = {}
    for ell in range(l_min, l_max + 1):
        if covers is None:
            cover = shifted_grid_cover(space, q ** ell, construction)
        else:
            if ell not in covers:
                raise ValueError(f"no cover supplied for scale {ell}")
            cover = covers[ell]
        if verify:
            rep = verify_cover(space, cover, q ** ell, K)
            if not rep.ok:
                raise VerificationError(f"cover at scale {ell}", rep)
        level_covers[ell] = cover
    counts = {c.family_count for c in level_covers.values()}
    if len(counts) != 1:
        raise ValueError("covers at different scales have different family counts")
    F = counts.pop()

    elements, by_level, owner = [], {}, {}
    reach = {}  # element id -> union of the raw sets of R(U)
    for i in range(F):
        for ell in range(l_min, l_max + 1):
            own = np.full(N, -1, dtype=np.int64)
            ids = []
            for cell in level_covers[ell].families[i]:
                eid = len(elements)
                elements.append(WebElement(eid, i, ell, cell.coords, cell.members, cell.members))
                own[cell.members] = eid
                ids.append(eid)
            by_level[(i, ell)] = ids
            owner[(i, ell)] = own
        for ell in range(l_min, l_max + 1):
            here = owner[(i, ell)]
            for eid in by_level[(i, ell)]:
                U = elements[eid]
                R, parts = set(), []
                for lower in range(l_min, ell):
                    cand = np.unique(owner[(i, lower)][U.raw])
                    for zid in cand[cand >= 0].tolist():
                        Z = elements[zid]
                        if (here[Z.raw] == eid).all():
                            continue  # Z inside U: not admissible
                        R.add(zid)
                        R.update(Z.R)
                        parts.append(Z.raw)
                        parts.append(reach[zid])
                U.R = tuple(sorted(R))
                reach[eid] = np.unique(np.concatenate(parts)) if parts else np.zeros(0, np.int64)
                U.trimmed = np.setdiff1d(U.raw, reach[eid], assume_unique=True)
    singletons = []
    for i in range(F):
        start = len(elements)
        for p in range(N):
            pt = np.array([p], dtype=np.int64)
            elements.append(WebElement(start + p, i, SINGLETON, (p,), pt, pt))
        singletons.append(np.arange(start, start + N, dtype=np.int64))

    web = Web(space, float(K), l_min, l_max, F, elements, by_level, owner, singletons, construction)
    if verify:
        for i in range(F):
            rep = verify_laminar(web, i)
            if not rep.ok:
                raise VerificationError(f"laminarity of family {i}", rep)
    return web


def compute_R(web, element):
    """Elements reachable from ``element`` by admissible descending chains."""
    if isinstance(element, int):
        element = web.elements[element]
    if element.id >= len(web.elements) or web.elements[element.id] is not element:
        raise KeyError(f"element {element.id} does not belong to this web")
    if element.is_singleton:
        raise ValueError("singletons have no R set")
    return [web.elements[e] for e in element.R]


def catch(web, S):
    """An element whose trimmed set C-catches ``S``, via the covering scale."""
    S = np.asarray(S, dtype=np.int64)
    if S.size == 0:
        raise ValueError("cannot catch the empty set")
    d = set_diameter(web.space, S)
    x = int(S[0])
    if d == 0:
        return web.elements[web.singletons[0][x]]
    ell = scale_index(web.K, d)
    if not web.l_min <= ell <= web.l_max:
        raise ScaleRangeError(f"scale {ell} outside web range [{web.l_min}, {web.l_max}]")
    B = ball(web.space, x, d + web.base ** ell / 2)
    for i in range(web.family_count):
        own = web.owner[(i, ell)]
        eid = own[x]
        if eid >= 0 and (own[B] == eid).all():
            W = web.elements[eid]
            if not _contains(W.trimmed, S):
                raise RuntimeError(f"trimming removed points of a caught set (element {eid})")
            return W
    raise RuntimeError(f"no cell at scale {ell} contains the ball around point {x}")


def catch_in_family(web, i, S, C=None):
    """Smallest-scale family-``i`` element catching ``S`` at ratio ``C``, or None.

    Only cells holding the lowest-index point of ``S`` are considered.
    """
    C = web.C if C is None else C
    S = np.asarray(S, dtype=np.int64)
    x = int(S[0])
    if S.size == 1:
        return web.elements[web.singletons[i][x]]
    d = set_diameter(web.space, S)
    if d == 0:
        return None
    limit = C * d
    for ell in web.scales:
        if web.K * web.base ** ell > limit:
            break
        eid = int(web.owner[(i, ell)][x])
        if eid < 0:
            continue
        W = web.elements[eid]
        if W.trimmed.size and _contains(W.trimmed, S) and web.trimmed_diameter(eid) <= limit:
            return W
    return None


def verify_laminar(web, i):
    """Trimmed sets of family ``i`` (with singletons) are pairwise nested or disjoint.

    Every pair of intersecting members shares a point, so it suffices that
    the members through each point form a chain; consecutive members of
    that chain (ordered by size) are checked for inclusion.
    """
    report = Report("laminar")
    ids = web.family_elements(i)
    through = [[] for _ in range(web.space.size)]
    for eid in ids:
        for p in web.elements[eid].trimmed.tolist():
            through[p].append(eid)
    checked = set()
    for p, chain in enumerate(through):
        chain.sort(key=lambda e: (len(web.elements[e].trimmed), e))
        for a, b in zip(chain, chain[1:]):
            if (a, b) in checked or len(web.elements[a].trimmed) == 1:
                continue
            checked.add((a, b))
            if not web.trimmed_set(a) <= web.trimmed_set(b):
                report.fail("crossing", family=i, elements=[a, b], point=p)
                return report
    return report


def dump_web(web):
    """Diagnostic listing, one element per line (singletons summarised)."""
    lines = [f"web K={web.K:g} C={web.C:g} scales=[{web.l_min},{web.l_max}] "
             f"families={web.family_count}"]
    for (i, ell), ids in sorted(web.by_level.items()):
        for eid in ids:
            e = web.elements[eid]
            lines.append(f"family={i} scale={ell} cell={list(e.coords)} raw={len(e.raw)} "
                         f"trimmed={len(e.trimmed)} R={len(e.R)}")
    for i in range(web.family_count):
        lines.append(f"family={i} singletons={web.space.size}")
    return "\n".join(lines) + "\n"
