"""Two-colorings of bounded weak diameter for graphs with dominated tree decompositions.

The recursion colors a frame ``(ambient graph, subtree, root, H, Z, psi, k)``:
the region of bags touching ``Z`` is split into vertices close to ``Z``
(kept from ``psi`` or colored 1) and the rest, which is recursed on with
narrowness ``k - 1`` in an auxiliary graph; a color-1 shell and a color-2
shell then separate the region from the subtrees hanging below it, which
are recursed on with the same ``k``.

Frames are processed by an explicit trampoline (each frame is a generator
that yields child frames), so deep decompositions never hit Python's
recursion limit.
"""
from collections import deque
from dataclasses import dataclass, field

from .graphs import coloring_diameter
from .report import Report


def w_bound(k):
    """w(0) = 0, w(k) = k (2 (5k+1) (w(k-1) + 2) + 13); exact integers."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    w = 0
    for j in range(1, k + 1):
        w = j * (2 * (5 * j + 1) * (w + 2) + 13)
    return w


def narrow_diameter_bounds(k, a, ell):
    """Diameter bounds for a (k, a)-narrow set: plain, and with an l-bounded outside."""
    if k < 1:
        raise ValueError("narrowness bounds need k >= 1")
    if a < 0 or ell < 0:
        raise ValueError("a and l must be nonnegative")
    return 2 * a * k + k - 1, k * (2 * a + 2 * ell + 3)


class ColoringError(RuntimeError):
    """Internal inconsistency in the recursion (a bug, not bad input)."""


@dataclass
class Frame:
    adj: list                 # ambient graph: vertex -> set of neighbours
    tree: frozenset           # tree nodes of this frame
    root: int
    H: frozenset
    psi: dict
    k: int
    top: bool = True          # ambient is the input graph (not an auxiliary G2)

    @property
    def measure(self):
        return (self.k, len(self.H), len(self.tree))


@dataclass
class ColoringTrace:
    frames: int = 0
    aux_frames: int = 0
    narrowness_violations: int = 0
    regions: list = field(default_factory=list)  # V' and V3 of every top-level frame


def _distances(adj, sources, within=None, cutoff=None):
    """Hop distances from ``sources``; traversal confined to ``within`` if given."""
    dist = {s: 0 for s in sources if within is None or s in within}
    queue = deque(sorted(dist))
    while queue:
        u = queue.popleft()
        du = dist[u]
        if cutoff is not None and du >= cutoff:
            continue
        for v in sorted(adj[u]):
            if v in dist or (within is not None and v not in within):
                continue
            dist[v] = du + 1
            queue.append(v)
    return dist


def _tree_components(td, nodes):
    """Connected pieces of the forest induced on ``nodes``, by smallest node."""
    nodes = set(nodes)
    seen, comps = set(), []
    for s in sorted(nodes):
        if s in seen:
            continue
        comp, stack = [s], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in td.neighbors(x):
                if y in nodes and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    return comps


def _bag_union(bags, nodes, H):
    out = set()
    for x in nodes:
        out.update(bags[x])
    return frozenset(out & H)


def _extend(frame, td, bags, trace):
    trace.frames += 1
    if not frame.top:
        trace.aux_frames += 1
    adj, T, r, H, psi, k = frame.adj, frame.tree, frame.root, frame.H, frame.psi, frame.k
    if not H:
        return {}
    here = bags[r] & H
    if not here:
        if psi:
            raise ColoringError("precolored vertices in a frame whose root bag misses H")
        coloring = {}
        for comp in _tree_components(td, T - {r}):
            sub_H = _bag_union(bags, comp, H)
            if not sub_H:
                continue
            child = Frame(adj, comp, min(comp), sub_H, {}, k, frame.top)
            if not child.measure < frame.measure:
                raise ColoringError("recursion measure did not decrease")
            coloring.update((yield child))
        return coloring

    ball = _distances(adj, here, within=H, cutoff=2)
    Z = frozenset(ball)
    if not set(psi) <= Z:
        raise ColoringError("precolored vertices lie outside the radius-2 ball of the root bag")
    if k <= 0:
        # H is nonempty, so no 0-dominated decomposition exists: the narrowness
        # hypothesis failed; color and report instead of recursing
        trace.narrowness_violations += 1
        return {v: psi.get(v, 1) for v in H}

    S = frozenset(x for x in T if not bags[x].isdisjoint(Z))
    V1_region = _bag_union(bags, S, H)                      # V'
    near = _distances(adj, Z, cutoff=2)                     # distance in the ambient graph
    V1 = frozenset(v for v in V1_region if v in near)
    V2 = V1_region - V1
    coloring = {v: psi.get(v, 1) for v in V1}

    if V2:
        g2_vertices = set()
        for x in S:
            g2_vertices.update(bags[x])
        adj2 = [set() for _ in adj]
        for v in g2_vertices:
            adj2[v] = set(adj[v]) & g2_vertices
        limit = 5 * k + 1
        reach = {u: _distances(adj, [u], cutoff=limit) for u in sorted(V2)}
        for x in sorted(S):
            members = sorted(bags[x] & V2)
            for a, u in enumerate(members):
                for v in members[a + 1:]:
                    if v in reach[u]:
                        adj2[u].add(v)
                        adj2[v].add(u)
        child = Frame(adj2, S, r, V2, {}, k - 1, top=False)
        if not child.measure < frame.measure:
            raise ColoringError("recursion measure did not decrease")
        coloring.update((yield child))

    shell = _distances(adj, V1_region, within=H, cutoff=2)
    V3 = frozenset(v for v, d in shell.items() if d == 1)
    V4 = frozenset(v for v, d in shell.items() if d == 2)
    for v in V3:
        coloring[v] = 1
    colored_region = V1_region | V3
    if frame.top:
        trace.regions.append(colored_region)
    result = dict(coloring)
    for comp in _tree_components(td, T - S):
        attach = [x for x in comp if any(y in S for y in td.neighbors(x))]
        if len(attach) != 1:
            raise ColoringError(f"subtree attaches to the region at {len(attach)} nodes")
        sub_H = _bag_union(bags, comp, H)
        if not sub_H:
            continue
        sub_psi = {v: coloring[v] for v in sub_H & colored_region}
        sub_psi.update((v, 2) for v in sub_H & V4)
        child = Frame(adj, comp, attach[0], sub_H, sub_psi, k, frame.top)
        if not child.measure < frame.measure:
            raise ColoringError("recursion measure did not decrease")
        sub = yield child
        for v, c in sub.items():
            if result.setdefault(v, c) != c:
                raise ColoringError(f"child frame recolored vertex {v}")
    missing = H - result.keys()
    if missing:
        raise ColoringError(f"{len(missing)} vertices left uncolored")
    return result


def _run(frame, td, bags, trace):
    stack = [_extend(frame, td, bags, trace)]
    value = None
    while stack:
        try:
            child = stack[-1].send(value)
        except StopIteration as done:
            value = done.value
            stack.pop()
            continue
        stack.append(_extend(child, td, bags, trace))
        value = None
    return value


def extend_two_coloring(frame, td, trace=None):
    """Extend ``frame.psi`` to a {1, 2}-coloring of ``frame.H``."""
    trace = ColoringTrace() if trace is None else trace
    bags = [frozenset(n.bag) for n in td.nodes]
    return _run(frame, td, bags, trace)


def two_color(G, td, k, trace=None):
    """2-coloring of ``G`` whose G-diameter is at most ``w_bound(k)``.

    ``td`` must be a tree decomposition of ``G`` in which every bag has a
    dominating set of size at most ``k``.
    """
    adj = [set(a) for a in G.adj]
    frame = Frame(adj, frozenset(range(len(td.nodes))), td.root,
                  frozenset(range(G.n)), {}, k)
    return extend_two_coloring(frame, td, trace)


def verify_weak_diameter(G, coloring, bound, on=None):
    """Measured G-diameter of ``coloring`` against ``bound``."""
    report = Report("weak-diameter")
    measured, worst = coloring_diameter(G, coloring, on, witness=True)
    if measured > bound:
        report.fail("diameter", measured=measured, bound=bound, component=worst)
    report.measured = measured
    return report
