"""Intersection graphs, graph powers, BFS metrics and coloring diameters.

Vertices are ``0..n-1``. Every scan runs in ascending vertex order so that
results never depend on set iteration order.
"""
import math
from collections import defaultdict

import numpy as np

from . import kernels

UNREACHABLE = math.inf


class Graph:
    """Undirected simple graph with sorted adjacency lists.

    ``labels`` maps local vertices back to ids of a parent graph (set by
    :meth:`induced`).
    """

    def __init__(self, n, adj=None, labels=None):
        self.n = n
        if adj is None:
            adj = [() for _ in range(n)]
        if len(adj) != n:
            raise ValueError("adjacency length does not match vertex count")
        sets = [frozenset(int(v) for v in nbrs) for nbrs in adj]
        for u, nbrs in enumerate(sets):
            if u in nbrs:
                raise ValueError(f"self-loop at vertex {u}")
            for v in nbrs:
                if u not in sets[v]:
                    raise ValueError(f"asymmetric adjacency {u}->{v}")
        self.adj = [tuple(sorted(s)) for s in sets]
        self.labels = tuple(labels) if labels is not None else None
        self._csr = None
        self._sets = sets

    @classmethod
    def from_edges(cls, n, edges):
        adj = [[] for _ in range(n)]
        for u, v in edges:
            if u == v:
                continue
            adj[u].append(v)
            adj[v].append(u)
        return cls(n, adj)

    @classmethod
    def from_csr(cls, indptr, indices, labels=None):
        n = len(indptr) - 1
        adj = [indices[indptr[u]:indptr[u + 1]].tolist() for u in range(n)]
        return cls(n, adj, labels)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()})"

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_count(self):
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u, v):
        if self._sets is None:
            self._sets = [frozenset(a) for a in self.adj]
        return v in self._sets[u]

    @property
    def csr(self):
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            indptr[1:] = np.cumsum([len(a) for a in self.adj])
            flat = [v for a in self.adj for v in a]
            self._csr = (indptr, np.asarray(flat, dtype=np.int64))
        return self._csr

    def induced(self, members):
        """Induced subgraph on ``members`` (relabelled ``0..len-1`` in order)."""
        members = [int(v) for v in members]
        local = {v: i for i, v in enumerate(members)}
        adj = [[local[w] for w in self.adj[v] if w in local] for v in members]
        base = self.labels
        labels = [base[v] for v in members] if base is not None else members
        return Graph(len(members), adj, labels)


def intersection_graph(space, system):
    """Vertices are objects; two are adjacent iff they share a point."""
    objects = list(system)
    for i, obj in enumerate(objects):
        if len(obj) == 0:
            raise ValueError(f"object {i} is empty")
    holders = defaultdict(list)
    for i, obj in enumerate(objects):
        for p in np.asarray(obj).tolist():
            holders[p].append(i)
    adj = [set() for _ in objects]
    for ids in holders.values():
        if len(ids) > 1:
            for a in ids:
                adj[a].update(ids)
    for i in range(len(objects)):
        adj[i].discard(i)
    return Graph(len(objects), adj)


def graph_power(G, r):
    """``u ~ v`` iff ``1 <= d_G(u, v) <= r``."""
    if r < 1:
        raise ValueError(f"graph power needs r >= 1, got {r}")
    if r == 1:
        return Graph(G.n, G.adj, G.labels)
    indptr, indices = kernels.power_csr(*G.csr, int(r))
    return Graph.from_csr(indptr, indices, G.labels)


def hop_distances(G, sources, cutoff=None, within=None):
    """Raw kernel BFS: int array, -1 for unreachable.

    ``within`` restricts the traversal to a vertex subset (distance inside
    the induced subgraph); ``cutoff`` stops expanding past that depth.
    """
    mask = None
    if within is not None:
        mask = np.zeros(G.n, dtype=np.uint8)
        mask[np.asarray(list(within), dtype=np.int64)] = 1
    cut = -1 if cutoff is None else int(cutoff)
    indptr, indices = G.csr
    return kernels.bfs(indptr, indices, np.asarray(list(sources), dtype=np.int64), cut, mask)


def bfs_distances(G, sources):
    """Hop distance to the nearest source; ``UNREACHABLE`` (inf) if none."""
    d = hop_distances(G, sources)
    out = d.astype(np.float64)
    out[d < 0] = UNREACHABLE
    return out


def greedy_max_independent_set(G, within=None):
    """Scan ``within`` ascending; keep each vertex not adjacent to a kept one."""
    vertices = range(G.n) if within is None else sorted(set(int(v) for v in within))
    chosen = []
    blocked = set()
    for v in vertices:
        if v in blocked:
            continue
        chosen.append(v)
        blocked.add(v)
        blocked.update(G.adj[v])
    return chosen


def monochromatic_components(G, coloring, on=None):
    """Connected components of each color class of ``G[on]`` (sorted lists)."""
    on = set(range(G.n)) if on is None else set(int(v) for v in on)
    for v in on:
        if v not in coloring:
            raise KeyError(f"vertex {v} is not colored")
    seen = set()
    comps = []
    for s in sorted(on):
        if s in seen:
            continue
        color = coloring[s]
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for w in G.adj[u]:
                if w in on and w not in seen and coloring[w] == color:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def component_g_diameter(G, comp):
    """Max hop distance in the whole of ``G`` between vertices of ``comp``."""
    if len(comp) < 2:
        return 0
    d = kernels.max_hops_among(*G.csr, np.asarray(comp, dtype=np.int64))
    return UNREACHABLE if d < 0 else int(d)


def coloring_diameter(G, coloring, on=None, witness=False):
    """G-diameter of ``coloring`` restricted to ``on``.

    Components are taken in ``G[on]`` but distances are measured in ``G``.
    With ``witness=True`` also return the worst component.
    """
    best, worst = 0, []
    for comp in monochromatic_components(G, coloring, on):
        d = component_g_diameter(G, comp)
        if d > best:
            best, worst = d, comp
    return (best, worst) if witness else best
