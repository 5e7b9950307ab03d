"""Dominated tree decompositions from a laminar family of catching elements."""
from dataclasses import dataclass, field

import numpy as np

from .graphs import greedy_max_independent_set
from .metric import set_diameter
from .report import Report
from .web import catch_in_family


@dataclass(eq=False)
class TDNode:
    id: int
    element: object         # web element id, or None for the root (whole space)
    points: frozenset
    parent: object = None   # node id, None at the root
    children: list = field(default_factory=list)
    bag: list = field(default_factory=list)


@dataclass(eq=False)
class TreeDecomposition:
    nodes: list
    root: int = 0
    top: list = None        # object -> deepest node containing it (W_S)
    chosen: list = None     # object -> node of its catching element (W'_S)
    dominators: list = None
    k: int = None

    def neighbors(self, x):
        node = self.nodes[x]
        out = list(node.children)
        if node.parent is not None:
            out.append(node.parent)
        return out

    def bag_sets(self):
        return [frozenset(n.bag) for n in self.nodes]


class DecompositionError(RuntimeError):
    pass


def build_tree_decomposition(space, objects, web, family, C=None, elements=None):
    """Tree of catching elements with bags ``{S : W meets S, W under W_S}``.

    ``objects`` are point-index arrays (vertex ``j`` of the part is
    ``objects[j]``). ``elements`` may carry precomputed catching element ids.
    """
    objects = [np.asarray(o, dtype=np.int64) for o in objects]
    if elements is None:
        elements = []
        for j, obj in enumerate(objects):
            W = catch_in_family(web, family, obj, C)
            if W is None:
                raise DecompositionError(f"object {j} is not caught by family {family}")
            elements.append(W.id)
    everything = frozenset(range(space.size))

    # distinct point sets, largest first; ROOT is the whole space
    key_of = {everything: None}
    for eid in elements:
        pts = web.trimmed_set(eid)
        if pts not in key_of:
            key_of[pts] = eid
    ordered = sorted(key_of.items(), key=lambda kv: (-len(kv[0]), min(kv[0]),
                                                    -1 if kv[1] is None else kv[1]))
    parent_of = {}
    through = {}  # point -> ranks of processed sets holding it, largest first
    for rank, (pts, _) in enumerate(ordered):
        if rank == 0:
            continue
        parent = through.get(min(pts), [0])[-1]
        if not pts < ordered[parent][0]:
            raise DecompositionError("node sets are not laminar")
        parent_of[rank] = parent
        for q in pts:
            through.setdefault(q, [0]).append(rank)
    kids = {r: [] for r in range(len(ordered))}
    for child, parent in sorted(parent_of.items()):
        kids[parent].append(child)

    # breadth-first renumbering: node ids increase with depth
    order, head = [0], 0
    while head < len(order):
        order.extend(kids[order[head]])
        head += 1
    new_id = {old: new for new, old in enumerate(order)}
    nodes = [TDNode(new_id[old], ordered[old][1], ordered[old][0]) for old in order]
    for child, parent in parent_of.items():
        nodes[new_id[child]].parent = new_id[parent]
    for node in nodes:
        node.children = [new_id[c] for c in kids[order[node.id]]]
    node_of_set = {n.points: n.id for n in nodes}

    td = TreeDecomposition(nodes)
    td.chosen = [node_of_set[web.trimmed_set(eid)] for eid in elements]
    td.top = []
    for j, obj in enumerate(objects):
        S = frozenset(obj.tolist())
        first = int(obj[0])
        cur = 0
        while True:
            hits = [c for c in nodes[cur].children if first in nodes[c].points]
            if len(hits) > 1:
                raise DecompositionError(f"siblings {hits} overlap at point {first}")
            if not hits or not S <= nodes[hits[0]].points:
                break
            cur = hits[0]
        td.top.append(cur)
        # every descendant-or-self of W_S meeting S gets S in its bag
        stack = [cur]
        while stack:
            x = stack.pop()
            if not nodes[x].points.isdisjoint(S):
                nodes[x].bag.append(j)
            stack.extend(nodes[x].children)
    for node in nodes:
        node.bag.sort()
    return td


def bag_domination(td, G):
    """Greedy maximal independent set of every bag; ``k`` is the largest one."""
    D = [greedy_max_independent_set(G, node.bag) for node in td.nodes]
    td.dominators = D
    td.k = max((len(d) for d in D), default=0)
    return td.k, D


def verify_domination(td, G):
    report = Report("bag-domination")
    for node, D in zip(td.nodes, td.dominators or []):
        bag = set(node.bag)
        Dset = set(D)
        if not Dset <= bag:
            report.fail("dominator-outside-bag", node=node.id)
        for a in D:
            for b in D:
                if a < b and G.has_edge(a, b):
                    report.fail("dependent", node=node.id, pair=[a, b])
        for v in node.bag:
            if v not in Dset and not any(G.has_edge(v, d) for d in D):
                report.fail("undominated", node=node.id, vertex=v)
                break
    if td.dominators is not None and td.k != max((len(d) for d in td.dominators), default=0):
        report.fail("k-mismatch", k=td.k)
    return report


def verify_tree_decomposition(G, td):
    """Tree shape, edge coverage and connectivity of every vertex's node set."""
    report = Report("tree-decomposition")
    nodes = td.nodes
    roots = [n.id for n in nodes if n.parent is None]
    if roots != [td.root]:
        report.fail("root", roots=roots)
        return report
    for n in nodes:
        if n.parent is not None and not 0 <= n.parent < len(nodes):
            report.fail("parent", node=n.id, parent=n.parent)
            return report
        if n.parent is not None and n.id not in nodes[n.parent].children:
            report.fail("child-link", node=n.id, parent=n.parent)
    seen, stack = {td.root}, [td.root]
    while stack:
        for c in nodes[stack.pop()].children:
            if c in seen:
                report.fail("cycle", node=c)
                return report
            seen.add(c)
            stack.append(c)
    if len(seen) != len(nodes):
        report.fail("unreachable-node", node=min(set(range(len(nodes))) - seen))
        return report

    holding = [set() for _ in range(G.n)]
    for n in nodes:
        for v in n.bag:
            if not 0 <= v < G.n:
                report.fail("bad-vertex", node=n.id, vertex=v)
                return report
            holding[v].add(n.id)
    for v in range(G.n):
        if not holding[v]:
            report.fail("uncovered-vertex", vertex=v)
            continue
        tops = [x for x in holding[v] if nodes[x].parent not in holding[v]]
        if len(tops) != 1:
            report.fail("disconnected", vertex=v, pieces=len(tops))
    for u, v in G.edges():
        if holding[u].isdisjoint(holding[v]):
            report.fail("uncovered-edge", edge=[u, v])
            break
    return report


def verify_catch_bounds(space, td, diameters, C):
    """diam(W) <= C diam(S) for every node W and object S in its bag."""
    report = Report("catch-bounds")
    for n in td.nodes:
        if not n.bag:
            continue
        d = set_diameter(space, np.fromiter(sorted(n.points), dtype=np.int64))
        for j in n.bag:
            if d > C * diameters[j]:
                report.fail("catch-bound", node=n.id, object=j, diameter=d,
                            limit=C * diameters[j])
                break
    return report


def format_decomposition(td):
    """Indented text: one node per line with id, parent, bag and dominator sizes."""
    lines = []
    stack = [(td.root, 0)]
    while stack:
        x, depth = stack.pop()
        n = td.nodes[x]
        dsize = len(td.dominators[x]) if td.dominators is not None else "-"
        parent = "-" if n.parent is None else n.parent
        lines.append(f"{'  ' * depth}node={x} parent={parent} bag={len(n.bag)} D={dsize}")
        stack.extend((c, depth + 1) for c in reversed(n.children))
    return "\n".join(lines) + "\n"
