import itertools

import numpy as np
import pytest

from weakdiam.decomp import (TDNode, TreeDecomposition, bag_domination, build_tree_decomposition,
                             format_decomposition, verify_catch_bounds, verify_domination,
                             verify_tree_decomposition)
from weakdiam.generate import generate
from weakdiam.graphs import Graph, intersection_graph
from weakdiam.metric import set_diameter
from weakdiam.spacefill import ExactCountRefused, SpacefillQuery, spacefill_count
from weakdiam.system import ObjectSystem
from weakdiam.web import build_web

from conftest import line, nx_decomposition_ok, pipeline_parts


def path_decomposition(n):
    """Path graph with bags = its edges, on a path of tree nodes."""
    nodes = [TDNode(i, None, frozenset(), i - 1 if i else None, [i + 1] if i < n - 2 else [],
                    [i, i + 1]) for i in range(n - 1)]
    return TreeDecomposition(nodes)


def test_single_object():
    sp = line(range(10))
    web = build_web(sp, 0, 1)
    td = build_tree_decomposition(sp, [np.array([2, 3])], web, 0)
    assert len(td.nodes) == 2
    assert td.nodes[0].element is None and td.nodes[0].bag == []
    assert td.nodes[1].bag == [0] and td.nodes[1].parent == 0


def test_disjoint_objects_are_sibling_leaves():
    sp = line(range(40))
    web = build_web(sp, 0, 1)
    td = build_tree_decomposition(sp, [np.array([0, 1]), np.array([30, 31])], web, 0)
    leaves = [n for n in td.nodes if n.id != 0]
    assert len(leaves) == 2 and all(n.parent == 0 and not n.children for n in leaves)
    assert sorted(n.bag for n in leaves) == [[0], [1]]


def test_path_decomposition_valid():
    G = Graph.from_edges(6, [(i, i + 1) for i in range(5)])
    td = path_decomposition(6)
    assert verify_tree_decomposition(G, td).ok and nx_decomposition_ok(G, td)


def test_missing_edge_reported():
    G = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    td = path_decomposition(4)
    rep = verify_tree_decomposition(G, td)
    assert rep.kinds() == ["uncovered-edge"]
    assert rep.first("uncovered-edge").witness["edge"] == [0, 3]


def test_disconnected_vertex_reported():
    G = Graph.from_edges(3, [(0, 1), (1, 2)])
    td = path_decomposition(3)
    td.nodes[1].bag = [0, 1, 2]
    td.nodes[0].bag = [0]
    td.nodes[1].bag = [1, 2]
    td.nodes.append(TDNode(2, None, frozenset(), 1, [], [0]))
    td.nodes[1].children = [2]
    rep = verify_tree_decomposition(G, td)
    assert "disconnected" in rep.kinds() and not nx_decomposition_ok(G, td)


def test_bag_domination_examples():
    clique = Graph.from_edges(4, itertools.combinations(range(4), 2))
    td = TreeDecomposition([TDNode(0, None, frozenset(), None, [1], [0, 1, 2, 3]),
                            TDNode(1, None, frozenset(), 0, [], [2])])
    k, D = bag_domination(td, clique)
    assert D == [[0], [2]] and k == 1
    assert verify_domination(td, clique).ok


def small_instances():
    for seed in range(4):
        yield generate("disks", n=2, points=500, objects=50, radius=(1.0, 2.5), seed=seed)
        yield generate("disks", n=1, points=200, objects=60, radius=(0.5, 4.0), seed=seed)


@pytest.mark.parametrize("r", [1, 3])
def test_pipeline_decompositions(r):
    for inst in small_instances():
        _, cert, parts = pipeline_parts(inst, r)
        for G, td, members in parts:
            assert verify_tree_decomposition(G, td).ok
            assert nx_decomposition_ok(G, td)
            assert verify_domination(td, G).ok
            for node, D in zip(td.nodes, td.dominators):
                bag = set(node.bag)
                assert set(D) <= bag
                assert all(v in D or any(G.has_edge(v, d) for d in D) for v in bag)
                assert not any(G.has_edge(a, b) for a, b in itertools.combinations(D, 2))


def test_bag_structure_and_catch_bound():
    for inst in small_instances():
        _, cert, parts = pipeline_parts(inst, 3)
        unions = cert["_debug"]["unions"]
        C = cert["C"]
        for G, td, members in parts:
            diam = unions.diameters[members]
            assert verify_catch_bounds(inst.space, td, diam, C).ok
            for j, v in enumerate(members):
                S = set(unions[v].tolist())
                holding = [n.id for n in td.nodes if j in n.bag]
                assert holding and td.top[j] in holding
                # everything holding S hangs below W_S, and W_S is the deepest node containing S
                for x in holding:
                    y = x
                    while y != td.top[j]:
                        y = td.nodes[y].parent
                        assert y is not None
                assert S <= td.nodes[td.top[j]].points
                assert not any(S <= td.nodes[c].points for c in td.nodes[td.top[j]].children)
                for n in td.nodes:
                    if j in n.bag:
                        d = set_diameter(inst.space, np.array(sorted(n.points)))
                        assert d <= C * diam[j]
                # descendant-or-self of W_S coincides with subset of W_S
                top = td.nodes[td.top[j]].points
                below = set()
                stack = [td.top[j]]
                while stack:
                    x = stack.pop()
                    below.add(x)
                    stack.extend(td.nodes[x].children)
                assert below == {n.id for n in td.nodes if n.points <= top}


def test_k_within_spacefill_profile():
    checked = 0
    for inst in small_instances():
        _, cert, parts = pipeline_parts(inst, 1)
        unions = cert["_debug"]["unions"]
        for G, td, members in parts:
            sub = ObjectSystem(inst.space, [unions[v] for v in members])
            for node, D in zip(td.nodes, td.dominators):
                if not node.bag or node.element is None:
                    continue
                pts = np.array(sorted(node.points))
                dW = set_diameter(inst.space, pts)
                if dW == 0:
                    continue
                q = SpacefillQuery(int(pts[0]), dW, dW / cert["C"])
                try:
                    count = spacefill_count(sub, q)
                except ExactCountRefused:
                    continue
                assert len(D) <= count
                checked += 1
    assert checked > 20


def test_format_decomposition():
    td = path_decomposition(4)
    bag_domination(td, Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]))
    text = format_decomposition(td)
    assert text.splitlines() == ["node=0 parent=- bag=2 D=1", "  node=1 parent=0 bag=2 D=1",
                                 "    node=2 parent=1 bag=2 D=1"]
