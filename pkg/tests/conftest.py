import numpy as np
import pytest

from weakdiam.metric import L2, Space


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def cloud(rng, n_points, dim, extent=10.0, metric=L2):
    return Space(metric, points=rng.uniform(0, extent, size=(n_points, dim)))


def line(values):
    return Space(L2, points=np.asarray(values, dtype=float).reshape(-1, 1))


def pipeline_parts(inst, r, **kw):
    """Run the pipeline keeping intermediates; yields (G_part, td, members, debug)."""
    from weakdiam.pipeline import weak_diameter_coloring

    colors, cert = weak_diameter_coloring(inst, r, keep=True, **kw)
    dbg = cert["_debug"]
    parts = [(dbg["Gr"].induced(p["members"]), p["td"], p["members"]) for p in dbg["parts"]]
    return colors, cert, parts


def nx_decomposition_ok(G, td):
    """Independent check of both tree-decomposition axioms with networkx."""
    import networkx as nx

    T = nx.Graph()
    T.add_nodes_from(range(len(td.nodes)))
    T.add_edges_from((n.id, n.parent) for n in td.nodes if n.parent is not None)
    if not nx.is_tree(T):
        return False
    bags = [set(n.bag) for n in td.nodes]
    for v in range(G.n):
        holding = [x for x in T if v in bags[x]]
        if not holding or not nx.is_connected(T.subgraph(holding)):
            return False
    return all(any(u in b and v in b for b in bags) for u, v in G.edges())
