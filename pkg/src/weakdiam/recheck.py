"""Independent re-verification of a finished coloring.

Rebuilds the intersection graph from a sparse incidence product, the graph
power from scipy's all-pairs BFS, and measures monochromatic diameters with
scipy's component and shortest-path routines. Nothing here goes through
the package's own BFS kernels or graph classes.
"""
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .report import Report


def incidence_adjacency(n_points, objects):
    rows = np.concatenate([np.full(len(o), i) for i, o in enumerate(objects)])
    cols = np.concatenate([np.asarray(o) for o in objects])
    inc = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(objects), n_points))
    share = (inc @ inc.T).toarray() > 0
    np.fill_diagonal(share, False)
    return share


def power_adjacency(adjacency, r):
    hops = shortest_path(csr_matrix(adjacency.astype(np.int8)), unweighted=True, directed=False)
    power = hops <= r
    np.fill_diagonal(power, False)
    return power


def monochromatic_diameter(power, colors):
    """Max distance in ``power`` inside any connected color class component."""
    colors = np.asarray(colors)
    hops = shortest_path(csr_matrix(power.astype(np.int8)), unweighted=True, directed=False)
    worst, witness = 0, []
    for c in np.unique(colors):
        idx = np.flatnonzero(colors == c)
        sub = power[np.ix_(idx, idx)]
        count, labels = connected_components(csr_matrix(sub.astype(np.int8)), directed=False)
        for comp in range(count):
            members = idx[labels == comp]
            if len(members) < 2:
                continue
            d = hops[np.ix_(members, members)].max()
            if d > worst:
                worst, witness = d, members.tolist()
    return (int(worst) if np.isfinite(worst) else worst), witness


def recheck(space, objects, r, colors, bound, color_limit):
    """Re-derive G^r and check the palette size and the diameter bound."""
    report = Report("independent-recheck")
    if len(objects) == 0:
        report.measured = 0
        return report
    if len(colors) != len(objects):
        report.fail("coloring-size", colors=len(colors), objects=len(objects))
        return report
    used = sorted(set(int(c) for c in colors))
    if len(used) > color_limit or used[0] < 1 or used[-1] > color_limit:
        report.fail("palette", used=used, limit=color_limit)
    base = incidence_adjacency(space.size, objects)
    power = power_adjacency(base, r)
    measured, witness = monochromatic_diameter(power, colors)
    report.measured = measured
    if measured > bound:
        report.fail("diameter", measured=measured, bound=bound, component=witness)
    return report
