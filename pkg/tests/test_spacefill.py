import itertools
import math

import networkx as nx
import numpy as np
import pytest

from weakdiam.generate import certify_roundness, generate
from weakdiam.graphs import graph_power, intersection_graph
from weakdiam.metric import L2, Space, ball, set_diameter
from weakdiam.spacefill import (GREEDY, ExactCountRefused, SpacefillQuery, doubling_estimate,
                                lemcons_check, round_spacefill_bound, roundness_check,
                                shallow_union_system, spacefill_count)
from weakdiam.system import ObjectSystem

from conftest import cloud, line


def test_query_validation():
    with pytest.raises(ValueError):
        SpacefillQuery(0, 0, 1)
    with pytest.raises(ValueError):
        SpacefillQuery(0, 1, -1)


def test_shallow_unions_examples(rng):
    sp = line(range(20))
    system = ObjectSystem(sp, [[0, 1], [1, 2], [2, 3], [10, 11], [11, 12]])
    assert [o.tolist() for o in shallow_union_system(system, 0)] == [o.tolist() for o in system]
    wide = shallow_union_system(system, 10)
    assert wide[0].tolist() == [0, 1, 2, 3] and wide[4].tolist() == [10, 11, 12]
    with pytest.raises(ValueError):
        shallow_union_system(system, -1)


def test_shallow_unions_give_power_graph(rng):
    for seed in range(5):
        inst = generate("disks", n=2, points=400, objects=60, radius=(0.5, 1.5), seed=seed)
        G = intersection_graph(inst.space, inst.system)
        nxG = nx.Graph(G.edges())
        nxG.add_nodes_from(range(G.n))
        dist = dict(nx.all_pairs_shortest_path_length(nxG))
        for t in (1, 2):
            U = shallow_union_system(inst.system, t)
            Gr = intersection_graph(inst.space, U)
            assert Gr == graph_power(G, 2 * t + 1)
            for u, v in itertools.combinations(range(G.n), 2):
                assert Gr.has_edge(u, v) == (v in dist[u] and dist[u][v] <= 2 * t + 1)
            for a, b in zip(inst.system, U):
                assert set(a.tolist()) <= set(b.tolist())
            assert (U.diameters >= inst.system.diameters).all()


def test_count_examples():
    sp = line(range(10))
    one = ObjectSystem(sp, [[0, 1]])
    assert spacefill_count(one, SpacefillQuery(0, 1, 1)) == 1
    two = ObjectSystem(sp, [[0, 1], [3, 4]])
    assert spacefill_count(two, SpacefillQuery(2, 2, 1)) == 2
    assert spacefill_count(two, SpacefillQuery(2, 2, 1.5)) == 0  # diameters too small


def brute_max_disjoint(sets):
    best = 0
    for m in range(len(sets), 0, -1):
        for combo in itertools.combinations(sets, m):
            if all(not (a & b) for a, b in itertools.combinations(combo, 2)):
                return m
    return best


def test_exact_matches_subset_oracle(rng):
    sp = line(range(40))
    for _ in range(25):
        objs = [np.sort(rng.choice(40, size=int(rng.integers(1, 6)), replace=False)) for _ in range(14)]
        system = ObjectSystem(sp, objs)
        q = SpacefillQuery(int(rng.integers(40)), float(rng.uniform(1, 30)), float(rng.uniform(0.5, 10)))
        cand = [set(o.tolist()) for i, o in enumerate(system)
                if system.diameters[i] >= q.s and set(o.tolist()) & set(ball(sp, q.x, q.r).tolist())]
        exact = spacefill_count(system, q)
        assert exact == brute_max_disjoint(cand)
        assert spacefill_count(system, q, GREEDY) <= exact


def test_exact_refused_and_monotone(rng):
    inst = generate("disks", n=2, points=300, objects=60, radius=(0.5, 1.5), seed=3)
    with pytest.raises(ExactCountRefused):
        spacefill_count(inst.system, SpacefillQuery(0, 100, 0.01), limit=25)
    for _ in range(20):
        x = int(rng.integers(300))
        r1, r2 = sorted(rng.uniform(0.5, 4, size=2))
        s1, s2 = sorted(rng.uniform(0.5, 2.5, size=2))
        try:
            assert spacefill_count(inst.system, SpacefillQuery(x, r1, s2)) <= \
                spacefill_count(inst.system, SpacefillQuery(x, r2, s2)) <= \
                spacefill_count(inst.system, SpacefillQuery(x, r2, s1))
        except ExactCountRefused:
            pass


def queries_for(system, rng, count, limit=25, tries=400):
    out = []
    N = system.space.size
    for _ in range(tries):
        if len(out) == count:
            break
        q = SpacefillQuery(int(rng.integers(N)), float(rng.uniform(0.5, 6)), float(rng.uniform(0.5, 4)))
        try:
            spacefill_count(system, SpacefillQuery(q.x, q.r + q.s, q.s / 4), limit=limit)
        except ExactCountRefused:
            continue
        out.append(q)
    return out


def test_lemcons_t0_and_random(rng):
    inst = generate("disks", n=2, points=300, objects=30, radius=(0.5, 1.5), seed=1)
    qs = queries_for(inst.system, rng, 10)
    assert lemcons_check(inst.system, 0, qs).ok
    assert lemcons_check(inst.system, 1, qs).ok


def test_lemcons_clustered(rng):
    # three tight clusters of many small overlapping objects
    pts = np.concatenate([rng.normal(c, 0.4, size=(60, 2)) for c in ((0, 0), (6, 0), (0, 6))])
    sp = Space(L2, points=pts)
    objs = [np.flatnonzero(np.linalg.norm(pts - pts[i], axis=1) <= 0.5) for i in range(0, 180, 9)]
    system = ObjectSystem(sp, objs)
    qs = queries_for(system, rng, 15)
    assert len(qs) >= 10
    for t in (1, 2):
        rep = lemcons_check(system, t, qs)
        assert rep.ok and len(rep.rows) == len(qs)


def test_roundness_examples():
    sp = line(range(21))
    assert roundness_check(sp, np.arange(21), 1.0).ok
    gap = [0, 1, 2, 3, 17, 18, 19, 20]
    rep = roundness_check(sp, gap, 0.25)
    assert rep.kinds() == ["not-round"]
    with pytest.raises(ValueError):
        roundness_check(sp, gap, 0)
    with pytest.raises(ValueError):
        roundness_check(sp, [], 0.5)


def brute_round(space, S, eta):
    """Check the definition at every critical radius with direct ball containment."""
    S = sorted(S)
    diam = set_diameter(space, S)
    Sset = set(S)
    D = space.distance_block(np.arange(space.size))
    crit = set()
    for v in S:
        crit.update(float(d) for d in D[v] if 0 < d <= diam)
    for vp in S:
        crit.update(float(d) / eta for d in D[vp] if 0 < d / eta <= diam)
    crit.add(diam)
    # membership of both balls only changes at critical radii; the half-open
    # pieces between them behave like their left end point's right limit
    points = sorted(crit)
    probes = points + [(a + b) / 2 for a, b in zip(points, points[1:])] + [points[0] / 2]
    for v in S:
        for r in probes:
            if r > diam:
                continue
            target = Sset & set(np.flatnonzero(D[v] <= r).tolist())
            if not any(set(np.flatnonzero(D[vp] <= eta * r).tolist()) <= target for vp in S):
                return False
    return True


def test_roundness_matches_definition(rng):
    for _ in range(25):
        sp = line(np.sort(rng.choice(60, size=25, replace=False)).astype(float))
        S = np.sort(rng.choice(25, size=int(rng.integers(2, 12)), replace=False))
        for eta in (1.0, 0.5, 0.25):
            assert roundness_check(sp, S, eta).ok == brute_round(sp, S, eta)


def test_generated_disks_are_round():
    inst = generate("disks", n=2, points=400, objects=15, radius=(2.5, 2.5), cloud="grid", seed=0)
    eta = certify_roundness(inst)
    assert eta is not None and eta >= 0.25
    assert all(roundness_check(inst.space, o, eta).ok for o in inst.system)


def test_round_bound_examples():
    assert round_spacefill_bound(2, 1, 1) == 2
    assert round_spacefill_bound(3, 0.5, 3) == 27
    assert round_spacefill_bound(5, 1, 0.5) == 5  # ceil(log2 1.5) = 1
    with pytest.raises(ValueError):
        round_spacefill_bound(2, 0, 1)


def exact_doubling(space):
    """Exact doubling constant by minimum set cover over all balls (tiny spaces)."""
    N = space.size
    D = space.distance_block(np.arange(N))
    best = 1
    for x in range(N):
        for r in np.unique(D[x]):
            if r <= 0:
                continue
            members = np.flatnonzero(D[x] <= r)
            covers = [frozenset(members[D[c][members] <= r / 2].tolist()) for c in range(N)]
            need = set(members.tolist())
            for m in range(1, len(members) + 1):
                if any(set().union(*combo) >= need for combo in itertools.combinations(covers, m)):
                    best = max(best, m)
                    break
    return best


def test_doubling_estimate(rng):
    assert doubling_estimate(line([0.0])) == 1
    assert doubling_estimate(line(range(30))) <= 4
    for _ in range(5):
        sp = cloud(rng, 9, 2)
        assert doubling_estimate(sp) >= exact_doubling(sp)
    sp = cloud(rng, 40, 2)
    assert doubling_estimate(sp, samples=50, seed=1) <= doubling_estimate(sp)
