import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weakdiam.metric import L2, LINF, MATRIX, Space, ball, distance, set_diameter, verify_metric
from weakdiam.system import ObjectSystem

from conftest import cloud, line


def test_distance_on_line():
    sp = line([0, 1, 2, 3])
    assert distance(sp, 0, 3) == 3.0
    assert all(distance(sp, p, p) == 0 for p in range(4))


def test_distance_matches_straight_line_oracle(rng):
    sp = cloud(rng, 40, 2)
    for p in range(40):
        for q in range(40):
            a, b = sp.points[p], sp.points[q]
            assert distance(sp, p, q) == pytest.approx(math.sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2), abs=1e-12)


def test_distance_index_errors():
    with pytest.raises(IndexError):
        distance(line([0, 1]), 0, 2)


def test_ball_examples():
    sp = line([0, 1, 2, 3])
    assert ball(sp, 1, 1.0).tolist() == [0, 1, 2]
    assert ball(sp, 2, 0).tolist() == [2]
    with pytest.raises(ValueError):
        ball(sp, 0, -1)


def test_ball_matches_scan(rng):
    sp = cloud(rng, 200, 3, metric=LINF)
    for _ in range(30):
        x, r = int(rng.integers(200)), float(rng.uniform(0, 6))
        want = [y for y in range(200) if np.abs(sp.points[x] - sp.points[y]).max() <= r]
        assert ball(sp, x, r).tolist() == want


def test_set_diameter(rng):
    sp = line([0, 2.5, 7])
    assert set_diameter(sp, [1]) == 0
    assert set_diameter(sp, [0, 1]) == 2.5
    with pytest.raises(ValueError):
        set_diameter(sp, [])
    sp = cloud(rng, 120, 2)
    for _ in range(20):
        S = rng.choice(120, size=int(rng.integers(1, 30)), replace=False)
        best = max(np.linalg.norm(sp.points[a] - sp.points[b]) for a in S for b in S)
        assert set_diameter(sp, S) == pytest.approx(best, abs=1e-12)


def test_verify_metric():
    ok = Space(MATRIX, matrix=[[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert verify_metric(ok).ok
    bad = Space(MATRIX, matrix=[[0, 5, 1], [5, 0, 1], [1, 1, 0]])
    rep = verify_metric(bad)
    assert rep.kinds() == ["triangle"]
    assert sorted(rep.first("triangle").witness["triple"]) == [0, 1, 2]
    asym = Space(MATRIX, matrix=[[0, 1], [2, 0]])
    assert "asymmetry" in verify_metric(asym).kinds()
    assert verify_metric(Space(L2, points=[[0.0, 1.0], [3.0, 4.0]])).ok


def test_matrix_space_has_dimension_zero():
    sp = Space(MATRIX, matrix=[[0, 2], [2, 0]])
    assert sp.dimension == 0 and sp.size == 2 and not sp.has_coordinates
    assert distance(sp, 0, 1) == 2


def test_object_system_validation():
    sp = line([0, 1, 2])
    with pytest.raises(ValueError, match="object 1 is empty"):
        ObjectSystem(sp, [[0], []])
    with pytest.raises(IndexError, match="object 0"):
        ObjectSystem(sp, [[3]])
    sys_ = ObjectSystem(sp, [[2, 0, 0]])
    assert sys_[0].tolist() == [0, 2]


coords = st.lists(st.tuples(st.floats(-50, 50), st.floats(-50, 50)), min_size=2, max_size=25)


@settings(max_examples=40, deadline=None)
@given(coords, st.floats(0, 30), st.floats(0, 30))
def test_properties(pts, r1, r2):
    pts = np.array(pts)
    a, b = Space(L2, points=pts), Space(LINF, points=pts)
    n = len(pts)
    for p in range(n):
        for q in range(n):
            assert distance(a, p, q) == distance(a, q, p)
            assert distance(b, p, q) <= distance(a, p, q) + 1e-9
            assert distance(a, p, q) <= math.sqrt(2) * distance(b, p, q) + 1e-9
    lo, hi = min(r1, r2), max(r1, r2)
    assert set(ball(a, 0, lo).tolist()) <= set(ball(a, 0, hi).tolist())
    S, T = list(range(n // 2 + 1)), list(range(n // 2, n))
    assert set_diameter(a, S + T) >= max(set_diameter(a, S), set_diameter(a, T))
