"""Compiled vs pure kernels on random graphs and point clouds.

    python3 benchmarks/bench_kernels.py [--nodes 3000] [--repeat 3]
"""
import argparse
import time

import numpy as np

from weakdiam import _pykernels

try:
    from weakdiam import _ckernels
except ImportError:
    _ckernels = None


def random_csr(n, degree, rng):
    m = n * degree // 2
    u = rng.integers(0, n, size=m)
    v = rng.integers(0, n, size=m)
    keep = u != v
    u, v = np.concatenate([u[keep], v[keep]]), np.concatenate([v[keep], u[keep]])
    order = np.lexsort((v, u))
    u, v = u[order], v[order]
    pairs = np.unique(np.stack([u, v], axis=1), axis=0)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, pairs[:, 0] + 1, 1)
    return np.cumsum(indptr).astype(np.int64), pairs[:, 1].astype(np.int64)


def same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=3000)
    ap.add_argument("--degree", type=int, default=6)
    ap.add_argument("--points", type=int, default=3000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    indptr, indices = random_csr(args.nodes, args.degree, rng)
    members = rng.choice(args.nodes, size=min(200, args.nodes), replace=False)
    pts = rng.uniform(0, 50, size=(args.points, 2))
    idx = np.arange(args.points, dtype=np.int64)

    cases = [
        ("bfs (all sources)", lambda k: k.bfs(indptr, indices, np.arange(0, args.nodes, 7))),
        ("power_csr r=3", lambda k: k.power_csr(indptr, indices, 3)),
        ("max_hops_among 200", lambda k: k.max_hops_among(indptr, indices, members)),
        ("set_diameter L2", lambda k: k.set_diameter(pts, idx, 0)),
        ("set_diameter Linf", lambda k: k.set_diameter(pts, idx, 1)),
    ]
    if _ckernels is None:
        print("compiled kernels not built; timing the pure versions only")
    print(f"{'kernel':<22}{'pure s':>10}{'compiled s':>12}{'speedup':>9}")
    for name, call in cases:
        tp, out_p = best_of(lambda: call(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:<22}{tp:>10.4f}{'-':>12}{'-':>9}")
            continue
        tc, out_c = best_of(lambda: call(_ckernels), args.repeat)
        flag = "" if same(out_p, out_c) else "  MISMATCH"
        print(f"{name:<22}{tp:>10.4f}{tc:>12.4f}{tp / tc:>8.1f}x{flag}")


if __name__ == "__main__":
    main()
