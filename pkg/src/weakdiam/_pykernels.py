"""Pure-Python/numpy versions of the kernels in ``_ckernels.pyx``."""
from collections import deque

import numpy as np


def bfs(indptr, indices, sources, cutoff=-1, allowed=None):
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = deque()
    for s in np.asarray(sources, dtype=np.int64):
        if s < 0 or s >= n:
            raise IndexError(f"source {s} out of range")
        if allowed is not None and not allowed[s]:
            continue
        if dist[s] == -1:
            dist[s] = 0
            queue.append(int(s))
    ptr = indptr.tolist()
    idx = indices.tolist()
    d = dist.tolist()
    while queue:
        u = queue.popleft()
        du = d[u]
        if 0 <= cutoff <= du:
            continue
        for j in range(ptr[u], ptr[u + 1]):
            v = idx[j]
            if d[v] != -1 or (allowed is not None and not allowed[v]):
                continue
            d[v] = du + 1
            queue.append(v)
    return np.asarray(d, dtype=np.int64)


def max_hops_among(indptr, indices, members):
    members = np.asarray(members, dtype=np.int64)
    best = 0
    for s in members:
        dist = bfs(indptr, indices, [s])
        row = dist[members]
        if (row < 0).any():
            return -1
        best = max(best, int(row.max()))
    return best


def power_csr(indptr, indices, r):
    n = len(indptr) - 1
    out_ptr = np.zeros(n + 1, dtype=np.int64)
    rows = []
    for s in range(n):
        dist = bfs(indptr, indices, [s], cutoff=r)
        row = np.flatnonzero(dist > 0)
        rows.append(row)
        out_ptr[s + 1] = out_ptr[s] + len(row)
    out_idx = np.concatenate(rows).astype(np.int64) if rows else np.zeros(0, dtype=np.int64)
    return out_ptr, out_idx


def set_diameter(points, idx, kind):
    pts = np.asarray(points, dtype=np.float64)[np.asarray(idx, dtype=np.int64)]
    m = len(pts)
    best = 0.0
    # row blocks keep memory at O(block * m)
    block = max(1, 2_000_000 // max(m, 1))
    for lo in range(0, m, block):
        diff = np.abs(pts[lo:lo + block, None, :] - pts[None, :, :])
        if kind == 0:
            d = np.sqrt((diff * diff).sum(axis=2))
        else:
            d = diff.max(axis=2)
        if d.size:
            best = max(best, float(d.max()))
    return best
