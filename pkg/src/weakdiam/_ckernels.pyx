# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled BFS and diameter kernels.

Graphs arrive in CSR form (``indptr``, ``indices``; int64). Hop distances
use -1 for "unreachable". ``_pykernels`` mirrors every function here.
"""
import numpy as np
from libc.math cimport sqrt, fabs

ctypedef long long i64


cdef i64 _bfs(const i64[:] indptr, const i64[:] indices, i64[:] dist,
              i64[:] queue, i64 head, i64 tail, i64 cutoff,
              const unsigned char[:] allowed, bint use_mask) noexcept nogil:
    cdef i64 u, v, j, du
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        if cutoff >= 0 and du >= cutoff:
            continue
        for j in range(indptr[u], indptr[u + 1]):
            v = indices[j]
            if dist[v] != -1:
                continue
            if use_mask and not allowed[v]:
                continue
            dist[v] = du + 1
            queue[tail] = v
            tail += 1
    return tail


def bfs(const i64[:] indptr, const i64[:] indices, sources, i64 cutoff=-1, allowed=None):
    cdef i64 n = indptr.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int64)
    cdef i64[:] dist = dist_arr
    cdef i64[:] queue = np.empty(max(n, 1), dtype=np.int64)
    cdef const unsigned char[:] mask
    cdef bint use_mask = allowed is not None
    if use_mask:
        mask = np.ascontiguousarray(allowed, dtype=np.uint8)
    else:
        mask = np.ones(1, dtype=np.uint8)
    cdef i64 tail = 0
    cdef i64 s
    for s in np.asarray(sources, dtype=np.int64):
        if s < 0 or s >= n:
            raise IndexError(f"source {s} out of range")
        if use_mask and not mask[s]:
            continue
        if dist[s] == -1:
            dist[s] = 0
            queue[tail] = s
            tail += 1
    with nogil:
        _bfs(indptr, indices, dist, queue, 0, tail, cutoff, mask, use_mask)
    return dist_arr


def max_hops_among(const i64[:] indptr, const i64[:] indices, members):
    """Largest hop distance in the full graph between two of ``members``.

    Returns -1 when some pair is disconnected.
    """
    cdef i64 n = indptr.shape[0] - 1
    cdef i64[:] mem = np.ascontiguousarray(members, dtype=np.int64)
    cdef i64 m = mem.shape[0]
    cdef i64[:] dist = np.full(n, -1, dtype=np.int64)
    cdef i64[:] queue = np.empty(max(n, 1), dtype=np.int64)
    cdef const unsigned char[:] mask = np.ones(1, dtype=np.uint8)
    cdef i64 a, b, s, best = 0, d
    with nogil:
        for a in range(m):
            if best == -1:
                break
            for b in range(n):
                dist[b] = -1
            s = mem[a]
            dist[s] = 0
            queue[0] = s
            _bfs(indptr, indices, dist, queue, 0, 1, -1, mask, False)
            for b in range(m):
                d = dist[mem[b]]
                if d == -1:
                    best = -1
                    break
                if d > best:
                    best = d
    return best


def power_csr(const i64[:] indptr, const i64[:] indices, i64 r):
    """CSR adjacency of the r-th graph power (no self loops, sorted rows)."""
    cdef i64 n = indptr.shape[0] - 1
    cdef i64[:] dist = np.full(n, -1, dtype=np.int64)
    cdef i64[:] queue = np.empty(max(n, 1), dtype=np.int64)
    cdef const unsigned char[:] mask = np.ones(1, dtype=np.uint8)
    out_ptr = np.zeros(n + 1, dtype=np.int64)
    rows = []
    cdef i64 s, j, tail
    for s in range(n):
        dist[s] = 0
        queue[0] = s
        with nogil:
            tail = _bfs(indptr, indices, dist, queue, 0, 1, r, mask, False)
        row = np.sort(np.asarray(queue[1:tail]).copy())
        for j in range(tail):
            dist[queue[j]] = -1
        rows.append(row)
        out_ptr[s + 1] = out_ptr[s] + row.shape[0]
    out_idx = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    return out_ptr, out_idx.astype(np.int64)


def set_diameter(const double[:, :] points, idx, int kind):
    """Max pairwise distance among ``points[idx]``; kind 0 = l2, 1 = linf."""
    cdef i64[:] ix = np.ascontiguousarray(idx, dtype=np.int64)
    cdef i64 m = ix.shape[0], a, b, c
    cdef i64 dim = points.shape[1]
    cdef double best = 0.0, acc, t
    with nogil:
        for a in range(m):
            for b in range(a + 1, m):
                acc = 0.0
                for c in range(dim):
                    t = fabs(points[ix[a], c] - points[ix[b], c])
                    if kind == 0:
                        acc += t * t
                    elif t > acc:
                        acc = t
                if kind == 0:
                    acc = sqrt(acc)
                if acc > best:
                    best = acc
    return best
