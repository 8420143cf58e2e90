"""Hot loops with two interchangeable backends.

The ``numba`` backend compiles explicit-stack DFS loops with ``@njit``.  The
``numpy`` backend grows all induced paths level by level on uint64 bitmask
arrays.  Pick one with the environment variable ``QPBRANCH_BACKEND``
(``numba`` or ``numpy``); the default is numba when it imports.

Kernels take a local adjacency array ``adj`` (int64, one bitmask per vertex)
over at most ``MAX_KERNEL_N`` vertices.  Callers relabel larger graphs or use
the plain-Python enumerators in :mod:`qpbranch.buckets`.
"""

from __future__ import annotations

import os

import numpy as np

MAX_KERNEL_N = 62

try:  # pragma: no cover - exercised implicitly by whichever backend is active
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def default_backend() -> str:
    env = os.environ.get("QPBRANCH_BACKEND", "").strip().lower()
    if env in ("numpy", "python"):
        return "numpy"
    if env == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("QPBRANCH_BACKEND=numba but numba is not importable")
        return "numba"
    return "numba" if HAVE_NUMBA else "numpy"


_backend = default_backend()


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    _backend = name


def local_adjacency(adj, vertices) -> np.ndarray:
    """Relabel ``vertices`` to 0..k-1 and return their induced adjacency."""
    index = {v: i for i, v in enumerate(vertices)}
    out = np.zeros(len(vertices), dtype=np.int64)
    for i, v in enumerate(vertices):
        m = 0
        for u in vertices:
            if (adj[v] >> u) & 1:
                m |= 1 << index[u]
        out[i] = m
    return out


# --- induced path hit counts ------------------------------------------------

@njit(cache=True)
def _path_counts_numba(adj, max_vertices):
    k = adj.shape[0]
    sizes = np.zeros((k, k), dtype=np.int64)
    hits = np.zeros((k, k, k), dtype=np.int64)
    closed = np.empty(k, dtype=np.int64)
    for v in range(k):
        closed[v] = adj[v] | (np.int64(1) << v)
    path = np.empty(max_vertices, dtype=np.int64)
    forb = np.empty(max_vertices, dtype=np.int64)
    cn = np.empty(max_vertices, dtype=np.int64)
    nxt = np.empty(max_vertices, dtype=np.int64)
    for s in range(k):
        path[0] = s
        forb[0] = np.int64(1) << s
        cn[0] = closed[s]
        nxt[0] = 0
        depth = 0
        while depth >= 0:
            last = path[depth]
            if depth + 1 >= max_vertices or nxt[depth] >= k:
                depth -= 1
                continue
            y = nxt[depth]
            nxt[depth] += 1
            if ((adj[last] >> y) & 1) == 0 or ((forb[depth] >> y) & 1) == 1:
                continue
            d1 = depth + 1
            path[d1] = y
            forb[d1] = forb[depth] | adj[last] | (np.int64(1) << y)
            cn[d1] = cn[depth] | closed[y]
            nxt[d1] = 0
            if s < y:
                sizes[s, y] += 1
                m = cn[d1]
                for x in range(k):
                    if (m >> x) & 1:
                        hits[x, s, y] += 1
            depth = d1
    return sizes, hits


def _path_counts_numpy(adj, max_vertices):
    k = adj.shape[0]
    sizes = np.zeros((k, k), dtype=np.int64)
    hits = np.zeros((k, k, k), dtype=np.int64)
    if k == 0:
        return sizes, hits
    one = np.int64(1)
    ar = np.arange(k, dtype=np.int64)
    closed = adj | (one << ar)
    start = ar.copy()
    last = ar.copy()
    forb = one << ar
    cn = closed.copy()
    for _ in range(1, max_vertices):
        nxt_start, nxt_last, nxt_forb, nxt_cn = [], [], [], []
        last_adj = adj[last]
        for y in range(k):
            ok = (((last_adj >> y) & 1) == 1) & (((forb >> y) & 1) == 0)
            if not ok.any():
                continue
            nxt_start.append(start[ok])
            nxt_last.append(np.full(int(ok.sum()), y, dtype=np.int64))
            nxt_forb.append(forb[ok] | last_adj[ok] | (one << y))
            nxt_cn.append(cn[ok] | closed[y])
        if not nxt_start:
            break
        start = np.concatenate(nxt_start)
        last = np.concatenate(nxt_last)
        forb = np.concatenate(nxt_forb)
        cn = np.concatenate(nxt_cn)
        rec = start < last
        if rec.any():
            s, e, c = start[rec], last[rec], cn[rec]
            flat = s * k + e
            sizes += np.bincount(flat, minlength=k * k).reshape(k, k)
            member = (c[:, None] >> ar[None, :]) & 1
            for x in range(k):
                sel = member[:, x] == 1
                if sel.any():
                    hits[x] += np.bincount(flat[sel], minlength=k * k).reshape(k, k)
    return sizes, hits


def path_counts(adj: np.ndarray, max_vertices: int, backend: str | None = None):
    """Count induced paths with 2..max_vertices vertices between every pair.

    Returns ``(sizes, hits)`` where ``sizes[u, v]`` (u < v) is the number of
    induced u-v paths and ``hits[x, u, v]`` the number of those meeting N[x].
    """
    adj = np.ascontiguousarray(adj, dtype=np.int64)
    if adj.shape[0] > MAX_KERNEL_N:
        raise ValueError("kernel graphs are limited to 62 vertices")
    backend = backend or _backend
    if backend == "numba":
        return _path_counts_numba(adj, max(max_vertices, 1))
    return _path_counts_numpy(adj, max(max_vertices, 1))


# --- longest induced path ---------------------------------------------------

@njit(cache=True)
def _longest_path_numba(adj, cap):
    k = adj.shape[0]
    best = 1 if k > 0 else 0
    path = np.empty(k + 1, dtype=np.int64)
    forb = np.empty(k + 1, dtype=np.int64)
    nxt = np.empty(k + 1, dtype=np.int64)
    for s in range(k):
        path[0] = s
        forb[0] = np.int64(1) << s
        nxt[0] = 0
        depth = 0
        while depth >= 0:
            if depth + 1 > best:
                best = depth + 1
                if best >= cap:
                    return best
            last = path[depth]
            if nxt[depth] >= k:
                depth -= 1
                continue
            y = nxt[depth]
            nxt[depth] += 1
            if ((adj[last] >> y) & 1) == 0 or ((forb[depth] >> y) & 1) == 1:
                continue
            d1 = depth + 1
            path[d1] = y
            forb[d1] = forb[depth] | adj[last] | (np.int64(1) << y)
            nxt[d1] = 0
            depth = d1
    return best


def _longest_path_numpy(adj, cap):
    k = adj.shape[0]
    if k == 0:
        return 0
    one = np.int64(1)
    ar = np.arange(k, dtype=np.int64)
    last = ar.copy()
    forb = one << ar
    best = 1
    while best < cap:
        nxt_last, nxt_forb = [], []
        last_adj = adj[last]
        for y in range(k):
            ok = (((last_adj >> y) & 1) == 1) & (((forb >> y) & 1) == 0)
            if not ok.any():
                continue
            nxt_last.append(np.full(int(ok.sum()), y, dtype=np.int64))
            nxt_forb.append(forb[ok] | last_adj[ok] | (one << y))
        if not nxt_last:
            break
        last = np.concatenate(nxt_last)
        forb = np.concatenate(nxt_forb)
        best += 1
    return best


def longest_induced_path(adj: np.ndarray, cap: int | None = None, backend: str | None = None) -> int:
    """Vertex count of a longest induced path, stopping early once ``cap`` is reached."""
    adj = np.ascontiguousarray(adj, dtype=np.int64)
    if adj.shape[0] > MAX_KERNEL_N:
        raise ValueError("kernel graphs are limited to 62 vertices")
    cap = adj.shape[0] if cap is None else cap
    backend = backend or _backend
    if backend == "numba":
        return int(_longest_path_numba(adj, cap))
    return int(_longest_path_numpy(adj, cap))
