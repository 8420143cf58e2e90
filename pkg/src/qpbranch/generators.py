"""Seeded instance generators for the test corpus and the CLI ``gen`` command."""

from __future__ import annotations

import random

from .errors import BudgetExceeded, ContractError
from .graph import Graph
from . import oracle

KINDS = ("random-gnp-rejection", "random-chordal", "random-interval", "path", "cycle", "grid")
ATTEMPT_BUDGET = 10_000


def _weights(rng: random.Random, n: int, weights) -> list[int] | None:
    if weights is None:
        return None
    lo, hi = weights
    return [rng.randint(lo, hi) for _ in range(n)]


def _shuffle_labels(rng: random.Random, n: int, edges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    perm = list(range(n))
    rng.shuffle(perm)
    return [(perm[u], perm[v]) for u, v in edges]


def _gnp(rng: random.Random, n: int, p: float) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def _chordal(rng: random.Random, n: int, density: float) -> list[tuple[int, int]]:
    # every new vertex is simplicial: it attaches to a clique inside N[u]
    edges = []
    adj = [set() for _ in range(n)]
    for v in range(1, n):
        u = rng.randrange(v)
        clique = [u]
        for x in sorted(adj[u]):
            if rng.random() < density and all(x in adj[y] for y in clique):
                clique.append(x)
        for x in clique:
            edges.append((x, v))
            adj[x].add(v)
            adj[v].add(x)
    return edges


def _interval(rng: random.Random, n: int, spread: float) -> list[tuple[int, int]]:
    intervals = []
    start, reach = 0.0, 0.0
    for i in range(n):
        if i:
            start = rng.uniform(start, reach)
        end = start + rng.uniform(0.0, spread)
        intervals.append((start, end))
        reach = max(reach, end)
    return [(i, j) for i in range(n) for j in range(i + 1, n)
            if intervals[i][0] <= intervals[j][1] and intervals[j][0] <= intervals[i][1]]


def generate_instance(kind: str, seed: int = 0, n: int = 10, *, p: float | None = None,
                      t: int | None = None, target: str = "pt", connected: bool = True,
                      weights: tuple[int, int] | None = None, rows: int | None = None,
                      cols: int | None = None, density: float = 0.5, spread: float = 2.0,
                      attempts: int = ATTEMPT_BUDGET) -> Graph:
    """Build a graph of the requested kind.

    ``random-gnp-rejection`` resamples G(n, p) until it is P_t-free
    (``target="pt"``) or has no induced cycle longer than t (``target="cgt"``),
    and is connected when asked.  When ``p`` is None each attempt draws its own
    density from [0.25, 0.75].  ``weights=(lo, hi)`` draws uniform integer
    weights; the default is unit weights.
    """
    rng = random.Random(seed)
    if kind not in KINDS:
        raise ContractError(f"unknown instance kind {kind!r}")
    if kind == "path":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], _weights(rng, n, weights))
    if kind == "cycle":
        if n < 3:
            raise ContractError("a cycle needs at least 3 vertices")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], _weights(rng, n, weights))
    if kind == "grid":
        r, c = rows or 1, cols or n
        idx = lambda i, j: i * c + j  # noqa: E731
        edges = [(idx(i, j), idx(i, j + 1)) for i in range(r) for j in range(c - 1)]
        edges += [(idx(i, j), idx(i + 1, j)) for i in range(r - 1) for j in range(c)]
        return Graph.from_edges(r * c, edges, _weights(rng, r * c, weights))
    if kind == "random-chordal":
        edges = _shuffle_labels(rng, n, _chordal(rng, n, density))
        return Graph.from_edges(n, edges, _weights(rng, n, weights))
    if kind == "random-interval":
        edges = _shuffle_labels(rng, n, _interval(rng, n, spread))
        return Graph.from_edges(n, edges, _weights(rng, n, weights))

    if t is None:
        raise ContractError("random-gnp-rejection needs t")
    if target not in ("pt", "cgt"):
        raise ContractError("target must be 'pt' or 'cgt'")
    for _ in range(attempts):
        q = p if p is not None else rng.uniform(0.25, 0.75)
        G = Graph.from_edges(n, _gnp(rng, n, q))
        if connected and not G.is_connected():
            continue
        ok = oracle.is_pt_free(G, t) if target == "pt" else oracle.is_long_hole_free(G, t)
        if ok:
            return G.with_weights(_weights(rng, n, weights)) if weights else G
    raise BudgetExceeded(f"no {target}-free sample with n={n}, t={t} after {attempts} attempts")
