"""Brute-force reference solvers and structural checks.

Everything here is deliberately naive: include/exclude enumeration with a
feasibility test and a plain weight bound.  Among optimal sets the witness is
the one whose sorted vertex list is lexicographically smallest.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import kernels
from .bitset import bits, to_list
from .errors import ContractError
from .graph import Graph, greedy_degeneracy_ordering

MWIS_CAP = 24
DEGENERATE_CAP = 16
PATH_CAP = 24
CYCLE_CAP = 20
PACKING_CAP = 18


@dataclass
class OracleResult:
    weight: int
    witness: int
    elapsed: float = 0.0
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def vertices(self) -> list[int]:
        return to_list(self.witness)


def _check_cap(n: int, cap: int, what: str, size: str = "n") -> None:
    if n > cap:
        raise ContractError(f"{what} oracle is capped at {size} = {cap}, got {n}")


def _better(w: int, S: int, best: tuple[int, int] | None) -> bool:
    if best is None or w > best[0]:
        return True
    if w != best[0]:
        return False
    # ties: the set holding the smallest vertex of the symmetric difference wins
    diff = S ^ best[1]
    return bool(S & diff & -diff)


def best_hereditary_set(G: Graph, can_add: Callable[[int, int], bool]) -> tuple[int, int]:
    """Maximum-weight set in a hereditary family given by an extension test.

    ``can_add(S, v)`` must say whether ``S | {v}`` stays in the family.
    """
    weights = G.weights
    best: list[tuple[int, int] | None] = [None]

    def rec(v: int, S: int, wS: int, rest_w: int) -> None:
        if best[0] is not None and wS + rest_w < best[0][0]:
            return
        if v == G.n:
            if _better(wS, S, best[0]):
                best[0] = (wS, S)
            return
        rest = rest_w - weights[v]
        if can_add(S, v):
            rec(v + 1, S | (1 << v), wS + weights[v], rest)
        rec(v + 1, S, wS, rest)

    rec(0, 0, 0, sum(weights))
    assert best[0] is not None
    return best[0]


def brute_mwis(G: Graph) -> OracleResult:
    _check_cap(G.n, MWIS_CAP, "MWIS")
    t0 = time.perf_counter()
    adj = G.adj
    w, S = best_hereditary_set(G, lambda S, v: not (adj[v] & S))
    return OracleResult(w, S, time.perf_counter() - t0)


def brute_max_degenerate(G: Graph, d: int) -> OracleResult:
    """Maximum-weight S with G[S] d-degenerate; also returns a witnessing ordering."""
    _check_cap(G.n, DEGENERATE_CAP, "degenerate")
    if d < 0:
        raise ContractError("d must be nonnegative")
    t0 = time.perf_counter()
    w, S = best_hereditary_set(G, lambda S, v: greedy_degeneracy_ordering(G, S | (1 << v))[0] <= d)
    _, order = greedy_degeneracy_ordering(G, S)
    return OracleResult(w, S, time.perf_counter() - t0, {"ordering": order})


# --- induced paths and cycles -------------------------------------------------

def _python_longest_path(G: Graph, cap: int) -> int:
    best = 1 if G.n else 0
    adj = G.adj

    def rec(last: int, forb: int, length: int) -> bool:
        nonlocal best
        if length > best:
            best = length
            if best >= cap:
                return True
        for y in bits(adj[last] & ~forb):
            if rec(y, forb | adj[last] | (1 << y), length + 1):
                return True
        return False

    for s in range(G.n):
        if rec(s, 1 << s, 1):
            break
    return best


def brute_longest_induced_path(G: Graph, cap: int | None = None, size_cap: int | None = PATH_CAP) -> int:
    """Number of vertices on a longest induced path (stops early at ``cap``).

    ``size_cap=None`` accepts any number of vertices.
    """
    if size_cap is not None:
        _check_cap(G.n, size_cap, "induced path")
    cap = G.n if cap is None else cap
    if G.n <= kernels.MAX_KERNEL_N:
        return kernels.longest_induced_path(kernels.local_adjacency(G.adj, list(range(G.n))), cap)
    return _python_longest_path(G, cap)


def find_induced_path(G: Graph, k: int) -> list[int] | None:
    """Some induced path on exactly k vertices, or None."""
    adj = G.adj

    def rec(path: list[int], forb: int) -> list[int] | None:
        if len(path) == k:
            return path
        last = path[-1]
        for y in bits(adj[last] & ~forb):
            found = rec(path + [y], forb | adj[last] | (1 << y))
            if found:
                return found
        return None

    for s in range(G.n):
        found = rec([s], 1 << s)
        if found:
            return found
    return None


def _cycles(G: Graph):
    """Yield induced cycles (vertex lists, smallest vertex first)."""
    adj = G.adj
    for s in range(G.n):
        higher = ~((1 << (s + 1)) - 1)

        def rec(path: list[int], forb: int):
            last = path[-1]
            for y in bits(adj[last] & higher & ~forb):
                if len(path) >= 2 and (adj[s] >> y) & 1:
                    yield path + [y]
                else:
                    # interior vertices (all but s and the tip) forbid their neighbours
                    nf = forb | (1 << y) | (adj[last] if len(path) >= 2 else 0)
                    yield from rec(path + [y], nf)

        yield from rec([s], 1 << s)


def brute_longest_induced_cycle(G: Graph, cap: int | None = CYCLE_CAP) -> int:
    """Vertex count of a longest induced cycle; 0 for forests.

    ``cap=None`` lifts the size limit (dense graphs such as blob graphs have
    few induced cycles even when they have many vertices).
    """
    if cap is not None:
        _check_cap(G.n, cap, "induced cycle")
    best = 0
    for cyc in _cycles(G):
        best = max(best, len(cyc))
    return best


def find_long_induced_cycle(G: Graph, t: int) -> list[int] | None:
    """Some induced cycle with more than t vertices, or None."""
    for cyc in _cycles(G):
        if len(cyc) > t:
            return cyc
    return None


def is_pt_free(G: Graph, t: int) -> bool:
    return brute_longest_induced_path(G, cap=t) < t


def is_long_hole_free(G: Graph, t: int) -> bool:
    return find_long_induced_cycle(G, t) is None


# --- packings ---------------------------------------------------------------

def members_touch(G: Graph, a: int, b: int) -> bool:
    """Two vertex sets intersect or are joined by an edge."""
    return bool(a & b) or bool(G.neighborhood(a) & b)


def brute_max_packing(G: Graph, family: Sequence[int], weights: Sequence[int] | None = None) -> OracleResult:
    """Best set of pairwise non-touching members; the witness is a bitmask of member indices."""
    _check_cap(len(family), PACKING_CAP, "packing", "|F|")
    t0 = time.perf_counter()
    k = len(family)
    weights = list(weights) if weights is not None else [m.bit_count() for m in family]
    edges = [(i, j) for i in range(k) for j in range(i + 1, k) if members_touch(G, family[i], family[j])]
    conflict = Graph.from_edges(k, edges, weights)
    adj = conflict.adj
    w, S = best_hereditary_set(conflict, lambda S, v: not (adj[v] & S))
    return OracleResult(w, S, time.perf_counter() - t0)


def brute_td_automaton(G: Graph, d: int, automaton, labeller=None) -> OracleResult:
    """Best (S, proper decomposition of depth <= d) accepted by the automaton.

    Raises :class:`NoSolution` when nothing, not even the empty set, is accepted.
    """
    from .automata import brute_td_automaton as impl

    return impl(G, d, automaton, labeller)
