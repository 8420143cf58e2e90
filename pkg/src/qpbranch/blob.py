"""Blob graphs, maximum induced packing and the packing-based approximation.

The blob graph of G has a node per connected vertex set; two nodes are
adjacent when the sets intersect or an edge of G joins them.  Restricted to
a family F it turns Maximum Induced Packing over F into MWIS, and it keeps
the longest induced path (and, outside forests, the longest induced cycle)
of G, so the class restrictions carry over.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

from . import oracle
from .bitset import bits, from_iter, to_list
from .errors import ContractError, ViolationError
from .graph import Graph, component_of, connected_components
from .solver import SolverConfig, solve_mwis

DEFAULT_FAMILY_BUDGET = 200_000


@dataclass(frozen=True)
class BlobGraph:
    graph: Graph            # node i stands for members[i]
    members: tuple[int, ...]

    def member(self, i: int) -> list[int]:
        return to_list(self.members[i])


def _check_member(G: Graph, m: int) -> None:
    if not m:
        raise ContractError("family members must be nonempty")
    if m & ~G.vertices:
        raise ContractError("family member uses vertices outside the graph")
    if component_of(G, m & -m, m) != m:
        raise ContractError(f"family member {to_list(m)} is not connected")


def blob_graph(G: Graph, family: Sequence[int], weights: Sequence[int] | None = None) -> BlobGraph:
    """Blob graph restricted to ``family`` (bitmasks; duplicates stay separate nodes)."""
    for m in family:
        _check_member(G, m)
    k = len(family)
    closed = [G.closed_neighborhood(m) for m in family]
    edges = [(i, j) for i in range(k) for j in range(i + 1, k) if closed[i] & family[j]]
    w = list(weights) if weights is not None else [m.bit_count() for m in family]
    return BlobGraph(Graph.from_edges(k, edges, w), tuple(family))


# --- families ----------------------------------------------------------------

def connected_subsets(G: Graph, max_size: int | None = None, within: int | None = None,
                      budget: int = DEFAULT_FAMILY_BUDGET) -> list[int]:
    """Every connected vertex set (up to ``max_size`` vertices), in increasing mask order."""
    within = G.vertices if within is None else within
    cap = G.n if max_size is None else max_size
    out: set[int] = set()

    # grow each set only by vertices larger than its minimum, from that minimum
    def grow(S: int, frontier: int, floor: int) -> None:
        out.add(S)
        if len(out) > budget:
            raise ContractError(f"more than {budget} connected subsets")
        if S.bit_count() >= cap:
            return
        for v in bits(frontier):
            S2 = S | (1 << v)
            if S2 in out:
                continue
            grow(S2, (frontier | G.adj[v]) & within & ~S2 & floor, floor)

    for s in bits(within):
        floor = ~((1 << (s + 1)) - 1)
        grow(1 << s, G.adj[s] & within & floor, floor)
    return sorted(out)


def singleton_family(G: Graph) -> list[int]:
    return [1 << v for v in range(G.n)]


def induced_cycle_family(G: Graph) -> list[int]:
    """Vertex sets of all induced cycles."""
    return sorted({from_iter(c) for c in oracle._cycles(G)})


def full_blob(G: Graph) -> BlobGraph:
    """Blob graph over all connected sets; only sensible for very small G."""
    return blob_graph(G, connected_subsets(G))


# --- the longest-path and longest-cycle property -------------------------------

def blob_property_report(G: Graph) -> dict:
    """Longest induced path and cycle in G and in its full blob graph."""
    B = full_blob(G).graph
    lp_g = oracle.brute_longest_induced_path(G, size_cap=None)
    lp_b = oracle.brute_longest_induced_path(B, size_cap=None)
    lc_g = oracle.brute_longest_induced_cycle(G, cap=None)
    lc_b = oracle.brute_longest_induced_cycle(B, cap=None)
    is_forest = G.m == G.n - len(connected_components(G))
    path_ok = lp_g == lp_b
    cycle_ok = lc_b <= 3 if is_forest else lc_b == lc_g
    return {"pathG": lp_g, "pathBlob": lp_b, "cycleG": lc_g, "cycleBlob": lc_b, "forest": is_forest,
            "blobNodes": B.n, "pathOk": path_ok, "cycleOk": cycle_ok}


# --- packing -------------------------------------------------------------------

@dataclass
class PackingResult:
    chosen: list[int]       # indices into the family
    weight: int
    vertices: int           # union of the chosen members
    stats: dict


def check_packing(G: Graph, family: Sequence[int], chosen: Sequence[int]) -> None:
    """Components of the union must be exactly the chosen members."""
    union = 0
    for i in chosen:
        union |= family[i]
    comps = sorted(connected_components(G, union))
    if comps != sorted(family[i] for i in chosen):
        raise ViolationError("packing members touch each other",
                             certificate=[to_list(family[i]) for i in chosen])


def solve_max_induced_packing(G: Graph, family: Sequence[int], weights: Sequence[int] | None = None,
                              t: int = 6, mode: str = "pt", config: SolverConfig | None = None) -> PackingResult:
    """Heaviest set of pairwise non-touching members, solved as MWIS on the blob graph."""
    family = list(family)
    if not family:
        return PackingResult([], 0, 0, {"members": 0})
    blob = blob_graph(G, family, weights)
    res = solve_mwis(blob.graph, t, mode, config)
    chosen = res.vertices
    check_packing(G, family, chosen)
    union = 0
    for i in chosen:
        union |= family[i]
    stats = res.stats.as_dict()
    stats["members"] = len(family)
    return PackingResult(chosen, res.weight, union, stats)


# --- membership predicates ------------------------------------------------------

Predicate = Callable[[Graph, int], bool]


def edgeless(G: Graph, S: int) -> bool:
    return all(not (G.adj[v] & S) for v in bits(S))


def forest(G: Graph, S: int) -> bool:
    edges = sum((G.adj[v] & S).bit_count() for v in bits(S)) // 2
    return edges == S.bit_count() - len(connected_components(G, S))


def max_degree_at_most(k: int) -> Predicate:
    def pred(G: Graph, S: int) -> bool:
        return all((G.adj[v] & S).bit_count() <= k for v in bits(S))

    pred.__name__ = f"max_degree_le_{k}"
    return pred


PREDICATES: dict[str, Predicate] = {"edgeless": edgeless, "forest": forest,
                                    "max-degree-2": max_degree_at_most(2)}


def approx_largest_induced_class(G: Graph, eps, predicate: Predicate, c: int, t: int = 6, mode: str = "pt",
                                 config: SolverConfig | None = None, budget: int = DEFAULT_FAMILY_BUDGET) -> int:
    """Large X such that every component of G[X] is a member of the class.

    Packs connected members of at most ``c`` vertices.  The (1 - eps) factor
    holds whenever ``c`` is a valid fragmentation constant for the class at
    ``eps``; ``eps`` itself only documents that choice.  Feasibility is
    checked on the output either way.
    """
    if c < 1:
        raise ContractError("c must be positive")
    family = [S for S in connected_subsets(G, c, budget=budget) if predicate(G, S)]
    res = solve_max_induced_packing(G, family, None, t, mode, config)
    for comp in connected_components(G, res.vertices):
        if not predicate(G, comp):
            raise ViolationError("output component outside the class", certificate=to_list(comp))
    return res.vertices


def brute_largest_induced_class(G: Graph, predicate: Predicate) -> int:
    """Largest X whose components all satisfy the predicate (exponential)."""
    oracle._check_cap(G.n, oracle.DEGENERATE_CAP, "induced class")
    best = 0
    for r in range(G.n, 0, -1):
        for combo in combinations(range(G.n), r):
            S = from_iter(combo)
            if all(predicate(G, comp) for comp in connected_components(G, S)):
                return S
    return best


__all__ = ["BlobGraph", "blob_graph", "connected_subsets", "singleton_family", "induced_cycle_family",
           "full_blob", "blob_property_report", "PackingResult", "check_packing", "solve_max_induced_packing",
           "edgeless", "forest", "max_degree_at_most", "PREDICATES", "approx_largest_induced_class",
           "brute_largest_induced_class"]
