"""Immutable weighted graphs, the instance text format and degeneracy orderings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .bitset import bits, from_iter, full
from .errors import ContractError, ParseError


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1`` with integer weights.

    ``adj[v]`` is the neighbourhood of ``v`` as a bitmask and ``nbrs[v]`` the
    same set as a sorted tuple.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[int, ...]
    adj: tuple[int, ...] = field(repr=False, compare=False)
    nbrs: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], weights: Iterable[int] | None = None) -> "Graph":
        if n < 0:
            raise ContractError("negative vertex count")
        w = tuple(int(x) for x in weights) if weights is not None else (1,) * n
        if len(w) != n:
            raise ContractError(f"expected {n} weights, got {len(w)}")
        if any(x < 0 for x in w):
            raise ContractError("weights must be nonnegative")
        adj = [0] * n
        norm = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise ContractError(f"self-loop at {u}")
            a, b = min(u, v), max(u, v)
            norm.add((a, b))
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        nbrs = tuple(tuple(bits(m)) for m in adj)
        return cls(n, tuple(sorted(norm)), w, tuple(adj), nbrs)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> int:
        return full(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int, within: int | None = None) -> int:
        m = self.adj[v] if within is None else self.adj[v] & within
        return m.bit_count()

    def weight(self, mask: int) -> int:
        return sum(self.weights[v] for v in bits(mask))

    def neighborhood(self, mask: int) -> int:
        """Open neighbourhood N(S) = union of N(v) minus S."""
        out = 0
        for v in bits(mask):
            out |= self.adj[v]
        return out & ~mask

    def closed_neighborhood(self, mask: int) -> int:
        out = mask
        for v in bits(mask):
            out |= self.adj[v]
        return out

    def is_connected(self, mask: int | None = None) -> bool:
        mask = self.vertices if mask is None else mask
        if not mask:
            return True
        return component_of(self, mask & -mask, mask) == mask

    def with_weights(self, weights: Iterable[int]) -> "Graph":
        return Graph.from_edges(self.n, self.edges, weights)


def component_of(G: Graph, seed: int, within: int) -> int:
    """Vertices of ``within`` reachable from the seed set inside G[within]."""
    comp = seed & within
    frontier = comp
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= G.adj[v]
        nxt &= within & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def connected_components(G: Graph, S: int | None = None) -> list[int]:
    """Components of G[S] as bitmasks, ordered by smallest member."""
    rest = G.vertices if S is None else S
    if rest & ~G.vertices:
        raise ContractError("vertex set out of range")
    out = []
    while rest:
        c = component_of(G, rest & -rest, rest)
        out.append(c)
        rest &= ~c
    return out


def induced_subgraph(G: Graph, S: int) -> tuple[Graph, list[int]]:
    """Return G[S] relabelled to ``0..|S|-1`` and the map new index -> old index."""
    if S & ~G.vertices:
        raise ContractError("vertex set out of range")
    old = list(bits(S))
    new = {v: i for i, v in enumerate(old)}
    edges = [(new[u], new[v]) for u, v in G.edges if u in new and v in new]
    H = Graph.from_edges(len(old), edges, [G.weights[v] for v in old])
    return H, old


def lift(mask: int, index_map: list[int]) -> int:
    """Translate a vertex set of an induced subgraph back to the parent graph."""
    return from_iter(index_map[i] for i in bits(mask))


# --- instance format ---------------------------------------------------------

def parse_graph(text: str) -> Graph:
    header = None
    weights = None
    edges: list[tuple[int, int]] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise ParseError("header must be 'n m'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("header must hold two integers", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("negative count in header", lineno)
            header = (n, m)
            continue
        n = header[0]
        tag = parts[0]
        if tag == "w":
            if weights is not None:
                raise ParseError("second weight line", lineno)
            if edges:
                raise ParseError("weight line must precede edges", lineno)
            try:
                weights = [int(x) for x in parts[1:]]
            except ValueError:
                raise ParseError("non-integer weight", lineno) from None
            if len(weights) != n:
                raise ParseError(f"expected {n} weights, got {len(weights)}", lineno)
            if any(x < 0 for x in weights):
                raise ParseError("negative weight", lineno)
        elif tag == "e":
            if len(parts) != 3:
                raise ParseError("edge line must be 'e u v'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("non-integer endpoint", lineno) from None
            if u == v:
                raise ParseError(f"self-loop at {u}", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"endpoint out of range in edge ({u}, {v})", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(f"duplicate edge ({u}, {v})", lineno)
            seen.add(key)
            edges.append(key)
        else:
            raise ParseError(f"unknown line tag {tag!r}", lineno)
    if header is None:
        raise ParseError("missing header")
    if len(edges) != header[1]:
        raise ParseError(f"header declares {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges, weights)


def format_graph(G: Graph) -> str:
    lines = [f"{G.n} {G.m}", "w " + " ".join(str(x) for x in G.weights) if G.n else "w"]
    lines += [f"e {u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(G: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(G))


# --- degeneracy --------------------------------------------------------------

def greedy_degeneracy_ordering(G: Graph, S: int | None = None) -> tuple[int, dict[int, int]]:
    """Peel a minimum-degree vertex until nothing is left.

    Returns the degeneracy of G[S] and positions in ``1..|S|``; a peeled
    vertex goes after everything still present, so each vertex has at most
    ``d`` neighbours with smaller position.
    """
    rest = G.vertices if S is None else S
    k = rest.bit_count()
    pos: dict[int, int] = {}
    d = 0
    while rest:
        v = min(bits(rest), key=lambda x: ((G.adj[x] & rest).bit_count(), x))
        d = max(d, (G.adj[v] & rest).bit_count())
        pos[v] = k
        k -= 1
        rest &= ~(1 << v)
    return d, pos


def is_degenerate(G: Graph, S: int, d: int) -> bool:
    return greedy_degeneracy_ordering(G, S)[0] <= d


def validate_degeneracy_ordering(G: Graph, eta: Mapping[int, int], d: int, S: int | None = None) -> bool:
    """Check that ``eta`` is edge-injective on G[S] with at most d earlier neighbours each."""
    S = G.vertices if S is None else S
    for v in bits(S):
        if v not in eta:
            raise ContractError(f"ordering misses vertex {v}")
    for v in bits(S):
        earlier = 0
        for u in bits(G.adj[v] & S):
            if eta[u] == eta[v]:
                return False
            if eta[u] < eta[v]:
                earlier += 1
        if earlier > d:
            return False
    return True
