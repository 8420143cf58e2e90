"""Connected balanced separators grown along an induced path, three-way balance
checks, and a brute-force balanced separator for graphs of small treewidth."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bitset import bits, lowest, to_list
from .errors import ContractError, ViolationError
from .graph import Graph, connected_components


@dataclass(frozen=True)
class SeparatorResult:
    X: int
    closed: int
    components: tuple[int, ...]
    path: tuple[int, ...]

    def balance(self, A: int) -> int:
        """Largest number of A-vertices in one component of G - N[X]."""
        return max(((c & A).bit_count() for c in self.components), default=0)


def _heaviest(components: list[int], A: int) -> int | None:
    best = None
    for c in components:
        if best is None or (c & A).bit_count() > (best & A).bit_count():
            best = c
    return best


def connected_balanced_separator(G: Graph, t: int, A: int | None = None, within: int | None = None) -> SeparatorResult:
    """Connected X with |X| <= t such that no component of G[within] - N[X]
    holds more than half of A.

    The path v1, v2, ... is grown inside the component C that currently holds
    the majority of A: the next vertex is a neighbour of the tip that lies in
    the previous majority component and touches the current one.  X is the
    last min(k, t) vertices of the path.  The result is re-checked before it
    is returned; a failed check means the graph is not in the assumed class.
    """
    V = G.vertices if within is None else within
    if not V:
        raise ContractError("separator of an empty graph")
    if not G.is_connected(V):
        raise ContractError("separator input must be connected")
    A = V if A is None else A & V
    if not A:
        raise ContractError("A must be nonempty")
    if t < 1:
        raise ContractError("t must be positive")

    def split(path_mask: int) -> list[int]:
        return connected_components(G, V & ~G.closed_neighborhood(path_mask))

    v = lowest(V)
    path = [v]
    prev = V  # majority component before the last extension
    comps = split(1 << v)
    cur = _heaviest(comps, A)
    steps = 0
    while cur is not None and 2 * (cur & A).bit_count() > A.bit_count():
        steps += 1
        if steps > V.bit_count():
            raise ViolationError("separator growth did not terminate", certificate=path)
        tip = path[-1]
        touching = G.neighborhood(cur)
        cand = G.adj[tip] & prev & touching
        if not cand:
            raise ViolationError("separator growth got stuck", certificate=path)
        nxt = lowest(cand)
        path.append(nxt)
        prev = cur
        comps = split(sum(1 << p for p in path))
        cur = _heaviest(comps, A)

    X_list = path[-t:]
    X = sum(1 << p for p in X_list)
    closed = G.closed_neighborhood(X) & V
    components = connected_components(G, V & ~closed)
    if any(2 * (c & A).bit_count() > A.bit_count() for c in components):
        raise ViolationError("path suffix does not separate; input is not in the assumed class",
                             certificate=path)
    if not G.is_connected(X) or len(X_list) > t:
        raise ViolationError("separator is not a connected set of at most t vertices", certificate=path)
    return SeparatorResult(X, closed, tuple(components), tuple(path))


@dataclass(frozen=True)
class C3wbsWitness:
    classes: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def is_c3wbs(G: Graph, X: int, within: int | None = None, fraction=(1, 10)) -> C3wbsWitness | None:
    """Decide whether the components of G[within] - N[X] can be split into three
    classes so that N[X] together with each class covers a tenth of the graph.

    Exact dynamic programme over the pair of sums of the first two classes.
    """
    V = G.vertices if within is None else within
    if not X or X & ~V:
        raise ContractError("X must be a nonempty subset of the graph")
    if not G.is_connected(X):
        raise ContractError("G[X] must be connected")
    num, den = fraction
    n = V.bit_count()
    closed = G.closed_neighborhood(X) & V
    comps = connected_components(G, V & ~closed)
    base = closed.bit_count()
    # class i is fine when den * (base + s_i) >= num * n
    need = max(0, -(-(num * n) // den) - base)
    sizes = [c.bit_count() for c in comps]
    total = sum(sizes)
    states: dict[tuple[int, int], tuple] = {(0, 0): ()}
    for i, s in enumerate(sizes):
        nxt: dict[tuple[int, int], tuple] = {}
        for (a, b), hist in states.items():
            for key, h in (((a, b), hist + (2,)), ((a + s, b), hist + (0,)), ((a, b + s), hist + (1,))):
                if key not in nxt:
                    nxt[key] = h
        states = nxt
    for (a, b), hist in sorted(states.items()):
        if a >= need and b >= need and total - a - b >= need:
            classes = ([], [], [])
            for c, k in zip(comps, hist):
                classes[k].append(c)
            return C3wbsWitness(tuple(tuple(c) for c in classes))
    return None


def big_components(G: Graph, X: int, within: int | None = None, fraction=(2, 5)) -> list[int]:
    """Components of G[within] - N[X] holding at least the given fraction of the vertices."""
    V = G.vertices if within is None else within
    num, den = fraction
    n = V.bit_count()
    comps = connected_components(G, V & ~G.closed_neighborhood(X))
    return [c for c in comps if den * c.bit_count() >= num * n]


def low_tw_balanced_separator(H: Graph, A: int, k: int, within: int | None = None) -> int:
    """Smallest-first search for X, |X| <= k, leaving at most |A|/2 of A per component."""
    V = H.vertices if within is None else within
    if k > 6 or V.bit_count() > 40:
        raise ContractError("brute-force separator is capped at k <= 6 and n <= 40")
    A &= V
    half = A.bit_count()
    verts = to_list(V)
    for size in range(0, k + 1):
        for X in combinations(verts, size):
            mask = sum(1 << x for x in X)
            comps = connected_components(H, V & ~mask)
            if all(2 * (c & A).bit_count() <= half for c in comps):
                return mask
    raise ViolationError(f"no balanced separator with at most {k} vertices")


def separator_report(G: Graph, res: SeparatorResult, A: int) -> dict:
    return {
        "X": to_list(res.X),
        "components": [to_list(c) for c in res.components],
        "balance": res.balance(A),
        "A_size": A.bit_count(),
        "path": list(res.path),
    }


__all__ = [
    "SeparatorResult", "C3wbsWitness", "connected_balanced_separator", "is_c3wbs",
    "big_components", "low_tw_balanced_separator", "separator_report",
]
