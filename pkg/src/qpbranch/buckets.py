"""Buckets of witness structures and heavy-vertex selection.

Three bucket families are supported:

* induced paths between a pair of vertices, for P_t-free graphs;
* tripods filed under the triples of their bags, for graphs without long
  induced cycles;
* links through a chip, used by the secondary pivot rule.

All structures live in a host graph ``G`` restricted to a vertex set
``within``; vertex numbers are always those of ``G``.  Fractions are exact
:class:`fractions.Fraction` values and every threshold comparison is done on
integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, log2
from typing import Iterator, Mapping

import numpy as np

from . import kernels
from .bitset import bits, from_iter, lowest, to_list
from .errors import BudgetExceeded, ContractError, ViolationError
from .graph import Graph, component_of, connected_components

WITNESS_BUDGET = 10**7


def _within(G: Graph, within: int | None) -> int:
    return G.vertices if within is None else within


def _closed(G: Graph, mask: int, within: int) -> int:
    return G.closed_neighborhood(mask) & within


def _path_mask(path) -> int:
    return from_iter(path)


def is_induced_path(G: Graph, path) -> bool:
    if len(set(path)) != len(path):
        return False
    for i, u in enumerate(path):
        for j in range(i + 1, len(path)):
            if G.has_edge(u, path[j]) != (j == i + 1):
                return False
    return True


# --- induced path buckets ------------------------------------------------------

def iter_induced_paths(G: Graph, max_vertices: int, within: int | None = None) -> Iterator[tuple[int, ...]]:
    """Induced paths with 2..max_vertices vertices, each once, oriented from its smaller end."""
    W = _within(G, within)
    adj = G.adj

    def rec(path: list[int], forb: int):
        last = path[-1]
        if len(path) >= 2 and path[0] < last:
            yield tuple(path)
        if len(path) >= max_vertices:
            return
        for y in bits(adj[last] & W & ~forb):
            path.append(y)
            yield from rec(path, forb | adj[last] | (1 << y))
            path.pop()

    for s in bits(W):
        yield from rec([s], 1 << s)


@dataclass
class BucketIndex:
    """Bucket sizes and per-vertex hit counts for one family of witnesses.

    ``hits[i, j]`` is the number of witnesses in bucket ``keys[j]`` that meet
    the closed neighbourhood of ``vertices[i]``.  ``total`` is the number of
    buckets the heaviness fraction is taken over, empty ones included.
    ``witnesses`` holds the explicit lists when they were materialised.
    """

    kind: str
    vertices: list[int]
    keys: list[tuple[int, ...]]
    sizes: np.ndarray
    hits: np.ndarray
    total: int
    witnesses: dict[tuple[int, ...], list] | None = None
    meta: dict = field(default_factory=dict)

    def bucket(self, *key: int) -> list:
        if self.witnesses is None:
            raise ContractError("this index was built without explicit witnesses")
        return self.witnesses.get(tuple(sorted(key)), [])

    def nonempty(self) -> int:
        return int(np.count_nonzero(self.sizes))

    def stats(self) -> dict:
        return {
            "kind": self.kind,
            "buckets": self.total,
            "nonempty": self.nonempty(),
            "witnesses": int(self.sizes.sum()) if self.sizes.size else 0,
            "maxBucket": int(self.sizes.max()) if self.sizes.size else 0,
        }


def _index_from_witnesses(G: Graph, kind: str, W: int, buckets: dict, total: int, mask_of) -> BucketIndex:
    verts = to_list(W)
    pos = {v: i for i, v in enumerate(verts)}
    k = len(verts)
    keys = sorted(buckets)
    sizes = np.array([len(buckets[key]) for key in keys], dtype=np.int64)
    hits = np.zeros((k, len(keys)), dtype=np.int64)
    if not keys:
        return BucketIndex(kind, verts, keys, sizes, hits, total, buckets)
    # a witness meets N[x] iff x lies in the closed neighbourhood of the witness
    closed = np.zeros((k, k), dtype=np.int32)
    for v in verts:
        for u in bits((G.adj[v] | (1 << v)) & W):
            closed[pos[v], pos[u]] = 1
    wits = [w for key in keys for w in buckets[key]]
    owner = np.repeat(np.arange(len(keys)), sizes)
    chunk = 8192
    for lo in range(0, len(wits), chunk):
        part = wits[lo:lo + chunk]
        member = np.zeros((len(part), k), dtype=np.int32)
        if kind != "tripod":
            # path-shaped witnesses list their vertices directly
            lens = np.fromiter((len(w) for w in part), dtype=np.int64, count=len(part))
            cols = np.fromiter((pos[v] for w in part for v in w), dtype=np.int64, count=int(lens.sum()))
            member[np.repeat(np.arange(len(part)), lens), cols] = 1
        else:
            for i, w in enumerate(part):
                for v in bits(mask_of(w)):
                    member[i, pos[v]] = 1
        meets = (member @ closed) > 0
        own = owner[lo:lo + chunk]
        for x in range(k):
            sel = meets[:, x]
            if sel.any():
                hits[x] += np.bincount(own[sel], minlength=len(keys))
    return BucketIndex(kind, verts, keys, sizes, hits, total, buckets)


def path_buckets(G: Graph, t: int, within: int | None = None) -> BucketIndex:
    """Buckets of induced paths with at most t - 1 vertices, keyed by endpoint pair."""
    if t < 2:
        raise ContractError("t must be at least 2")
    W = _within(G, within)
    buckets: dict[tuple[int, int], list] = {}
    for p in iter_induced_paths(G, t - 1, W):
        buckets.setdefault((p[0], p[-1]), []).append(p)
    return _index_from_witnesses(G, "path", W, buckets, comb(W.bit_count(), 2), _path_mask)


def path_hit_index(G: Graph, t: int, within: int | None = None, backend: str | None = None) -> BucketIndex:
    """Same counts as :func:`path_buckets` without materialising the paths."""
    W = _within(G, within)
    verts = to_list(W)
    k = len(verts)
    if k > kernels.MAX_KERNEL_N:
        idx = path_buckets(G, t, W)
        idx.witnesses = None
        return idx
    adj = kernels.local_adjacency(G.adj, verts)
    sizes, hits = kernels.path_counts(adj, max(t - 1, 1), backend)
    iu, ju = np.triu_indices(k, 1)
    keep = sizes[iu, ju] > 0
    iu, ju = iu[keep], ju[keep]
    keys = [(verts[a], verts[b]) for a, b in zip(iu.tolist(), ju.tolist())]
    return BucketIndex("path", verts, keys, sizes[iu, ju], hits[:, iu, ju], comb(k, 2))


# --- heaviness ---------------------------------------------------------------

def heavy_scores(index: BucketIndex, eps: Fraction) -> dict[int, int]:
    """For each vertex, the number of buckets where it hits strictly more than eps of the witnesses."""
    eps = Fraction(eps)
    num, den = eps.numerator, eps.denominator
    if index.hits.size == 0:
        return {v: 0 for v in index.vertices}
    good = index.hits * den > index.sizes[None, :] * num
    counts = good.sum(axis=1)
    return {v: int(c) for v, c in zip(index.vertices, counts)}


def _bucket_fraction_ok(count: int, total: int, eps: Fraction, strict: bool) -> bool:
    lhs, rhs = count * eps.denominator, eps.numerator * total
    return lhs > rhs if strict else lhs >= rhs


def heavy_candidates(index: BucketIndex, eps: Fraction) -> list[tuple[int, int]]:
    """Qualifying ``(vertex, score)`` pairs under the rule that belongs to ``index.kind``.

    Path buckets need strictly more than an eps fraction of all pairs; tripod
    and link buckets need at least an eps fraction.
    """
    eps = Fraction(eps)
    strict = index.kind == "path"
    scores = heavy_scores(index, eps)
    return [(v, s) for v, s in scores.items() if _bucket_fraction_ok(s, index.total, eps, strict)]


def heavy_vertex(G: Graph, eps: Fraction, index: BucketIndex) -> int | None:
    """The qualifying vertex with the most qualifying buckets, ties to the smaller index."""
    cands = heavy_candidates(index, eps)
    if not cands:
        return None
    return min(cands, key=lambda vs: (-vs[1], vs[0]))[0]


# --- connectors and tripods --------------------------------------------------

@dataclass(frozen=True)
class Tripod:
    """Three legs joined at a centre.

    ``center`` is one vertex or a triangle (sorted); every leg runs from its
    centre vertex to its tip, and the legs are sorted by tip.
    """

    center: tuple[int, ...]
    legs: tuple[tuple[int, ...], ...]

    @property
    def tips(self) -> tuple[int, ...]:
        return tuple(leg[-1] for leg in self.legs)

    @property
    def mask(self) -> int:
        m = 0
        for leg in self.legs:
            m |= from_iter(leg)
        return m

    def long_legs(self, t: int) -> list[int]:
        """Indices of legs with exactly t/2 + 1 vertices."""
        if t % 2:
            return []
        return [i for i, leg in enumerate(self.legs) if len(leg) == t // 2 + 1]

    def as_dict(self) -> dict:
        return {"center": list(self.center), "legs": [list(l) for l in self.legs]}


Connector = Tripod  # a connector is the same shape with no leg-length cap


def _canonical(center, legs) -> Tripod:
    return Tripod(tuple(sorted(center)), tuple(sorted((tuple(l) for l in legs), key=lambda l: l[-1])))


def _legs_from(G: Graph, a: int, allowed: int, max_vertices: int) -> list[tuple[tuple[int, ...], int, int]]:
    """Induced paths starting at ``a`` inside ``allowed``; returns (path, body mask, closed body)."""
    out = []
    adj = G.adj

    def rec(path: list[int], forb: int, body: int, nbody: int):
        out.append((tuple(path), body, nbody))
        if len(path) >= max_vertices:
            return
        last = path[-1]
        for y in bits(adj[last] & allowed & ~forb):
            path.append(y)
            rec(path, forb | adj[last] | (1 << y), body | (1 << y), nbody | adj[y] | (1 << y))
            path.pop()

    rec([a], 1 << a, 0, 0)
    return out


def _compatible(l1, l2) -> bool:
    # legs meet only at the centre and have no edges between their bodies
    return not (l1[1] & l2[2])


def enumerate_tripods(G: Graph, t: int, within: int | None = None, budget: int = WITNESS_BUDGET) -> list[Tripod]:
    """All tripods of G[within], each once, in canonical form."""
    if t < 2:
        raise ContractError("t must be at least 2")
    W = _within(G, within)
    h = t // 2 + 1
    adj = G.adj
    out: list[Tripod] = []

    def push(tp: Tripod):
        out.append(tp)
        if len(out) > budget:
            raise BudgetExceeded(f"tripod enumeration exceeded {budget} witnesses")

    # identified centre: a subdivided claw, one leg may be the centre alone
    for c in bits(W):
        legs = _legs_from(G, c, W, h)
        legs.sort(key=lambda l: l[0][-1])
        for i, l1 in enumerate(legs):
            for j in range(i + 1, len(legs)):
                l2 = legs[j]
                if l1[0][-1] == l2[0][-1] or not _compatible(l1, l2):
                    continue
                for k in range(j + 1, len(legs)):
                    l3 = legs[k]
                    if l3[0][-1] == l2[0][-1] or not _compatible(l1, l3) or not _compatible(l2, l3):
                        continue
                    push(_canonical((c,), (l1[0], l2[0], l3[0])))

    # triangle centre: legs avoid the other two corners and their neighbourhoods
    for a in bits(W):
        for b in bits(adj[a] & W):
            if b <= a:
                continue
            for c in bits(adj[a] & adj[b] & W):
                if c <= b:
                    continue
                tri = (a, b, c)
                per = []
                for x in tri:
                    others = [y for y in tri if y != x]
                    block = 0
                    for y in others:
                        block |= adj[y] | (1 << y)
                    allowed = W & ~block
                    # the body must avoid the other corners' closed neighbourhoods
                    legs = [l for l in _legs_from(G, x, allowed | (1 << x), h) if not (l[1] & block)]
                    per.append(legs)
                for l1 in per[0]:
                    for l2 in per[1]:
                        if not _compatible(l1, l2) or not _compatible(l2, l1):
                            continue
                        for l3 in per[2]:
                            if (_compatible(l1, l3) and _compatible(l3, l1)
                                    and _compatible(l2, l3) and _compatible(l3, l2)):
                                push(_canonical(tri, (l1[0], l2[0], l3[0])))
    return out


def is_connector(G: Graph, tp: Tripod) -> bool:
    """Check the structural definition directly."""
    legs = tp.legs
    if len(legs) != 3 or len(set(tp.tips)) != 3:
        return False
    if not all(is_induced_path(G, leg) for leg in legs):
        return False
    if len(tp.center) == 1:
        c = tp.center[0]
        if any(leg[0] != c for leg in legs) or sum(len(l) == 1 for l in legs) > 1:
            return False
        bodies = [set(l[1:]) for l in legs]
        parts = [l[1:] for l in legs]  # the shared centre may touch every leg
    elif len(tp.center) == 3:
        if sorted(l[0] for l in legs) != list(tp.center):
            return False
        a, b, c = tp.center
        if not (G.has_edge(a, b) and G.has_edge(b, c) and G.has_edge(a, c)):
            return False
        bodies = [set(l) for l in legs]
        parts = legs
    else:
        return False
    for i in range(3):
        for j in range(i + 1, 3):
            if bodies[i] & bodies[j]:
                return False
            for x in parts[i]:
                for y in parts[j]:
                    if x == y or not G.has_edge(x, y):
                        continue
                    if not (x in tp.center and y in tp.center):
                        return False
    return True


def is_tripod(G: Graph, tp: Tripod, t: int) -> bool:
    return is_connector(G, tp) and all(len(l) <= t // 2 + 1 for l in tp.legs)


def tripod_star(G: Graph, tp: Tripod, t: int, within: int | None = None) -> int:
    """T* = N[V(T) minus long tips] minus long tips, inside G[within]."""
    W = _within(G, within)
    long_tips = from_iter(tp.legs[i][-1] for i in tp.long_legs(t))
    core = tp.mask & ~long_tips
    return _closed(G, core, W) & ~long_tips


def tripod_bags(G: Graph, tp: Tripod, t: int, within: int | None = None) -> tuple[int, int, int]:
    """Bags of the three tips, in leg order.

    A long-leg tip gets its component of G[within] - T*; any other tip gets
    itself.  Two long tips in one component mean a long induced cycle.
    """
    W = _within(G, within)
    star = tripod_star(G, tp, t, W)
    rest = W & ~star
    long_idx = set(tp.long_legs(t))
    bags = []
    for i, leg in enumerate(tp.legs):
        tip = leg[-1]
        bags.append(component_of(G, 1 << tip, rest) if i in long_idx else 1 << tip)
    for i in range(3):
        for j in range(i + 1, 3):
            if bags[i] & bags[j]:
                raise ViolationError(
                    "two long-leg tips share a component outside the tripod neighbourhood",
                    certificate={"tripod": tp.as_dict(), "tips": [tp.legs[i][-1], tp.legs[j][-1]]},
                )
    return bags[0], bags[1], bags[2]


def tripod_buckets(G: Graph, t: int, within: int | None = None, budget: int = WITNESS_BUDGET,
                   keep_witnesses: bool = False) -> BucketIndex:
    """File every tripod under each triple (u, v, w) picked from its three bags.

    Bags are disjoint, so an unordered triple matches at most one assignment
    of its members to the bags.
    """
    W = _within(G, within)
    verts = to_list(W)
    k = len(verts)
    pos = {v: i for i, v in enumerate(verts)}
    tripods = enumerate_tripods(G, t, W, budget)
    trip_ids: list[int] = []
    owner: list[int] = []
    filed = 0
    for ti, tp in enumerate(tripods):
        b1, b2, b3 = tripod_bags(G, tp, t, W)
        l1, l2, l3 = [pos[v] for v in bits(b1)], [pos[v] for v in bits(b2)], [pos[v] for v in bits(b3)]
        filed += len(l1) * len(l2) * len(l3)
        if filed > budget:
            raise BudgetExceeded(f"tripod bucket filing exceeded {budget} entries")
        for a in l1:
            for b in l2:
                for c in l3:
                    x, y, z = sorted((a, b, c))
                    trip_ids.append((x * k + y) * k + z)
                    owner.append(ti)
    closed = np.array([[(_closed(G, tp.mask, W) >> v) & 1 for v in verts] for tp in tripods],
                      dtype=np.int64).reshape(len(tripods), k)
    ids = np.array(trip_ids, dtype=np.int64)
    own = np.array(owner, dtype=np.int64)
    uniq, inv = np.unique(ids, return_inverse=True)
    sizes = np.bincount(inv, minlength=len(uniq)).astype(np.int64)
    hits = np.zeros((k, len(uniq)), dtype=np.int64)
    if len(own):
        member = closed[own]  # entries x vertices
        for x in range(k):
            sel = member[:, x] == 1
            if sel.any():
                hits[x] = np.bincount(inv[sel], minlength=len(uniq))
    keys = []
    for f in uniq.tolist():
        z = f % k
        y = (f // k) % k
        x = f // (k * k)
        keys.append((verts[x], verts[y], verts[z]))
    witnesses = None
    if keep_witnesses:
        witnesses = {}
        for f, ti in zip(ids.tolist(), owner):
            z = f % k
            y = (f // k) % k
            x = f // (k * k)
            witnesses.setdefault((verts[x], verts[y], verts[z]), []).append(tripods[ti])
    idx = BucketIndex("tripod", verts, keys, sizes, hits, comb(k, 3), witnesses)
    idx.meta["tripods"] = len(tripods)
    return idx


def minimal_connector(G: Graph, u: int, v: int, w: int, within: int | None = None) -> Tripod:
    """An inclusion-minimal connected set containing u, v, w, read as a connector.

    Built from a shortest u-v path plus a shortest path from w to it, then
    trimmed of removable vertices (largest index first).
    """
    W = _within(G, within)
    if len({u, v, w}) != 3 or any(not (W >> x) & 1 for x in (u, v, w)):
        raise ContractError("need three distinct vertices of the graph")
    comp = component_of(G, 1 << u, W)
    if not ((comp >> v) & 1 and (comp >> w) & 1):
        raise ContractError("the three vertices are not in one component")
    P = _shortest_path(G, 1 << u, 1 << v, W)
    Pw = _shortest_path(G, 1 << w, from_iter(P), W)
    B = from_iter(P) | from_iter(Pw)
    tips = (1 << u) | (1 << v) | (1 << w)
    changed = True
    while changed:
        changed = False
        for x in sorted(bits(B & ~tips), reverse=True):
            if G.is_connected(B & ~(1 << x)):
                B &= ~(1 << x)
                changed = True
                break
    return connector_from_set(G, B, (u, v, w))


def _shortest_path(G: Graph, src: int, dst: int, within: int) -> list[int]:
    """A shortest path from the set ``src`` to the set ``dst`` (lowest-index parents)."""
    parent: dict[int, int] = {}
    seen = src
    frontier = src
    while frontier:
        hit = frontier & dst
        if hit:
            x = lowest(hit)
            path = [x]
            while x in parent:
                x = parent[x]
                path.append(x)
            return path[::-1]
        nxt = 0
        for x in bits(frontier):
            for y in bits(G.adj[x] & within & ~seen & ~nxt):
                parent[y] = x
                nxt |= 1 << y
        seen |= nxt
        frontier = nxt
    raise ContractError("no path between the given sets")


def connector_from_set(G: Graph, B: int, tips: tuple[int, int, int]) -> Tripod:
    """Recover centre and legs of the connector G[B] with the given tips."""
    deg = {x: (G.adj[x] & B).bit_count() for x in bits(B)}
    tri = None
    for a in bits(B):
        for b in bits(G.adj[a] & B):
            if b > a:
                c = G.adj[a] & G.adj[b] & B
                if c:
                    tri = (a, b, lowest(c))
                    break
        if tri:
            break
    if tri is not None:
        legs = []
        for a in tri:
            others = from_iter(x for x in tri if x != a)
            reach = component_of(G, 1 << a, B & ~others)
            tip = [x for x in tips if (reach >> x) & 1]
            if len(tip) != 1:
                raise ViolationError("set is not a connector", certificate=to_list(B))
            legs.append(_shortest_path(G, 1 << a, 1 << tip[0], reach))
        return _canonical(tri, legs)
    branch = [x for x in bits(B) if deg[x] >= 3]
    if branch:
        c = branch[0]
    else:
        # a path: the middle tip is the centre
        ends = [x for x in tips if deg[x] <= 1]
        c = [x for x in tips if x not in ends][0] if len(ends) == 2 else tips[0]
    legs = []
    for x in tips:
        if x == c:
            legs.append([c])
        else:
            legs.append(_shortest_path(G, 1 << c, 1 << x, B))
    return _canonical((c,), legs)


def tripod_core(conn: Tripod, t: int) -> Tripod:
    h = t // 2 + 1
    return _canonical(conn.center, [leg[:h] for leg in conn.legs])


# --- chips and links -----------------------------------------------------------

def find_chip(G: Graph, H: int, C2: int, B: int, K: int) -> int | None:
    """The component of G[H & C2] holding a B-vertex and a vertex adjacent to K.

    Adjacency to K is taken inside H.  Two such components mean a long
    induced cycle and raise :class:`ViolationError`.
    """
    touch = G.neighborhood(K & H)
    found = [c for c in connected_components(G, H & C2) if c & B and c & touch]
    if len(found) > 1:
        raise ViolationError("two chips found", certificate=[to_list(c) for c in found])
    return found[0] if found else None


def iter_links(G: Graph, H: int, C: int, max_vertices: int) -> Iterator[tuple[int, ...]]:
    """C-links inside H with at most ``max_vertices`` vertices, each once (smaller end first)."""
    adj = G.adj
    C &= H
    ends = G.neighborhood(C) & H

    def rec(path: list[int], inner_closed: int, forb: int):
        # inner_closed: N[interior except the tip]; forb: vertices barred from extending
        tip = path[-1]
        if len(path) >= 2:
            for v in bits(adj[tip] & ends & ~inner_closed):
                if v > path[0]:
                    yield tuple(path) + (v,)
        if len(path) + 1 >= max_vertices:
            return
        nclosed = inner_closed | ((adj[tip] | (1 << tip)) if len(path) >= 2 else 0)
        for y in bits(adj[tip] & C & ~forb):
            path.append(y)
            yield from rec(path, nclosed, forb | adj[tip] | (1 << y))
            path.pop()

    for u in bits(ends):
        yield from rec([u], 0, (1 << u) | (adj[u] & ~C) | ends)


def c_link_buckets(G: Graph, H: int, C: int, t: int, validate: bool = False) -> BucketIndex:
    """Buckets of C-links keyed by endpoint pair from N_H(C); every bucket must be nonempty."""
    ends = G.neighborhood(C & H) & H
    buckets: dict[tuple[int, int], list] = {}
    for p in iter_links(G, H, C, t):
        buckets.setdefault((p[0], p[-1]), []).append(p)
    if validate:
        for p in iter_links(G, H, C, t + 1):
            if len(p) > t:
                raise ViolationError("C-link longer than t", certificate=list(p))
    for u, v in combinations(to_list(ends), 2):
        if (u, v) not in buckets:
            raise ViolationError("empty link bucket", certificate=[u, v])
    return _index_from_witnesses(G, "link", H, buckets, comb(ends.bit_count(), 2), _path_mask)


def secondary_heavy_vertex(G: Graph, H: int, C: int, t: int, index: BucketIndex | None = None) -> int:
    """Vertex whose neighbourhood hits strictly more than 1/(2t) of the links in at
    least 1/(2t) of the buckets; the best-scoring one is returned."""
    index = index if index is not None else c_link_buckets(G, H, C, t)
    v = heavy_vertex(G, Fraction(1, 2 * t), index)
    if v is None:
        raise ViolationError("no secondary-heavy vertex", certificate=to_list(C))
    return v


# --- potentials -------------------------------------------------------------

def quota_weights(G: Graph, W: int, eta: Mapping[int, int], zeta: Mapping[int, int], d: int) -> dict[int, int]:
    """1 + quota of each active vertex at its lower bound."""
    out = {}
    for u in bits(W):
        earlier = sum(1 for a in bits(G.adj[u]) if a in eta and eta[a] < zeta[u])
        out[u] = 1 + d - earlier
    return out


def potential(G: Graph, W: int, buckets: Mapping[tuple, list], weights: Mapping[int, int],
              keys=None, plus_one: bool = True) -> float:
    """Sum over buckets of log2(1 + sum of vertex weights over all witnesses).

    ``keys`` lists the buckets to sum over (empty ones contribute log2(1) = 0
    when ``plus_one`` holds).  Without the leading one the empty buckets are
    skipped.
    """
    total = 0.0
    for key in (keys if keys is not None else buckets):
        inner = 0
        for wit in buckets.get(key, []):
            m = wit.mask if isinstance(wit, Tripod) else _path_mask(wit)
            inner += sum(weights[v] for v in bits(m))
        if plus_one:
            total += log2(1 + inner)
        elif inner:
            total += log2(inner)
    return total


__all__ = [
    "WITNESS_BUDGET", "BucketIndex", "Tripod", "Connector", "iter_induced_paths", "path_buckets",
    "path_hit_index", "heavy_scores", "heavy_candidates", "heavy_vertex", "enumerate_tripods",
    "is_connector", "is_tripod", "tripod_star", "tripod_bags", "tripod_buckets", "minimal_connector",
    "connector_from_set", "tripod_core", "find_chip", "iter_links", "c_link_buckets",
    "secondary_heavy_vertex", "quota_weights", "potential", "is_induced_path",
]
