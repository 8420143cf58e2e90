"""Maximum-weight induced d-degenerate subgraph by branching on heavy vertices.

The recursion follows the subproblem tree: leaf, filter, split, branch and
free nodes.  On top of the literal tree the default configuration applies
three reductions that never change the optimum:

* branch and bound against the best solution found so far, with a clique
  cover bound (a d-degenerate graph keeps at most d + 1 vertices of a clique);
* siblings that lead to the same subproblem, as far as the rest of the
  recursion can tell, are explored once;
* left-neighbour guesses are drawn from N(u) only, since other vertices of
  a guess never influence the child.

``SolverConfig(prune=False)`` switches all three off and walks the literal
tree; that is only practical on tiny graphs.

Ties between optimal sets are broken by a per-vertex bonus below the unit of
weight: a set containing a smaller vertex wins (see :func:`tiebreak_key`).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from math import log2
from typing import Mapping

from . import buckets as bk
from . import oracle
from .bitset import bits, from_iter, to_list
from .errors import BudgetExceeded, ContractError, ViolationError
from .graph import Graph, connected_components, greedy_degeneracy_ordering, validate_degeneracy_ordering
from .strategies import PivotRule, SecondaryContext, StrategyConfig, make_rule
from .subproblem import (Subproblem, below_capacity, quota, root_level, submasks_upto)

NODE_KINDS = ("leaf", "filter", "split", "branch", "free")
DEFAULT_BUDGET_NODES = 10**6
DEFAULT_BUDGET_SECS = 300.0


def tiebreak_key(n: int, S: int) -> int:
    """Bonus of a set: vertex v contributes 2^(n-1-v), so smaller vertices dominate."""
    return sum(1 << (n - 1 - v) for v in bits(S))


@dataclass
class SolverConfig:
    prune: bool = True
    budget_nodes: int | None = DEFAULT_BUDGET_NODES
    budget_secs: float | None = DEFAULT_BUDGET_SECS
    validate: bool = False
    check_class: bool = True
    strategy: StrategyConfig = field(default_factory=StrategyConfig)


@dataclass
class SolveStats:
    n: int
    m: int
    problem: str
    d: int
    t: int
    mode: str
    nodes: dict = field(default_factory=lambda: {k: 0 for k in NODE_KINDS})
    max_success_per_path: int = 0
    max_split_per_path: int = 0
    root_level: int = 0
    pruned_bound: int = 0
    pruned_duplicate: int = 0
    quota_checks: int = 0
    rule: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def work_nodes(self) -> int:
        return self.nodes["leaf"] + self.nodes["filter"] + self.nodes["branch"]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "problem": self.problem,
            "d": self.d,
            "t": self.t,
            "mode": self.mode,
            "nodes": dict(self.nodes),
            "maxSuccessPerPath": self.max_success_per_path,
            "maxSplitPerPath": self.max_split_per_path,
            "rootLevel": self.root_level,
            "pruned": {"bound": self.pruned_bound, "duplicate": self.pruned_duplicate},
            "quotaChecks": self.quota_checks,
            "rule": dict(self.rule),
            "timing": {"elapsedMs": round(self.elapsed * 1000.0, 3)},
        }


@dataclass
class SolveResult:
    weight: int
    solution: int
    ordering: dict[int, int]
    stats: SolveStats

    @property
    def vertices(self) -> list[int]:
        return to_list(self.solution)

    def as_dict(self) -> dict:
        out = self.stats.as_dict()
        out["weight"] = self.weight
        out["solution"] = self.vertices
        return out


def clique_cover_bound(G: Graph, weights, d: int, W: int) -> int:
    """Upper bound on the weight of a d-degenerate subset of W.

    Greedy clique cover in order of decreasing weight; each clique can keep
    at most d + 1 of its vertices.
    """
    order = sorted(bits(W), key=lambda v: -weights[v])
    cliques: list[list] = []
    adj = G.adj
    for v in order:
        for c in cliques:
            if (c[0] & ~adj[v]) == 0:
                c[0] |= 1 << v
                c[1].append(weights[v])
                break
        else:
            cliques.append([1 << v, [weights[v]]])
    return sum(sum(c[1][: d + 1]) for c in cliques)


def core(G: Graph, S: int, k: int) -> int:
    """Largest subset of S inducing minimum degree at least k."""
    adj = G.adj
    changed = True
    while changed and S:
        changed = False
        for v in _members(S):
            if (adj[v] & S).bit_count() < k:
                S &= ~(1 << v)
                changed = True
    return S


def obstacle_bound(G: Graph, weights, d: int, A: int, W: int) -> int:
    """Upper bound on the weight of S within W such that A + S is d-degenerate.

    A subgraph of minimum degree d + 1 must lose a vertex of W.  Obstacles
    found greedily with disjoint W-parts each cost their lightest W-vertex.
    """
    total = sum(weights[v] for v in _members(W))
    rem = W
    k = d + 1
    while True:
        K = core(G, A | rem, k)
        if not K & rem:
            return total
        # shrink towards a minimal obstacle, dropping light W-vertices first
        for v in sorted(_members(K & rem), key=lambda x: weights[x]) + list(_members(K & A)):
            if not (K >> v) & 1:
                continue
            K2 = core(G, K & ~(1 << v), k)
            if K2 & rem:
                K = K2
        T = K & rem
        total -= min(weights[v] for v in _members(T))
        rem &= ~T


def greedy_degenerate_set(G: Graph, weights, d: int) -> int:
    S = 0
    for v in sorted(range(G.n), key=lambda v: (-weights[v], v)):
        if greedy_degeneracy_ordering(G, S | (1 << v))[0] <= d:
            S |= 1 << v
    return S


@lru_cache(maxsize=None)
def _min_level(size: int) -> int:
    """Least level whose capacity exceeds ``size``."""
    level = 0
    while not below_capacity(size, level):
        level += 1
    return level


@lru_cache(maxsize=1 << 16)
def _submasks(mask: int, k: int) -> tuple[int, ...]:
    return tuple(submasks_upto(mask, k))


def _mask_of(vertices) -> int:
    return from_iter(vertices)


@lru_cache(maxsize=1 << 18)
def _members(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


class _Search:
    def __init__(self, G: Graph, d: int, rule: PivotRule, cfg: SolverConfig, stats: SolveStats):
        self.G = G
        self.n = G.n
        self.d = d
        self.rule = rule
        self.cfg = cfg
        self.stats = stats
        n = G.n
        self.w = [G.weights[v] * (1 << n) + (1 << (n - 1 - v)) for v in range(n)]
        self.t0 = time.perf_counter()
        self.ticks = 0
        self._bounds: dict = {}
        # pruned runs compare positions only by order (see _slots)
        self.spacing = 2 * (d + 2)
        self.top = n if not cfg.prune else float("inf")

    # -- bookkeeping --

    def count(self, kind: str, k: int = 1) -> None:
        self.stats.nodes[kind] += k
        if kind in ("leaf", "filter", "branch"):
            self.ticks += k
            cfg = self.cfg
            if cfg.budget_nodes is not None and self.stats.work_nodes > cfg.budget_nodes:
                self.stats.elapsed = time.perf_counter() - self.t0
                raise BudgetExceeded(f"node budget of {cfg.budget_nodes} exceeded", stats=self.stats)
            if cfg.budget_secs is not None and (self.ticks & 255) == 0:
                if time.perf_counter() - self.t0 > cfg.budget_secs:
                    self.stats.elapsed = time.perf_counter() - self.t0
                    raise BudgetExceeded(f"time budget of {cfg.budget_secs}s exceeded", stats=self.stats)

    def see_path(self, succ: int, splits: int) -> None:
        s = self.stats
        if succ > s.max_success_per_path:
            s.max_success_per_path = succ
        if splits > s.max_split_per_path:
            s.max_split_per_path = splits

    def bound(self, A: int, W: int) -> int:
        key = (A & self.G.neighborhood(W), W)
        b = self._bounds.get(key)
        if b is None:
            b = clique_cover_bound(self.G, self.w, self.d, W)
            if self.d:
                # with d = 0 the obstacles are single edges, which the cliques already cover
                b = min(b, obstacle_bound(self.G, self.w, self.d, key[0], W))
            if len(self._bounds) > 1 << 20:
                self._bounds.clear()
            self._bounds[key] = b
        return b

    def wsum(self, S: int) -> int:
        return sum(self.w[v] for v in _members(S))

    # -- recursion --

    def expand(self, A: int, W: int, level: int, eta: dict, zeta: dict, lb, ctx, succ: int, splits: int):
        """Best gain from W that exceeds ``lb`` as (gain, taken, positions), or None.

        ``lb`` of None means no threshold.
        """
        G = self.G
        prune = self.cfg.prune
        if prune and lb is not None and self.bound(A, W) <= lb:
            self.stats.pruned_bound += 1
            self.see_path(succ, splits)
            return None
        comps = connected_components(G, W) if W else []
        total = W.bit_count()
        biggest = max((c.bit_count() for c in comps), default=0)
        # chains of one-part splits, each followed by a free node
        chain = level - min(level, _min_level(total))
        if chain:
            level -= chain
            self.count("split", chain)
            self.count("free", chain)
            splits += chain
            ctx = None
        if level == 0:
            self.count("leaf")
            self.see_path(succ, splits)
            if lb is not None and 0 <= lb:
                return None
            return (0, 0, {})
        if below_capacity(biggest, level - 1):
            return self.split(A, W, level, eta, zeta, lb, comps, succ, splits)
        return self.branch(A, W, level, eta, zeta, lb, ctx, succ, splits)

    def split(self, A, W, level, eta, zeta, lb, comps, succ, splits):
        self.count("split")
        comps = sorted(comps, key=lambda c: (-c.bit_count(), c & -c))
        tot = 0
        first = 0
        for c in comps:
            if below_capacity(tot + c.bit_count(), level - 1):
                tot += c.bit_count()
                first |= c
            else:
                break
        parts = sorted([first, W & ~first], key=lambda m: m & -m)
        p1, p2 = parts
        self.count("free", 2)
        z1 = {v: zeta[v] for v in _members(p1)}
        z2 = {v: zeta[v] for v in _members(p2)}
        lb1 = None if lb is None else lb - self.bound(A, p2)
        r1 = self.expand(A, p1, level - 1, eta, z1, lb1, None, succ, splits + 1)
        if r1 is None:
            return None
        lb2 = None if lb is None else lb - r1[0]
        r2 = self.expand(A, p2, level - 1, eta, z2, lb2, None, succ, splits + 1)
        if r2 is None:
            return None
        pos = dict(r1[2])
        pos.update(r2[2])
        return (r1[0] + r2[0], r1[1] | r2[1], pos)

    def branch(self, A, W, level, eta, zeta, lb, ctx, succ, splits):
        G, d, n = self.G, self.d, self.n
        adj = G.adj
        self.count("branch")
        decision = self.rule.choose(W, ctx)
        nu = decision.pivot
        child_ctx = decision.context
        prune = self.cfg.prune
        validate = self.cfg.validate
        best = None  # (gain, taken, positions)

        def cur():
            if best is None:
                return lb
            return best[0] if lb is None else max(lb, best[0])

        seen = set()
        cap = quota(G, eta, nu, zeta[nu], d)
        nbr_w = adj[nu] & W
        for D in _submasks(nbr_w, cap):
            Dp = D | (1 << nu)
            gain_taken = self.wsum(Dp)
            if prune:
                c = cur()
                if c is not None and gain_taken + self.bound(A | Dp, W & ~Dp) <= c:
                    self.stats.pruned_bound += 1
                    continue
            order = to_list(Dp)
            W2 = W & ~Dp
            A2 = A | Dp
            relevant_a = from_iter(a for a in _members(A) if adj[a] & Dp)
            placements = self._slots(order, eta, zeta, A) if prune else self._placements(order, eta, zeta)
            for e2 in placements:
                # dead regardless of the left sets when some taken or touched
                # vertex already has too many earlier neighbours among A2
                if self._a_overfull(order, relevant_a, e2, A2):
                    continue
                choices = []
                for u in order:
                    if u == nu:
                        choices.append((0,))
                        continue
                    q = quota(G, e2, u, e2[u], d)
                    src = (W2 & adj[u]) if prune else W2
                    choices.append(_submasks(src, q))
                if any(not c for c in choices):
                    continue
                same_pos = set()
                for sets in product(*choices):
                    left = dict(zip(order, sets))
                    z3 = {}
                    for x in _members(W2):
                        val = zeta[x]
                        for u in _members(adj[x] & Dp):
                            if not (left[u] >> x) & 1:
                                v2 = 1 + e2[u]
                                if v2 > val:
                                    val = v2
                        z3[x] = val
                    if prune:
                        # left sets that give the same bounds give the same child
                        zk = tuple(z3.values())
                        if zk in same_pos:
                            self.stats.pruned_duplicate += 1
                            continue
                        same_pos.add(zk)
                    # success child: a filter node
                    self.count("filter")
                    fr = self._filter(A2, W2, e2, z3)
                    if fr is None:
                        self.see_path(succ + 1, splits)
                        continue
                    W3, z4, cnt = fr
                    if validate:
                        self._check_quota_drop(nu, W, eta, zeta, W3, e2, z4)
                    e3 = e2
                    if prune:
                        e3, z4 = self._renumber(e2, z4)
                        key = (Dp, W3, tuple(sorted(z4.items())),
                               tuple((a, e3[a], cnt[a]) for a in _members(A2) if adj[a] & W3))
                        if key in seen:
                            self.stats.pruned_duplicate += 1
                            continue
                        seen.add(key)
                    self.count("free")
                    c = cur()
                    sub_lb = None if c is None else c - gain_taken
                    r = self.expand(A2, W3, level, e3, z4, sub_lb, child_ctx, succ + 1, splits)
                    if r is not None:
                        g = r[0] + gain_taken
                        if best is None or g > best[0]:
                            p = dict(r[2])
                            for u in order:
                                p[u] = e2[u]
                            best = (g, r[1] | Dp, p)
        # failure child
        z2 = dict(zeta)
        del z2[nu]
        r = self.expand(A, W & ~(1 << nu), level, eta, z2, cur(), child_ctx, succ, splits)
        if r is not None and (best is None or r[0] > best[0]):
            best = r
        if best is None or (lb is not None and best[0] <= lb):
            return None
        return best

    def _placements(self, order, eta, zeta):
        """Edge-injective positions for the vertices of ``order`` in [zeta, n]."""
        adj, n = self.G.adj, self.n
        k = len(order)
        e2 = dict(eta)

        def rec(i):
            if i == k:
                yield dict(e2)
                return
            u = order[i]
            taken = {e2[w] for w in _members(adj[u]) if w in e2}
            for p in range(zeta[u], n + 1):
                if p in taken:
                    continue
                e2[u] = p
                yield from rec(i + 1)
            e2.pop(u, None)

        yield from rec(0)

    def _slots(self, order, eta, zeta, A):
        """Positions for ``order`` up to their order relative to A.

        Only comparisons between positions matter, so each new vertex picks a
        gap between consecutive A positions and vertices sharing a gap pick
        an order.  A positions sit at multiples of ``spacing`` (see
        :meth:`_renumber`), which leaves room for every new vertex in a gap.
        """
        sp = self.spacing
        gaps = A.bit_count() + 1
        allowed = [range((zeta[u] - 1) // sp, gaps) for u in order]
        for assign in product(*allowed):
            groups: dict[int, list[int]] = {}
            for i, g in enumerate(assign):
                groups.setdefault(g, []).append(i)
            for perms in product(*[permutations(ix) for ix in groups.values()]):
                e2 = dict(eta)
                for (g, _), perm in zip(groups.items(), perms):
                    for j, i in enumerate(perm):
                        e2[order[i]] = sp * g + 1 + j
                yield e2

    def _renumber(self, e2, z):
        """Move A positions to spacing, 2 * spacing, ... keeping their order.

        Every lower bound is 1 or one more than an A position, so it maps along.
        """
        sp = self.spacing
        new = {p: sp * (i + 1) for i, p in enumerate(sorted(e2.values()))}
        return ({v: new[p] for v, p in e2.items()},
                {x: (1 if b == 1 else new[b - 1] + 1) for x, b in z.items()})

    def _a_overfull(self, order, relevant_a, e2, A2) -> bool:
        adj, d = self.G.adj, self.d
        for v in list(order) + to_list(relevant_a):
            p = e2[v]
            c = 0
            for u in _members(adj[v] & A2):
                if e2[u] < p:
                    c += 1
            if c > d:
                return True
        return False

    def _filter(self, A2, W2, e2, z3):
        """Filtering step: None if dead, else (W, zeta, earlier-neighbour counts)."""
        G, d, n = self.G, self.d, self.n
        adj = G.adj
        cnt = {}
        for v in _members(A2):
            p = e2[v]
            c = 0
            for u in _members(adj[v] & A2):
                if e2[u] < p:
                    c += 1
            cnt[v] = c
            for u in _members(adj[v] & W2):
                if z3[u] <= p:
                    c += 1
            if c > d:
                return None
        W3 = W2
        top = self.top
        for x in _members(W2):
            z = z3[x]
            if z > top:
                W3 &= ~(1 << x)
                continue
            c = 0
            for u in _members(adj[x] & A2):
                if e2[u] < z:
                    c += 1
            if c > d:
                W3 &= ~(1 << x)
        if W3 != W2:
            z3 = {x: z3[x] for x in _members(W3)}
        return W3, z3, cnt

    def _check_quota_drop(self, nu, W, eta, zeta, W3, e2, z4) -> None:
        """Every neighbour of the pivot left active lost at least one unit of quota."""
        G, d = self.G, self.d
        for u in _members(G.adj[nu] & W3):
            self.stats.quota_checks += 1
            before = quota(G, eta, u, zeta[u], d)
            after = quota(G, e2, u, z4[u], d)
            if after > before - 1:
                raise ViolationError(f"quota of {u} did not drop after a success branch on {nu}",
                                     certificate={"pivot": nu, "vertex": u, "before": before, "after": after})


def _check_class(G: Graph, t: int, mode: str) -> None:
    if mode == "pt" and G.n <= oracle.PATH_CAP:
        path = oracle.find_induced_path(G, t)
        if path is not None:
            raise ViolationError(f"graph has an induced path on {t} vertices", certificate=path)
    if mode == "cgt" and G.n <= oracle.CYCLE_CAP:
        cyc = oracle.find_long_induced_cycle(G, t)
        if cyc is not None:
            raise ViolationError(f"graph has an induced cycle longer than {t}", certificate=cyc)


def solve_max_degenerate(G: Graph, d: int, t: int, mode: str = "pt", config: SolverConfig | None = None,
                         problem: str = "degenerate") -> SolveResult:
    """Maximum-weight S such that G[S] is d-degenerate, with a witnessing ordering.

    ``mode`` is ``"pt"`` for P_t-free inputs or ``"cgt"`` for inputs without
    induced cycles longer than t.
    """
    cfg = config or SolverConfig()
    if d < 0:
        raise ContractError("d must be nonnegative")
    if t < 2:
        raise ContractError("t must be at least 2")
    if mode not in ("pt", "cgt"):
        raise ContractError(f"unknown mode {mode!r}")
    if cfg.check_class:
        _check_class(G, t, mode)
    stats = SolveStats(G.n, G.m, problem, d, t, mode)
    rule = make_rule(mode, G, t, cfg.strategy, cfg.validate)
    search = _Search(G, d, rule, cfg, stats)
    level = root_level(G.n)
    stats.root_level = level
    lb = None
    if cfg.prune:
        lb = search.wsum(greedy_degenerate_set(G, search.w, d)) - 1
    try:
        res = search.expand(0, G.vertices, level, {}, {v: 1 for v in range(G.n)}, lb, None, 0, 0)
    finally:
        stats.rule = dict(rule.counters)
        stats.elapsed = time.perf_counter() - search.t0
    if res is None:
        raise ViolationError("search returned no solution")
    gain, S, pos = res
    weight = gain >> G.n
    if cfg.prune:
        # positions live in per-node frames; any d-degenerate set has a peeling order
        pos = greedy_degeneracy_ordering(G, S)[1]
    if cfg.validate:
        if not validate_degeneracy_ordering(G, pos, d, S):
            raise ViolationError("returned ordering is not a d-degeneracy ordering", certificate=pos)
        if stats.max_split_per_path > level:
            raise ViolationError("too many split nodes on a path")
    return SolveResult(weight, S, {v: pos[v] for v in bits(S)}, stats)


def solve_mwis(G: Graph, t: int, mode: str = "pt", config: SolverConfig | None = None) -> SolveResult:
    return solve_max_degenerate(G, 0, t, mode, config, problem="mwis")


# --- potentials ---------------------------------------------------------------

def potential_mu(G: Graph, R: Subproblem, d: int, t: int, kind: str = "path", chip: int | None = None) -> float:
    """Progress measure of a subproblem.

    ``path``: sum over pairs of W of log2(1 + weighted path count);
    ``tripod``: the same over triples and tripods;
    ``link``: sum over pairs of chip neighbours of log2(weighted link count).
    The weight of a vertex is one plus its quota at its lower bound.
    """
    W = R.W
    if not W:
        return 0.0
    qw = bk.quota_weights(G, W, R.eta, R.zeta, d)
    if kind == "path":
        idx = bk.path_buckets(G, t, W)
        return bk.potential(G, W, idx.witnesses, qw)
    if kind == "tripod":
        idx = bk.tripod_buckets(G, t, W, keep_witnesses=True)
        return bk.potential(G, W, idx.witnesses, qw)
    if kind == "link":
        if chip is None:
            raise ContractError("the link potential needs a chip")
        idx = bk.c_link_buckets(G, W, chip, t)
        return bk.potential(G, W, idx.witnesses, qw, plus_one=False)
    raise ContractError(f"unknown potential {kind!r}")


__all__ = ["SolverConfig", "SolveStats", "SolveResult", "solve_max_degenerate", "solve_mwis",
           "clique_cover_bound", "greedy_degenerate_set", "potential_mu", "tiebreak_key", "NODE_KINDS",
           "DEFAULT_BUDGET_NODES", "DEFAULT_BUDGET_SECS"]
