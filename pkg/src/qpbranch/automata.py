"""Threshold automata on labelled treedepth decompositions, and a solver for
maximum-weight induced subgraphs whose decomposition an automaton accepts.

Forests are parent maps ``{v: parent or None}``.  Multisets of states are
canonical tuples sorted by the automaton's state order, each state repeated
at most ``tau`` times.  Labels produced by :func:`default_labeller` are
strings ``"h:bits"``: the depth h and, for i = 1..d, whether the vertex is
adjacent to its ancestor at depth i.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import log2
from typing import Callable, Iterable, Mapping

from . import buckets as bk
from .bitset import bits, from_iter, to_list
from .errors import ContractError, NoSolution, ViolationError
from .graph import Graph, connected_components

Parent = Mapping[int, "int | None"]
Labeller = Callable[[Graph, Parent, int, int], str]

BRUTE_MAX_N = 10
BRUTE_MAX_D = 3
DEFAULT_CLOSURE_CAP = 6


# --- forests -----------------------------------------------------------------

def depths(parent: Parent) -> dict[int, int]:
    out: dict[int, int] = {}
    for v in parent:
        chain = []
        x = v
        while x is not None and x not in out:
            chain.append(x)
            x = parent[x]
        base = 0 if x is None else out[x]
        for y in reversed(chain):
            base += 1
            out[y] = base
    return out


def children_of(parent: Parent) -> dict[int, list[int]]:
    ch: dict[int, list[int]] = {v: [] for v in parent}
    for v, p in parent.items():
        if p is not None:
            ch[p].append(v)
    for v in ch:
        ch[v].sort()
    return ch


def ancestors(parent: Parent, v: int) -> list[int]:
    """Proper ancestors of v, nearest first."""
    out = []
    x = parent[v]
    while x is not None:
        out.append(x)
        x = parent[x]
    return out


def check_forest(parent: Parent) -> None:
    for v, p in parent.items():
        if p is not None and p not in parent:
            raise ContractError(f"parent {p} of {v} is outside the forest")
    seen_ok: set[int] = set()
    for v in parent:
        path = set()
        x = v
        while x is not None and x not in seen_ok:
            if x in path:
                raise ContractError("parent map has a cycle")
            path.add(x)
            x = parent[x]
        seen_ok |= path


def is_decomposition(G: Graph, S: int, parent: Parent, d: int | None = None) -> bool:
    """Forest on S whose every edge of G[S] joins an ancestor and a descendant."""
    if set(parent) != set(bits(S)):
        return False
    check_forest(parent)
    dep = depths(parent)
    if d is not None and any(h > d for h in dep.values()):
        return False
    for v in bits(S):
        anc = set(ancestors(parent, v))
        for u in bits(G.adj[v] & S):
            if u not in anc and v not in set(ancestors(parent, u)):
                return False
    return True


def is_proper(G: Graph, parent: Parent) -> bool:
    ch = children_of(parent)
    for u, v in parent.items():
        if v is None:
            continue
        if not any(G.has_edge(v, w) for w in _subtree(ch, u)):
            return False
    return True


def _subtree(ch: Mapping[int, list[int]], u: int) -> list[int]:
    out = [u]
    i = 0
    while i < len(out):
        out.extend(ch[out[i]])
        i += 1
    return out


def make_proper(G: Graph, parent: Parent) -> dict[int, int | None]:
    """Reattach u to its grandparent while no descendant of u sees its parent.

    Each step lowers the sum of depths, so this terminates; depth never grows.
    """
    par = dict(parent)
    check_forest(par)
    changed = True
    while changed:
        changed = False
        ch = children_of(par)
        for u in sorted(par):
            v = par[u]
            if v is None:
                continue
            if not any(G.has_edge(v, w) for w in _subtree(ch, u)):
                par[u] = par[v]
                changed = True
                break
    return par


# --- multisets ---------------------------------------------------------------

def cap_multiset(items: Iterable, tau: int, order: Mapping | None = None) -> tuple:
    """Multiset with every multiplicity cut down to tau, as a canonical tuple."""
    c = Counter(items)
    keys = sorted(c, key=(lambda q: order[q]) if order is not None else (lambda q: (str(type(q)), q)))
    out = []
    for q in keys:
        out.extend([q] * min(c[q], tau))
    return tuple(out)


# --- automata ------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdAutomaton:
    """(Q, Sigma, tau, delta, C).  ``delta`` is a table or a callback."""

    states: tuple
    alphabet: tuple | None
    tau: int
    delta: Mapping | Callable = field(repr=False)
    accept: frozenset = frozenset()
    name: str = "custom"

    def __post_init__(self):
        if self.tau < 0:
            raise ContractError("tau must be nonnegative")
        if len(set(self.states)) != len(self.states):
            raise ContractError("duplicate states")

    @property
    def order(self) -> dict:
        return {q: i for i, q in enumerate(self.states)}

    def cap(self, items: Iterable) -> tuple:
        return cap_multiset(items, self.tau, self.order)

    def step(self, symbol, multiset: tuple):
        if self.alphabet is not None and symbol not in self.alphabet:
            raise ContractError(f"symbol {symbol!r} is not in the alphabet")
        if callable(self.delta):
            q = self.delta(symbol, multiset)
        else:
            key = (symbol, multiset)
            if key not in self.delta:
                raise ContractError(f"transition undefined for {symbol!r} and {list(multiset)}")
            q = self.delta[key]
        if q not in self.order:
            raise ContractError(f"transition leads to unknown state {q!r}")
        return q

    def accepts(self, roots: tuple) -> bool:
        return roots in self.accept

    def multisets(self) -> list[tuple]:
        """All of Multi(Q, tau)."""
        out = []
        for counts in product(range(self.tau + 1), repeat=len(self.states)):
            ms = []
            for q, c in zip(self.states, counts):
                ms.extend([q] * c)
            out.append(tuple(ms))
        return out

    def closure_bound(self, d: int) -> int:
        return d * d * (len(self.states) * self.tau) ** max(d - 1, 0)

    def to_json(self, d: int | None = None) -> dict:
        """JSON form; callback transitions are tabulated over the depth-d alphabet."""
        alphabet = self.alphabet
        if alphabet is None:
            if d is None:
                raise ContractError("a callback automaton needs d to be tabulated")
            alphabet = tuple(label_alphabet(d))
        rows = []
        for sym in alphabet:
            for ms in self.multisets():
                rows.append([sym, list(ms), self.step(sym, ms)])
        return {"states": list(self.states), "alphabet": list(alphabet), "tau": self.tau, "delta": rows,
                "accept": [list(m) for m in sorted(self.accept, key=lambda m: (len(m), [self.order[q] for q in m]))]}


def automaton_from_json(data: dict | str) -> ThresholdAutomaton:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        states = tuple(data["states"])
        alphabet = tuple(data["alphabet"])
        tau = int(data["tau"])
        rows = data["delta"]
        accept = data["accept"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ContractError(f"malformed automaton: {exc}") from None
    order = {q: i for i, q in enumerate(states)}
    for m in accept:
        for q in m:
            if q not in order:
                raise ContractError(f"accepting multiset uses unknown state {q!r}")
    table = {}
    for row in rows:
        if len(row) != 3:
            raise ContractError("delta rows are [symbol, multiset, state]")
        sym, ms, q = row
        if sym not in alphabet:
            raise ContractError(f"delta uses unknown symbol {sym!r}")
        if q not in order or any(x not in order for x in ms):
            raise ContractError("delta uses an unknown state")
        table[(sym, cap_multiset(ms, tau, order))] = q
    return ThresholdAutomaton(states, alphabet, tau, table,
                              frozenset(cap_multiset(m, tau, order) for m in accept), data.get("name", "custom"))


def load_automaton(path) -> ThresholdAutomaton:
    with open(path) as fh:
        return automaton_from_json(json.load(fh))


# --- labels --------------------------------------------------------------------

def label_alphabet(d: int) -> list[str]:
    out = []
    for h in range(1, d + 1):
        for f in product("01", repeat=h - 1):
            out.append(f"{h}:{''.join(f) + '0' * (d - h + 1)}")
    return out


def parse_label(sym: str) -> tuple[int, str]:
    h, f = sym.split(":")
    return int(h), f


def vertex_label(G: Graph, parent: Parent, v: int, d: int) -> str:
    """(depth, adjacency to the ancestors at depths 1..d), encoded as ``"h:bits"``."""
    anc = ancestors(parent, v)[::-1]   # root first
    h = len(anc) + 1
    if h > d:
        raise ContractError(f"vertex {v} is at depth {h} > {d}")
    f = ["1" if G.has_edge(v, a) else "0" for a in anc] + ["0"] * (d - h + 1)
    return f"{h}:{''.join(f)}"


def default_labeller(G: Graph, parent: Parent, d: int) -> dict[int, str]:
    return {v: vertex_label(G, parent, v, d) for v in parent}


# --- runs ----------------------------------------------------------------------

def run_automaton(aut: ThresholdAutomaton, parent: Parent, labels: Mapping[int, object],
                  order: Iterable[int] | None = None) -> tuple[dict, bool]:
    """Bottom-up run and acceptance.

    ``order`` may fix the evaluation order; it must list children before
    parents.  The run does not depend on it.
    """
    check_forest(parent)
    ch = children_of(parent)
    if order is None:
        dep = depths(parent)
        order = sorted(parent, key=lambda v: (-dep[v], v))
    run: dict = {}
    for v in order:
        if any(c not in run for c in ch[v]):
            raise ContractError("evaluation order visits a parent before its children")
        run[v] = aut.step(labels[v], aut.cap(run[c] for c in ch[v]))
    if len(run) != len(parent):
        raise ContractError("evaluation order misses vertices")
    roots = aut.cap(run[v] for v, p in parent.items() if p is None)
    return run, aut.accepts(roots)


def accepts_set(G: Graph, aut: ThresholdAutomaton, S: int, parent: Parent, d: int) -> bool:
    sub_parent = dict(parent)
    labels = default_labeller(G, sub_parent, d)
    return run_automaton(aut, sub_parent, labels)[1]


# --- builtin automata ------------------------------------------------------------

def edgeless_automaton() -> ThresholdAutomaton:
    """Accepts iff no vertex is adjacent to an ancestor."""
    def delta(sym, ms):
        _, f = parse_label(sym)
        return "bad" if "1" in f or "bad" in ms else "ok"

    return ThresholdAutomaton(("ok", "bad"), None, 1, delta, frozenset({(), ("ok",)}), "edgeless")


def matching_automaton() -> ThresholdAutomaton:
    """Accepts iff every tree is a lone root or a root with one adjacent leaf child."""
    def delta(sym, ms):
        h, f = parse_label(sym)
        if not ms:
            if h == 1:
                return "single"
            if h == 2 and f[0] == "1":
                return "leaf"
            return "bad"
        if h == 1 and ms == ("leaf",):
            return "pair"
        return "bad"

    accept = frozenset(m for m in product_multisets(("single", "pair"), 2))
    return ThresholdAutomaton(("single", "pair", "leaf", "bad"), None, 2, delta, accept, "induced-matching")


def product_multisets(states: tuple, tau: int) -> list[tuple]:
    out = []
    for counts in product(range(tau + 1), repeat=len(states)):
        ms = []
        for q, c in zip(states, counts):
            ms.extend([q] * c)
        out.append(tuple(ms))
    return out


BUILTINS = {"edgeless": edgeless_automaton, "matching": matching_automaton,
            "induced-matching": matching_automaton}


def builtin_automaton(kind: str) -> ThresholdAutomaton:
    try:
        return BUILTINS[kind]()
    except KeyError:
        raise ContractError(f"unknown builtin automaton {kind!r}") from None


# --- brute force -------------------------------------------------------------------

def proper_decompositions(G: Graph, S: int, d: int):
    """Every proper decomposition of G[S] with depth <= d, as parent maps.

    In a proper decomposition each subtree spans a connected component of
    what remains below its parent, which makes the enumeration recursive.
    """
    def comp_trees(C: int, depth_left: int):
        if depth_left == 0:
            return
        for r in bits(C):
            rest = C & ~(1 << r)
            parts = connected_components(G, rest) if rest else []
            for combo in product(*[list(comp_trees(P, depth_left - 1)) for P in parts]):
                par = {r: None}
                for sub in combo:
                    for v, p in sub.items():
                        par[v] = r if p is None else p
                yield par

    comps = connected_components(G, S) if S else []
    for combo in product(*[list(comp_trees(C, d)) for C in comps]):
        par: dict = {}
        for sub in combo:
            par.update(sub)
        yield par


def _better(w: int, S: int, best) -> bool:
    if best is None or w > best[0]:
        return True
    if w != best[0]:
        return False
    diff = S ^ best[1]
    return bool(S & diff & -diff)


def brute_td_automaton(G: Graph, d: int, aut: ThresholdAutomaton, labeller=None):
    """Best S with a proper depth-<=d decomposition accepted by the automaton."""
    from .oracle import OracleResult

    if G.n > BRUTE_MAX_N or d > BRUTE_MAX_D:
        raise ContractError(f"automaton oracle is capped at n <= {BRUTE_MAX_N}, d <= {BRUTE_MAX_D}")
    t0 = time.perf_counter()
    best = None
    best_parent = None
    for S in range(1 << G.n):
        w = G.weight(S)
        if best is not None and w < best[0]:
            continue
        if best is not None and not _better(w, S, best):
            continue
        for par in proper_decompositions(G, S, d):
            labels = _labels(G, par, d, labeller)
            if run_automaton(aut, par, labels)[1]:
                best = (w, S)
                best_parent = par
                break
    if best is None:
        raise NoSolution("the automaton accepts no decomposition, not even the empty one")
    return OracleResult(best[0], best[1], time.perf_counter() - t0, {"parent": best_parent})


def _labels(G: Graph, parent: Parent, d: int, labeller) -> dict:
    if labeller is None:
        return default_labeller(G, parent, d)
    return {v: labeller(G, parent, v, d) for v in parent}


# --- the branching solver ------------------------------------------------------------

@dataclass
class TDStats:
    calls: int = 0
    memo_hits: int = 0
    success_children: int = 0
    failure_children: int = 0
    top_guesses: int = 0
    cleaned: int = 0
    mu_checks: int = 0
    mu_violations: int = 0
    max_success_per_path: int = 0
    closure_cap: int = 0
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return {"calls": self.calls, "memoHits": self.memo_hits, "successChildren": self.success_children,
                "failureChildren": self.failure_children, "topGuesses": self.top_guesses,
                "cleaned": self.cleaned, "muChecks": self.mu_checks, "muViolations": self.mu_violations,
                "maxSuccessPerPath": self.max_success_per_path, "closureCap": self.closure_cap,
                "timing": {"elapsedMs": round(self.elapsed * 1000.0, 3)}}


@dataclass
class TDResult:
    weight: int
    solution: int
    parent: dict
    stats: TDStats

    @property
    def vertices(self) -> list[int]:
        return to_list(self.solution)

    def as_dict(self) -> dict:
        out = self.stats.as_dict()
        out["weight"] = self.weight
        out["solution"] = self.vertices
        out["parent"] = {str(v): p for v, p in sorted(self.parent.items())}
        return out


class _State:
    """A partial solution: forest on A with labels, states and child multisets."""

    __slots__ = ("A", "parent", "depth", "label", "q", "Mu", "M")

    def __init__(self, A, parent, depth, label, q, Mu, M):
        self.A = A
        self.parent = parent
        self.depth = depth
        self.label = label
        self.q = q
        self.Mu = Mu
        self.M = M

    def extended(self, new_parent: dict, new_depth: dict, new_label: dict, new_q: dict, new_Mu: dict) -> "_State":
        p = dict(self.parent)
        p.update(new_parent)
        dp = dict(self.depth)
        dp.update(new_depth)
        lb = dict(self.label)
        lb.update(new_label)
        q = dict(self.q)
        q.update(new_q)
        mu = dict(self.Mu)
        mu.update(new_Mu)
        return _State(self.A | from_iter(new_parent), p, dp, lb, q, mu, self.M)


class _TDSearch:
    def __init__(self, G: Graph, d: int, t: int, aut: ThresholdAutomaton, labeller, closure_cap: int,
                 validate: bool, monitor: bool):
        self.G = G
        self.d = d
        self.t = t
        self.aut = aut
        self.labeller = labeller
        self.cap = closure_cap
        self.validate = validate
        self.monitor = monitor
        self.stats = TDStats(closure_cap=closure_cap)
        self.memo: dict = {}
        self.eps = Fraction(1, 2 * t)

    # -- labels of new vertices --

    def label_of(self, parent: Mapping, v: int) -> str:
        if self.labeller is None:
            return vertex_label(self.G, parent, v, self.d)
        return self.labeller(self.G, parent, v, self.d)

    # -- growing subtrees --

    def trees(self, attach, st: _State | None, D: int, must: int | None):
        """Trees on vertices of D hung below ``attach`` (None for a new root).

        Each yield is (parent map of the new vertices, their depths).  Every
        edge of G between a new vertex and the forest must go to an ancestor.
        """
        G, d, cap = self.G, self.d, self.cap
        base_depth = 0 if attach is None else st.depth[attach]
        A = 0 if st is None else st.A
        chain = set() if attach is None else {attach} | set(ancestors(st.parent, attach))
        seen = set()
        for rho in bits(D):
            # the top new vertex sees only the chain above it
            if G.adj[rho] & A & ~from_iter(chain):
                continue
            start = ({rho: attach}, {rho: base_depth + 1})
            stack = [start]
            while stack:
                par, dep = stack.pop()
                key = frozenset(par.items())
                if key in seen:
                    continue
                seen.add(key)
                if must is None or must in par:
                    yield par, dep
                if len(par) >= cap:
                    continue
                used = from_iter(par)
                for x in par:
                    if dep[x] >= d:
                        continue
                    anc_x = {x} | self._new_ancestors(par, x) | chain
                    allowed = from_iter(anc_x)
                    for w in bits(D & ~used):
                        if G.adj[w] & (A | used) & ~allowed:
                            continue
                        p2 = dict(par)
                        p2[w] = x
                        d2 = dict(dep)
                        d2[w] = dep[x] + 1
                        stack.append((p2, d2))

    @staticmethod
    def _new_ancestors(par: Mapping, x: int) -> set:
        out = set()
        y = par[x]
        while y is not None and y in par:
            out.add(y)
            y = par[y]
        return out

    def evaluate(self, st: _State | None, par: dict, dep: dict):
        """Labels, states and child multisets of a new subtree, bottom-up."""
        full_parent = dict(st.parent) if st is not None else {}
        full_parent.update(par)
        label = {v: self.label_of(full_parent, v) for v in par}
        ch: dict[int, list[int]] = {v: [] for v in par}
        for v, p in par.items():
            if p in ch:
                ch[p].append(v)
        q: dict = {}
        Mu: dict = {}
        for v in sorted(par, key=lambda x: -dep[x]):
            Mu[v] = self.aut.cap(q[c] for c in ch[v])
            q[v] = self.aut.step(label[v], Mu[v])
        return label, q, Mu

    # -- cleanup --

    def clean(self, st: _State, D: int) -> int:
        """Vertices of D that cannot join: a depth-d neighbour, or two incomparable neighbours."""
        G, d = self.G, self.d
        out = 0
        for r in bits(D):
            nb = to_list(G.adj[r] & st.A)
            if not nb:
                continue
            if any(st.depth[u] >= d for u in nb):
                out |= 1 << r
                continue
            deepest = max(nb, key=lambda u: st.depth[u])
            chain = {deepest} | set(ancestors(st.parent, deepest))
            if any(u not in chain for u in nb):
                out |= 1 << r
        return out

    # -- recursion --

    def signature(self, st: _State, D: int) -> tuple:
        G = self.G
        touch = G.neighborhood(D) & st.A
        rel = set()
        for u in bits(touch):
            rel.add(u)
            rel.update(ancestors(st.parent, u))
        return (D, st.M, tuple(sorted((u, st.parent[u], st.label[u], st.q[u], st.Mu[u]) for u in rel)))

    def pivot(self, D: int) -> int:
        if D.bit_count() == 1:
            return D.bit_length() - 1
        idx = bk.path_hit_index(self.G, self.t, D)
        v = bk.heavy_vertex(self.G, self.eps, idx)
        if v is None:
            raise ViolationError("no heavy vertex in a component; the graph is not P_t-free",
                                 certificate=to_list(D))
        return v

    def solve_component(self, st: _State, D: int, succ: int):
        """Best extension of st completely into D: (gain, new parent entries)."""
        self.stats.calls += 1
        key = self.signature(st, D)
        hit = self.memo.get(key)
        if hit is not None:
            self.stats.memo_hits += 1
            return hit
        G, aut = self.G, self.aut
        v = self.pivot(D)
        mu = self.potential(st, D) if self.monitor else None
        level = D.bit_count().bit_length()
        best = None
        # failure branch
        self.stats.failure_children += 1
        res = self.solve_rest(st, D & ~(1 << v), succ, None, None)
        best = _pick(best, res)
        # success branch
        attaches = [None] + [a for a in sorted(bits(G.neighborhood(D) & st.A)) if st.depth[a] < self.d]
        for a in attaches:
            for par, dep in self.trees(a, st, D, v):
                label, q, Mu = self.evaluate(st, par, dep)
                top = next(x for x in par if par[x] == a)
                qt = q[top]
                have = st.M if a is None else st.Mu[a]
                # the capped multiset above must not change
                if aut.cap(list(have) + [qt]) != have:
                    continue
                st2 = st.extended(par, dep, label, q, Mu)
                if self.validate:
                    self.check_partial(st2)
                self.stats.success_children += 1
                rest = D & ~from_iter(par)
                mu_ctx = (mu, level) if self.monitor else None
                res = self.solve_rest(st2, rest, succ + 1, par, mu_ctx)
                best = _pick(best, res)
        self.memo[key] = best
        return best

    def solve_rest(self, st: _State, rest: int, succ: int, added, mu_ctx):
        """Clean ``rest``, then solve its components independently and assemble."""
        X = self.clean(st, rest)
        self.stats.cleaned += X.bit_count()
        rest &= ~X
        if succ > self.stats.max_success_per_path:
            self.stats.max_success_per_path = succ
        gain = 0 if added is None else self.G.weight(from_iter(added))
        entries = dict(added) if added else {}
        for C in connected_components(self.G, rest) if rest else []:
            if mu_ctx is not None and C.bit_count().bit_length() == mu_ctx[1]:
                self.stats.mu_checks += 1
                if not self.potential(st, C) < mu_ctx[0]:
                    self.stats.mu_violations += 1
            g, e = self.solve_component(st, C, succ)
            gain += g
            entries.update(e)
        return gain, entries

    def potential(self, st: _State, D: int) -> float:
        """Sum over pairs of D of log2 of the path weights, a vertex weighing
        d + 1 minus the deepest position among its neighbours in the forest."""
        G, d = self.G, self.d
        capw = {}
        for w in bits(D):
            nb = [st.depth[u] for u in bits(G.adj[w] & st.A)]
            capw[w] = d + 1 - (max(nb) if nb else 0)
        idx = bk.path_buckets(G, self.t, D)
        return bk.potential(G, D, idx.witnesses, capw, plus_one=False)

    def check_partial(self, st: _State) -> None:
        aut = self.aut
        ch = children_of(st.parent)
        for v in st.parent:
            if st.Mu[v] != aut.cap(st.q[c] for c in ch[v]):
                raise ViolationError(f"child multiset of {v} is inconsistent")
            if st.q[v] != aut.step(st.label[v], st.Mu[v]):
                raise ViolationError(f"state of {v} is inconsistent")
        roots = aut.cap(st.q[v] for v, p in st.parent.items() if p is None)
        if roots != st.M or not aut.accepts(st.M):
            raise ViolationError("root multiset is inconsistent")

    # -- top level --

    def root_trees(self, q_wanted, used: int, V: int):
        for par, dep in self.trees(None, None, V & ~used, None):
            if any(self.G.adj[x] & used for x in par):
                continue
            label, q, Mu = self.evaluate(None, par, dep)
            top = next(x for x in par if par[x] is None)
            if q[top] == q_wanted:
                yield par, dep, label, q, Mu

    def top_level(self):
        G, aut = self.G, self.aut
        best = None
        V = G.vertices
        for M in sorted(aut.accept, key=lambda m: (len(m), [aut.order[x] for x in m])):
            for st in self._initial_states(M, list(M), 0, None, -1, V):
                self.stats.top_guesses += 1
                if self.validate:
                    self.check_partial(st)
                g, e = self.solve_rest(st, V & ~st.A, 0, None, None)
                g += G.weight(st.A)
                e = {**{v: st.parent[v] for v in bits(st.A)}, **e}
                best = _pick(best, (g, e))
        return best

    def _initial_states(self, M, wanted, used, st, last_root, V):
        if not wanted:
            yield st if st is not None else _State(0, {}, {}, {}, {}, {}, M)
            return
        q0 = wanted[0]
        # roots of equal state come in increasing order
        same = len(wanted) > 1 and wanted[1] == q0
        for par, dep, label, q, Mu in self.root_trees(q0, used, V):
            top = next(x for x in par if par[x] is None)
            if top <= last_root:
                continue
            base = st if st is not None else _State(0, {}, {}, {}, {}, {}, M)
            st2 = base.extended(par, dep, label, q, Mu)
            yield from self._initial_states(M, wanted[1:], used | from_iter(par), st2,
                                            top if same else -1, V)


def _pick(best, cand):
    """Heavier wins; ties go to the set holding the smallest differing vertex."""
    if cand is None:
        return best
    if best is None:
        return cand
    return cand if _better(cand[0], from_iter(cand[1]), (best[0], from_iter(best[1]))) else best


def solve_td_automaton(G: Graph, d: int, t: int, aut: ThresholdAutomaton, labeller=None,
                       closure_cap: int | None = None, validate: bool = False, monitor: bool = False) -> TDResult:
    """Heavy S with a depth-<=d decomposition F of G[S] that the automaton accepts.

    The weight is at least the best over sets with a proper accepted
    decomposition.  ``closure_cap`` limits the guessed closure sets; by
    default it is the smaller of the closure bound and 6.
    """
    if d < 1:
        raise ContractError("d must be at least 1")
    if t < 2:
        raise ContractError("t must be at least 2")
    cap = closure_cap if closure_cap is not None else min(aut.closure_bound(d), DEFAULT_CLOSURE_CAP)
    cap = max(cap, 1)
    search = _TDSearch(G, d, t, aut, labeller, cap, validate, monitor)
    t0 = time.perf_counter()
    best = search.top_level()
    search.stats.elapsed = time.perf_counter() - t0
    if best is None:
        raise NoSolution("the automaton accepts no decomposition, not even the empty one")
    weight, parent = best
    S = from_iter(parent)
    parent = {v: parent[v] for v in sorted(parent)}
    if not is_decomposition(G, S, parent, d):
        raise ViolationError("returned forest is not a decomposition of the solution", certificate=parent)
    if not run_automaton(aut, parent, _labels(G, parent, d, labeller))[1]:
        raise ViolationError("automaton rejects the returned decomposition", certificate=parent)
    return TDResult(weight, S, parent, search.stats)


__all__ = ["ThresholdAutomaton", "cap_multiset", "run_automaton", "default_labeller", "vertex_label",
           "label_alphabet", "make_proper", "is_proper", "is_decomposition", "depths", "children_of",
           "edgeless_automaton", "matching_automaton", "builtin_automaton", "BUILTINS", "automaton_from_json",
           "load_automaton", "proper_decompositions", "brute_td_automaton", "solve_td_automaton", "TDResult",
           "TDStats", "accepts_set", "check_forest"]
