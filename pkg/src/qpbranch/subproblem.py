"""Subproblems of the branching recursion and the operations on them.

A subproblem is ``(A, X, level, W, eta, zeta)``: ``A`` is decided in with
positions ``eta``, ``X`` is decided out, ``W`` is the active part and
``zeta`` gives each active vertex the smallest position it may still take.
Positions live in ``1..n``.  Sets are bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Mapping

from .bitset import bits, from_iter, to_list
from .errors import ContractError
from .graph import Graph, connected_components


# --- levels ------------------------------------------------------------------
# Level l allows |W| < (100/99)^l; all comparisons are on integers.

@lru_cache(maxsize=None)
def _pow(base: int, e: int) -> int:
    return base**e


def below_capacity(size: int, level: int) -> bool:
    """size < 0.99^(-level)"""
    return size * _pow(99, level) < _pow(100, level)


def root_level(n: int) -> int:
    """ceil(-log_0.99(n + 1)), the least l with (100/99)^l >= n + 1."""
    level = 0
    while _pow(100, level) < (n + 1) * _pow(99, level):
        level += 1
    return level


@dataclass(frozen=True)
class Subproblem:
    A: int
    X: int
    level: int
    W: int
    eta: Mapping[int, int] = field(default_factory=dict)
    zeta: Mapping[int, int] = field(default_factory=dict)

    def key(self) -> tuple:
        return (self.A, self.X, self.level, self.W, tuple(sorted(self.eta.items())),
                tuple(sorted(self.zeta.items())))


def root_subproblem(G: Graph) -> Subproblem:
    return Subproblem(0, 0, root_level(G.n), G.vertices, {}, {v: 1 for v in range(G.n)})


def check_subproblem(G: Graph, R: Subproblem) -> None:
    """Raise ContractError when the structural invariants do not hold."""
    if R.A & R.X or R.W & (R.A | R.X):
        raise ContractError("A, X and W must be disjoint")
    if not below_capacity(R.W.bit_count(), R.level):
        raise ContractError("|W| exceeds the capacity of the level")
    if set(R.eta) != set(bits(R.A)) or set(R.zeta) != set(bits(R.W)):
        raise ContractError("eta must cover A and zeta must cover W")
    rest = G.vertices & ~(R.A | R.X)
    if G.neighborhood(R.W) & rest & ~R.W:
        raise ContractError("W touches free vertices outside W")
    for v in bits(R.A):
        for u in bits(G.adj[v] & R.A):
            if R.eta[u] == R.eta[v]:
                raise ContractError("eta is not edge-injective")


# --- quotas and filtering -----------------------------------------------------

def quota(G: Graph, eta: Mapping[int, int], v: int, p: int, d: int) -> int:
    """d minus the number of neighbours of v placed before p."""
    return d - sum(1 for u in G.nbrs[v] if u in eta and eta[u] < p)


def find_offending(G: Graph, R: Subproblem, d: int) -> tuple[int, int]:
    """(offending vertices of A, offending vertices of W)."""
    n = G.n
    bad_a = 0
    for v in bits(R.A):
        p = R.eta[v]
        c = sum(1 for u in bits(G.adj[v] & R.A) if R.eta[u] < p)
        c += sum(1 for u in bits(G.adj[v] & R.W) if R.zeta[u] <= p)
        if c > d:
            bad_a |= 1 << v
    bad_w = 0
    for v in bits(R.W):
        z = R.zeta[v]
        if z > n or quota(G, R.eta, v, z, d) < 0:
            bad_w |= 1 << v
    return bad_a, bad_w


def is_clean(G: Graph, R: Subproblem, d: int) -> bool:
    a, w = find_offending(G, R, d)
    return not (a | w)


def filter_step(G: Graph, R: Subproblem, d: int) -> Subproblem | None:
    """None when an A-vertex offends, otherwise R with offending W-vertices deleted."""
    bad_a, bad_w = find_offending(G, R, d)
    if bad_a:
        return None
    return delete_vertices(R, bad_w) if bad_w else R


# --- splitting ---------------------------------------------------------------

def is_splittable(G: Graph, R: Subproblem) -> bool:
    if R.level < 1:
        return False
    return all(below_capacity(c.bit_count(), R.level - 1) for c in connected_components(G, R.W))


def split_parts(G: Graph, W: int, level: int) -> list[int]:
    """Greedy prefix of components (largest first) that stays below the next capacity."""
    comps = sorted(connected_components(G, W), key=lambda c: (-c.bit_count(), c & -c))
    total = 0
    j = 0
    for c in comps:
        if below_capacity(total + c.bit_count(), level - 1):
            total += c.bit_count()
            j += 1
        else:
            break
    if j == len(comps):
        return [W]
    first = 0
    for c in comps[:j]:
        first |= c
    return sorted([first, W & ~first], key=lambda m: m & -m)


def split_subproblem(G: Graph, R: Subproblem) -> list[Subproblem]:
    if not is_splittable(G, R):
        raise ContractError("subproblem is not splittable")
    parts = split_parts(G, R.W, R.level)
    return [Subproblem(R.A, R.X, R.level - 1, P, R.eta, {v: R.zeta[v] for v in bits(P)}) for P in parts]


# --- deleting and taking -------------------------------------------------------

def delete_vertices(R: Subproblem, Z: int) -> Subproblem:
    if Z & ~R.W:
        raise ContractError("can only delete active vertices")
    if not Z:
        return R
    zeta = {v: z for v, z in R.zeta.items() if not (Z >> v) & 1}
    return replace(R, X=R.X | Z, W=R.W & ~Z, zeta=zeta)


def check_position_guess(G: Graph, R: Subproblem, Z: int, eta: Mapping[int, int]) -> None:
    n = G.n
    for v in bits(R.A):
        if eta.get(v) != R.eta[v]:
            raise ContractError(f"position guess changes the position of {v}")
    for u in bits(Z):
        if u not in eta:
            raise ContractError(f"position guess misses {u}")
        if not (R.zeta[u] <= eta[u] <= n):
            raise ContractError(f"position of {u} outside [{R.zeta[u]}, {n}]")
        for w in bits(G.adj[u] & (R.A | Z)):
            if eta[w] == eta[u]:
                raise ContractError(f"adjacent {u} and {w} share a position")


def take_vertices(G: Graph, R: Subproblem, Z: int, eta: Mapping[int, int], left: Mapping[int, int],
                  d: int | None = None) -> Subproblem:
    """Move Z into A at the guessed positions; neighbours outside the guessed
    left sets must come after each taken vertex."""
    if Z & ~R.W:
        raise ContractError("can only take active vertices")
    check_position_guess(G, R, Z, eta)
    new_eta = {v: eta[v] for v in bits(R.A | Z)}
    W2 = R.W & ~Z
    for u in bits(Z):
        Du = left.get(u, 0)
        if Du & ~W2:
            raise ContractError(f"left neighbours of {u} must be active and not taken")
        if d is not None and Du.bit_count() > quota(G, new_eta, u, new_eta[u], d):
            raise ContractError(f"too many left neighbours guessed for {u}")
    zeta = {}
    for w in bits(W2):
        z = R.zeta[w]
        for u in bits(G.adj[w] & Z):
            if not (left.get(u, 0) >> w) & 1:
                z = max(z, 1 + new_eta[u])
        zeta[w] = z
    return Subproblem(R.A | Z, R.X, R.level, W2, new_eta, zeta)


# --- branch tuples -------------------------------------------------------------

@dataclass(frozen=True)
class BranchTuple:
    D: int
    eta: tuple[tuple[int, int], ...]   # positions of D + {pivot}, by vertex
    left: tuple[tuple[int, int], ...]  # left-neighbour guesses, by vertex

    @property
    def taken(self) -> int:
        return from_iter(v for v, _ in self.eta)

    def positions(self) -> dict[int, int]:
        return dict(self.eta)

    def left_sets(self) -> dict[int, int]:
        return dict(self.left)


def submasks_upto(mask: int, k: int) -> Iterator[int]:
    """Submasks of ``mask`` with at most k members, in increasing numeric order."""
    if k < 0:
        return
    members = to_list(mask)
    out = []
    for r in range(min(k, len(members)) + 1):
        for combo in combinations(members, r):
            out.append(from_iter(combo))
    yield from sorted(out)


def enumerate_branch_tuples(G: Graph, R: Subproblem, nu: int, d: int,
                            neighbours_only: bool = False) -> Iterator[BranchTuple]:
    """Every success tuple for pivot ``nu``: D by increasing mask, then
    positions (vertices in increasing order, lexicographic), then left sets
    by increasing mask.

    With ``neighbours_only`` each left set is drawn from N(u) only; guesses
    that differ outside N(u) produce the same child.
    """
    if not (R.W >> nu) & 1:
        raise ContractError("pivot must be active")
    n = G.n
    cap = quota(G, R.eta, nu, R.zeta[nu], d)
    for D in submasks_upto(G.adj[nu] & R.W, cap):
        Dp = D | (1 << nu)
        order = to_list(Dp)
        ranges = [range(R.zeta[u], n + 1) for u in order]
        for pos in product(*ranges):
            eta = dict(R.eta)
            ok = True
            for u, p in zip(order, pos):
                eta[u] = p
            for u in order:
                for w in bits(G.adj[u] & (R.A | Dp)):
                    if eta[w] == eta[u]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            pool = R.W & ~Dp
            choices = []
            for u in order:
                if u == nu:
                    choices.append([0])
                    continue
                q = quota(G, eta, u, eta[u], d)
                src = pool & G.adj[u] if neighbours_only else pool
                choices.append(list(submasks_upto(src, q)))
            if any(not c for c in choices):
                continue
            eta_t = tuple(zip(order, pos))
            for sets in product(*choices):
                yield BranchTuple(D, eta_t, tuple(zip(order, sets)))


def success_child(G: Graph, R: Subproblem, bt: BranchTuple, d: int) -> Subproblem:
    eta = dict(R.eta)
    eta.update(bt.positions())
    return take_vertices(G, R, bt.taken, eta, bt.left_sets(), d)


# --- luckiness -----------------------------------------------------------------

def is_lucky(G: Graph, R: Subproblem, S: int, eta_star: Mapping[int, int]) -> bool:
    """Whether every choice in R agrees with the solution S and ordering eta_star."""
    if R.A & ~S or R.X & S:
        return False
    if any(R.eta[v] != eta_star[v] for v in bits(R.A)):
        return False
    for u in bits(R.W & S):
        if R.zeta[u] > eta_star[u]:
            return False
    for u in bits(R.W):
        for v in bits(G.adj[u] & R.A):
            if R.zeta[u] <= eta_star[v] and not ((S >> u) & 1 and eta_star[u] < eta_star[v]):
                return False
    return True


def lucky_tuple(G: Graph, R: Subproblem, nu: int, S: int, eta_star: Mapping[int, int]) -> BranchTuple:
    """The success tuple that keeps a lucky branch node lucky when the pivot is in S."""
    W = R.W
    D = from_iter(u for u in bits(G.adj[nu] & W & S) if eta_star[u] < eta_star[nu])
    Dp = D | (1 << nu)
    order = to_list(Dp)
    left = []
    for u in order:
        if u == nu:
            left.append((u, 0))
        else:
            left.append((u, from_iter(w for w in bits(G.adj[u] & W & S & ~Dp) if eta_star[w] < eta_star[u])))
    return BranchTuple(D, tuple((u, eta_star[u]) for u in order), tuple(left))


def is_branch_tuple(G: Graph, R: Subproblem, nu: int, bt: BranchTuple, d: int) -> bool:
    """Membership test matching :func:`enumerate_branch_tuples` (left sets unrestricted)."""
    D = bt.D
    if (D >> nu) & 1 or D & ~(G.adj[nu] & R.W):
        return False
    if D.bit_count() > quota(G, R.eta, nu, R.zeta[nu], d):
        return False
    Dp = D | (1 << nu)
    pos = bt.positions()
    if set(pos) != set(bits(Dp)):
        return False
    eta = dict(R.eta)
    eta.update(pos)
    try:
        check_position_guess(G, R, Dp, eta)
    except ContractError:
        return False
    left = bt.left_sets()
    if left.get(nu, 0):
        return False
    for u in bits(Dp):
        Du = left.get(u, 0)
        if Du & ~(R.W & ~Dp) or Du.bit_count() > quota(G, eta, u, eta[u], d):
            return False
    return True


__all__ = [
    "Subproblem", "BranchTuple", "below_capacity", "root_level", "root_subproblem", "check_subproblem",
    "quota", "find_offending", "is_clean", "filter_step", "is_splittable", "split_parts",
    "split_subproblem", "delete_vertices", "take_vertices", "check_position_guess",
    "enumerate_branch_tuples", "success_child", "submasks_upto", "is_lucky", "lucky_tuple",
    "is_branch_tuple",
]
