"""Pivot rules for the branching recursion.

The P_t-free rule branches on a vertex that is heavy for the induced-path
buckets of G[W].  The rule for graphs without long induced cycles branches
on a vertex that is heavy for the tripod buckets and, when none exists,
switches to a secondary rule that tries to cut a chip off the separator
neighbourhood.  Every threshold is a :class:`~fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import buckets
from .bitset import bits, lowest, to_list
from .errors import ContractError, ViolationError
from .graph import Graph, component_of, connected_components
from .separators import connected_balanced_separator


@dataclass(frozen=True)
class StrategyConfig:
    """Thresholds of the pivot rules.  ``None`` means the value tied to t.

    The defaults are the analysed constants.  Tests use the overrides to
    reach the secondary rule on small graphs, where the primary threshold
    always finds a pivot.
    """

    eps_path: Fraction | None = None        # 1/(3t)
    eps_tripod: Fraction | None = None      # 10^-8 / t
    eps_link: Fraction | None = None        # 1/(2t)
    big_component: Fraction = Fraction(2, 5)
    far_factor: int = 8
    force_secondary: bool = False
    witness_budget: int = buckets.WITNESS_BUDGET

    def path_eps(self, t: int) -> Fraction:
        return self.eps_path if self.eps_path is not None else Fraction(1, 3 * t)

    def tripod_eps(self, t: int) -> Fraction:
        return self.eps_tripod if self.eps_tripod is not None else Fraction(1, 10**8 * t)

    def link_eps(self, t: int) -> Fraction:
        return self.eps_link if self.eps_link is not None else Fraction(1, 2 * t)

    @property
    def verbatim(self) -> bool:
        return (self.eps_path is None and self.eps_tripod is None and self.eps_link is None
                and self.big_component == Fraction(2, 5) and self.far_factor == 8
                and not self.force_secondary)


@dataclass(frozen=True)
class SecondaryContext:
    """Sets fixed when the secondary rule starts (all inside the active set then)."""

    X: int
    K: int
    C1: int
    C2: int
    Y: int
    L: int
    D0: int
    B: int
    rounds: int = 1


@dataclass
class Decision:
    pivot: int
    context: SecondaryContext | None
    rule: str  # "heavy", "single", "chip-neighbour", "link-heavy", "fallback"


class ContextFailure(Exception):
    """The secondary setup could not be completed on this subproblem."""


def _largest_component(G: Graph, W: int) -> int:
    comps = connected_components(G, W)
    return max(comps, key=lambda c: (c.bit_count(), -(c & -c).bit_length()))


def _distance(G: Graph, src: int, dst: int, within: int) -> int | None:
    seen = src
    frontier = src
    dist = 0
    while frontier:
        if frontier & dst:
            return dist
        nxt = 0
        for x in bits(frontier):
            nxt |= G.adj[x]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
        dist += 1
    return None


class PivotRule:
    """Base class; subclasses choose the pivot of a non-splittable subproblem."""

    def __init__(self, G: Graph, t: int, config: StrategyConfig | None = None, validate: bool = False):
        self.G = G
        self.t = t
        self.config = config or StrategyConfig()
        self.validate = validate
        self.counters = {"heavy": 0, "single": 0, "secondaryEntries": 0, "secondaryBranches": 0,
                         "fallbacks": 0}
        self._cache: dict = {}

    def choose(self, W: int, context: SecondaryContext | None) -> Decision:
        raise NotImplementedError

    def exit_secondary(self, context):
        return None


class PathRule(PivotRule):
    """Heavy vertex of the induced-path buckets of G[W]."""

    def index(self, W: int) -> buckets.BucketIndex:
        idx = self._cache.get(W)
        if idx is None:
            idx = buckets.path_hit_index(self.G, self.t, W)
            self._cache[W] = idx
        return idx

    def choose(self, W: int, context=None) -> Decision:
        if W.bit_count() == 1:
            # no pairs: every fraction is vacuous, take the only vertex
            self.counters["single"] += 1
            return Decision(lowest(W), None, "single")
        idx = self.index(W)
        v = buckets.heavy_vertex(self.G, self.config.path_eps(self.t), idx)
        if v is None:
            raise ViolationError("no heavy vertex for the induced-path buckets; the graph is not P_t-free",
                                 certificate=to_list(W))
        self.counters["heavy"] += 1
        return Decision(v, None, "heavy")


class TripodRule(PivotRule):
    """Heavy vertex of the tripod buckets, with the secondary chip rule as backup."""

    def index(self, W: int) -> buckets.BucketIndex:
        idx = self._cache.get(W)
        if idx is None:
            idx = buckets.tripod_buckets(self.G, self.t, W, self.config.witness_budget)
            self._cache[W] = idx
        return idx

    def _strict(self) -> bool:
        # structural failures are certificates only under the analysed constants
        return self.config.verbatim

    def choose(self, W: int, context: SecondaryContext | None) -> Decision:
        if context is not None:
            try:
                return self._secondary(W, context)
            except ContextFailure:
                self.counters["fallbacks"] += 1
                return self._primary(W, allow_secondary=False)
        return self._primary(W, allow_secondary=True)

    def _primary(self, W: int, allow_secondary: bool) -> Decision:
        idx = self.index(W)
        eps = self.config.tripod_eps(self.t)
        if not (self.config.force_secondary and allow_secondary):
            v = buckets.heavy_vertex(self.G, eps, idx)
            if v is not None:
                self.counters["heavy"] += 1
                return Decision(v, None, "heavy")
        if allow_secondary:
            try:
                ctx = self.establish(W)
                self.counters["secondaryEntries"] += 1
                return self._secondary(W, ctx)
            except ContextFailure:
                pass
        # nothing structural applies; take the best-scoring vertex
        self.counters["fallbacks"] += 1
        scores = buckets.heavy_scores(idx, eps)
        v = min(bits(W), key=lambda x: (-scores.get(x, 0), x))
        return Decision(v, None, "fallback")

    # -- secondary setup --

    def establish(self, W: int) -> SecondaryContext:
        G, t, cfg = self.G, self.t, self.config
        C1 = _largest_component(G, W)
        X = connected_balanced_separator(G, t, within=C1).X
        rounds = 0
        while True:
            rounds += 1
            if rounds > C1.bit_count() + 1:
                raise ContextFailure("separator augmentation did not settle")
            K = G.closed_neighborhood(X) & W
            big = [c for c in connected_components(G, C1 & ~K)
                   if c.bit_count() * cfg.big_component.denominator >= cfg.big_component.numerator * C1.bit_count()]
            if not big:
                raise ContextFailure("no large component beside the separator")
            C2 = max(big, key=lambda c: (c.bit_count(), -(c & -c).bit_length()))
            Y = connected_balanced_separator(G, t, within=C2).X
            dist = _distance(G, X, Y, C1)
            if dist is None or dist > cfg.far_factor * t:
                break
            X = X | Y | self._path_between(X, Y, C1)
        L = G.neighborhood(Y) & C2
        comps = connected_components(G, C2 & ~L)
        touching = [D for D in comps if G.closed_neighborhood(D) & K]
        if len(touching) != 1:
            if self._strict() and len(touching) > 1:
                raise ViolationError("two components next to the separator neighbourhood",
                                     certificate=[to_list(D) for D in touching])
            raise ContextFailure("no unique component next to K")
        D0 = touching[0]
        return SecondaryContext(X, K, C1, C2, Y, L, D0, C2 & ~D0, rounds)

    def _path_between(self, X: int, Y: int, within: int) -> int:
        G = self.G
        parent: dict[int, int] = {}
        seen = X
        frontier = X
        while frontier:
            hit = frontier & Y
            if hit:
                x = lowest(hit)
                out = 1 << x
                while x in parent:
                    x = parent[x]
                    out |= 1 << x
                return out
            nxt = 0
            for x in bits(frontier):
                for y in bits(G.adj[x] & within & ~seen & ~nxt):
                    parent[y] = x
                    nxt |= 1 << y
            seen |= nxt
            frontier = nxt
        raise ContextFailure("separators in different components")

    # -- secondary pivot --

    def _secondary(self, W: int, ctx: SecondaryContext) -> Decision:
        G, t = self.G, self.t
        try:
            chip = buckets.find_chip(G, W, ctx.C2, ctx.B, ctx.K)
        except ViolationError:
            if self._strict():
                raise
            raise ContextFailure("two chips") from None
        if chip is None:
            raise ContextFailure("no chip in a non-splittable subproblem")
        ends = G.neighborhood(chip) & W
        if ends.bit_count() == 0:
            raise ContextFailure("chip is cut off but the subproblem is not splittable")
        if ends.bit_count() == 1:
            self.counters["secondaryBranches"] += 1
            return Decision(lowest(ends), ctx, "chip-neighbour")
        try:
            idx = buckets.c_link_buckets(G, W, chip, t, validate=self.validate)
        except ViolationError:
            if self._strict():
                raise
            raise ContextFailure("link buckets malformed") from None
        v = buckets.heavy_vertex(G, self.config.link_eps(t), idx)
        if v is None:
            if self._strict():
                raise ViolationError("no heavy vertex for the link buckets", certificate=to_list(chip))
            raise ContextFailure("no link-heavy vertex")
        self.counters["secondaryBranches"] += 1
        return Decision(v, ctx, "link-heavy")


def make_rule(mode: str, G: Graph, t: int, config: StrategyConfig | None = None,
              validate: bool = False) -> PivotRule:
    if mode == "pt":
        return PathRule(G, t, config, validate)
    if mode == "cgt":
        return TripodRule(G, t, config, validate)
    raise ContractError(f"unknown mode {mode!r}")


__all__ = ["StrategyConfig", "SecondaryContext", "Decision", "ContextFailure", "PivotRule", "PathRule",
           "TripodRule", "make_rule"]
