"""Replay the recursion along the branch that agrees with a known solution.

Given an optimal set S and a degeneracy ordering of G[S], every node on the
replayed path must be lucky: it has not contradicted (S, ordering) yet.  The
replay walks the literal tree (no bounds, no deduplication) and only ever
follows lucky children, so it runs in time linear in the path length even
where the full tree is huge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .bitset import bits, to_list
from .errors import ContractError
from .graph import Graph, validate_degeneracy_ordering
from .strategies import StrategyConfig, make_rule
from .subproblem import (Subproblem, delete_vertices, filter_step, is_branch_tuple, is_lucky, is_splittable,
                         lucky_tuple, root_subproblem, split_subproblem, success_child)


@dataclass
class ReplayReport:
    steps: int = 0
    depth: int = 0
    leaves: int = 0
    success_steps: int = 0
    failure_steps: int = 0
    split_steps: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"ok": self.ok, "steps": self.steps, "depth": self.depth, "leaves": self.leaves,
                "successSteps": self.success_steps, "failureSteps": self.failure_steps,
                "splitSteps": self.split_steps, "failures": list(self.failures)}


def lucky_replay(G: Graph, d: int, t: int, S: int, eta_star: Mapping[int, int], mode: str = "pt",
                 config: StrategyConfig | None = None) -> ReplayReport:
    """Follow lucky children from the root; record every level with no lucky child."""
    if not validate_degeneracy_ordering(G, eta_star, d, S):
        raise ContractError("eta_star is not a d-degeneracy ordering of G[S]")
    rule = make_rule(mode, G, t, config)
    rep = ReplayReport()
    root = root_subproblem(G)
    if not is_lucky(G, root, S, eta_star):
        rep.failures.append({"depth": 0, "reason": "root is not lucky"})
        return rep
    # explicit stack: (subproblem, secondary context, depth)
    stack = [(root, None, 0)]
    covered = 0
    while stack:
        R, ctx, depth = stack.pop()
        rep.steps += 1
        rep.depth = max(rep.depth, depth)
        if R.level == 0:
            # after splits each leaf holds only its own part of S
            rep.leaves += 1
            covered |= R.A
            continue
        if is_splittable(G, R):
            rep.split_steps += 1
            for child in reversed(split_subproblem(G, R)):
                stack.append((child, None, depth + 1))
            continue
        decision = rule.choose(R.W, ctx)
        nu = decision.pivot
        if (S >> nu) & 1:
            bt = lucky_tuple(G, R, nu, S, eta_star)
            if not is_branch_tuple(G, R, nu, bt, d):
                rep.failures.append({"depth": depth, "reason": "lucky tuple is not a branch tuple", "pivot": nu})
                continue
            child = filter_step(G, success_child(G, R, bt, d), d)
            rep.success_steps += 1
        else:
            child = delete_vertices(R, 1 << nu)
            rep.failure_steps += 1
        if child is None or not is_lucky(G, child, S, eta_star):
            rep.failures.append({"depth": depth, "reason": "no lucky child", "pivot": nu})
            continue
        stack.append((child, decision.context, depth + 1))
    if not rep.failures and covered != S:
        rep.failures.append({"depth": rep.depth, "reason": "leaves do not cover the solution",
                             "covered": to_list(covered)})
    return rep


def replay_from_oracle(G: Graph, d: int, t: int, mode: str = "pt", config: StrategyConfig | None = None):
    """Seed the replay with the brute-force optimum and its greedy ordering."""
    from . import oracle
    from .graph import greedy_degeneracy_ordering

    res = oracle.brute_max_degenerate(G, d) if d else oracle.brute_mwis(G)
    S = res.witness
    _, eta = greedy_degeneracy_ordering(G, S)
    return S, eta, lucky_replay(G, d, t, S, eta, mode, config)


__all__ = ["ReplayReport", "lucky_replay", "replay_from_oracle"]
