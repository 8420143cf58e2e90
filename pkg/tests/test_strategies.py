from fractions import Fraction

import pytest

from qpbranch import buckets
from qpbranch.errors import ContractError, ViolationError
from qpbranch.generators import generate_instance
from qpbranch.strategies import StrategyConfig, make_rule

from conftest import cycle, path


def test_single_vertex_needs_no_buckets():
    G = path(3)
    rule = make_rule("pt", G, 6)
    d = rule.choose(1 << 2, None)
    assert d.pivot == 2 and d.rule == "single"


def test_path_rule_picks_best_scoring_heavy_vertex():
    G = generate_instance("random-gnp-rejection", seed=3, n=12, t=6, target="pt")
    rule = make_rule("pt", G, 6)
    d = rule.choose(G.vertices, None)
    idx = buckets.path_hit_index(G, 6)
    cands = dict(buckets.heavy_candidates(idx, Fraction(1, 18)))
    assert d.rule == "heavy" and d.pivot in cands
    assert cands[d.pivot] == max(cands.values())


def test_path_rule_flags_long_paths():
    # every pair's bucket on a long cycle is tiny relative to all pairs
    G = cycle(40)
    with pytest.raises(ViolationError):
        make_rule("pt", G, 6).choose(G.vertices, None)


def test_tripod_rule_primary_heavy():
    G = generate_instance("random-chordal", seed=1, n=10, t=6, target="cgt")
    rule = make_rule("cgt", G, 6)
    d = rule.choose(G.vertices, None)
    assert d.rule == "heavy" and rule.counters["heavy"] == 1


def test_secondary_rule_on_long_path():
    G = path(60)
    rule = make_rule("cgt", G, 6, StrategyConfig(force_secondary=True, far_factor=1))
    d = rule.choose(G.vertices, None)
    assert rule.counters["secondaryEntries"] == 1 and rule.counters["secondaryBranches"] == 1
    assert d.context is not None and d.rule in ("chip-neighbour", "link-heavy")
    ctx = d.context
    assert not (ctx.D0 & ctx.B) and ctx.D0 | ctx.B == ctx.C2
    # the context is reused by the next choice
    d2 = rule.choose(G.vertices & ~(1 << d.pivot), ctx)
    assert d2.context is ctx or d2.rule == "fallback" or d2.rule == "heavy"


def test_secondary_falls_back_when_setup_fails():
    G = path(30)
    rule = make_rule("cgt", G, 6, StrategyConfig(force_secondary=True))
    d = rule.choose(G.vertices, None)
    assert d.rule == "fallback" and rule.counters["fallbacks"] == 1


def test_unknown_mode():
    with pytest.raises(ContractError):
        make_rule("xyz", path(2), 6)
