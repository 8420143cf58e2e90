import random

import pytest

from qpbranch.bitset import from_iter, to_list
from qpbranch.errors import ContractError, ViolationError
from qpbranch.generators import generate_instance
from qpbranch.graph import Graph, connected_components
from qpbranch.separators import (big_components, connected_balanced_separator, is_c3wbs, low_tw_balanced_separator,
                                 separator_report)

from conftest import complete, cycle, path, spider, star


def _balanced(G, res, A):
    return all(2 * (c & A).bit_count() <= A.bit_count() for c in res.components)


def test_path_seven_middle_region():
    G = path(7)
    res = connected_balanced_separator(G, 6)
    assert G.is_connected(res.X) and res.X.bit_count() <= 6
    assert res.balance(G.vertices) <= 3


def test_star_centre_dominates():
    G = star(5)
    res = connected_balanced_separator(G, 6)
    assert res.components == () or res.balance(G.vertices) == 0


def test_c5_single_vertex():
    G = cycle(5)
    res = connected_balanced_separator(G, 5)
    assert res.X.bit_count() == 1
    assert [c.bit_count() for c in res.components] == [2]


def test_separator_contract_errors():
    with pytest.raises(ContractError):
        connected_balanced_separator(Graph.from_edges(2, []), 3)
    with pytest.raises(ContractError):
        connected_balanced_separator(path(3), 3, A=0)


def test_long_path_with_small_t_is_flagged():
    # no single closed neighbourhood splits a long cycle in half
    with pytest.raises(ViolationError):
        connected_balanced_separator(cycle(20), 1)


def test_random_pt_free_graphs_both_regimes():
    rng = random.Random(7)
    for seed in range(40):
        G = generate_instance("random-gnp-rejection", seed=seed, n=12, t=6, target="pt")
        for A in (G.vertices, from_iter(v for v in range(G.n) if rng.random() < 0.5) or 1):
            res = connected_balanced_separator(G, 6, A)
            assert res.X.bit_count() <= 6 and G.is_connected(res.X)
            assert _balanced(G, res, A)
            rest = G.vertices & ~G.closed_neighborhood(res.X)
            assert sorted(res.components) == sorted(connected_components(G, rest))


def test_report_fields():
    G = cycle(5)
    res = connected_balanced_separator(G, 5)
    rep = separator_report(G, res, G.vertices)
    assert rep["balance"] == 2 and rep["A_size"] == 5 and rep["X"] == to_list(res.X)


def test_c3wbs_long_path_has_no_witness():
    # n = 41: each class needs 2 vertices beyond N[X], and only two sides exist
    assert is_c3wbs(path(41), 1 << 20) is None
    # on a short path N[X] alone is a tenth of the graph
    assert is_c3wbs(path(21), 1 << 10) is not None


def test_c3wbs_spider_one_leg_per_class():
    G = spider(3, 14)
    w = is_c3wbs(G, 1 << 0)
    assert w is not None
    assert sorted(len(c) for c in w.classes) == [1, 1, 1]


def test_c3wbs_clique_empty_classes():
    # N[X] already covers the whole graph, so three empty classes suffice
    w = is_c3wbs(complete(4), 1 << 0)
    assert w is not None and all(len(c) == 0 for c in w.classes)


def test_big_components():
    G = path(11)
    assert big_components(G, 1 << 5) == []
    assert len(big_components(G, 1 << 0)) == 1


def test_low_tw_separator_examples():
    assert low_tw_balanced_separator(path(9), path(9).vertices, 1) == 1 << 4
    K3 = complete(3)
    X = low_tw_balanced_separator(K3, K3.vertices, 3)
    assert X.bit_count() <= 3
    # spider with legs 3, 2, 2: leaves are 3, 5, 7 and the centre splits them
    T = spider(3, 2)
    leaves = from_iter(v for v in range(T.n) if T.degree(v) == 1)
    X = low_tw_balanced_separator(T, leaves, 1)
    assert X.bit_count() <= 1
    comps = connected_components(T, T.vertices & ~X)
    assert all(2 * (c & leaves).bit_count() <= leaves.bit_count() for c in comps)


def test_low_tw_separator_cap():
    with pytest.raises(ContractError):
        low_tw_balanced_separator(path(5), 31, 7)
