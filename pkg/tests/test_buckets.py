from fractions import Fraction

import pytest

from qpbranch import buckets as bk
from qpbranch.bitset import from_iter
from qpbranch.errors import ViolationError
from qpbranch.generators import generate_instance
from qpbranch.graph import Graph

from conftest import complete, cycle, path, spider, star


def test_path_buckets_p3():
    idx = bk.path_buckets(path(3), 6)
    assert idx.bucket(0, 2) == [(0, 1, 2)]
    assert idx.bucket(0, 1) == [(0, 1)]
    assert idx.nonempty() == 3 and idx.total == 3


def test_path_buckets_isolated_pair():
    idx = bk.path_buckets(Graph.from_edges(2, []), 6)
    assert idx.nonempty() == 0 and idx.total == 1


def test_path_buckets_c5():
    idx = bk.path_buckets(cycle(5), 6)
    # the way round an adjacent pair is not induced
    assert idx.bucket(0, 1) == [(0, 1)]
    assert sorted(idx.bucket(0, 2)) == [(0, 1, 2), (0, 4, 3, 2)]


def test_hit_index_matches_explicit_buckets():
    for seed in range(8):
        G = generate_instance("random-gnp-rejection", seed=seed, n=10, t=6, target="pt")
        a = bk.path_buckets(G, 6)
        b = bk.path_hit_index(G, 6)
        assert a.keys == b.keys
        assert (a.sizes == b.sizes).all() and (a.hits == b.hits).all()


def test_heavy_vertex_k2():
    G = path(2)
    assert bk.heavy_vertex(G, Fraction(1, 4), bk.path_hit_index(G, 6)) == 0


def test_heavy_vertex_exists_on_pt_free_graphs():
    for seed in range(20):
        G = generate_instance("random-gnp-rejection", seed=seed, n=14, t=6, target="pt")
        assert bk.heavy_vertex(G, Fraction(1, 12), bk.path_hit_index(G, 6)) is not None


def test_no_heavy_vertex_on_long_path():
    G = path(60)
    assert bk.heavy_vertex(G, Fraction(1, 10), bk.path_hit_index(G, 6)) is None


def test_tripods_of_claw():
    tps = bk.enumerate_tripods(star(3), 6)
    full = [tp for tp in tps if all(len(l) == 2 for l in tp.legs)]
    assert len(full) == 1 and full[0].center == (0,) and full[0].tips == (1, 2, 3)
    # the others use one degenerate leg at the centre
    assert all(bk.is_tripod(star(3), tp, 6) for tp in tps)
    assert len(tps) == 4


def test_tripods_of_p3_and_k3():
    tps = bk.enumerate_tripods(path(3), 6)
    assert len(tps) == 1 and tps[0].center == (1,) and tps[0].tips == (0, 1, 2)
    tps = bk.enumerate_tripods(complete(3), 6)
    assert len(tps) == 1 and tps[0].center == (0, 1, 2)
    assert all(len(l) == 1 for l in tps[0].legs)


def test_tripod_bags_short_legs_are_tips():
    tp = bk.enumerate_tripods(star(3), 6)
    hub = [x for x in tp if x.center == (0,) and all(len(l) == 2 for l in x.legs)][0]
    assert bk.tripod_bags(star(3), hub, 6) == (1 << 1, 1 << 2, 1 << 3)


def test_tripod_bags_long_leg_takes_the_continuation():
    # t = 6: legs of 4 vertices are long; leg one continues past its tip
    G = spider(3, 6)
    tp = bk.Tripod((0,), ((0, 1, 2, 3), (0, 7), (0, 13)))
    assert bk.is_tripod(G, tp, 6)
    b1, b2, b3 = bk.tripod_bags(G, tp, 6)
    assert b1 == from_iter([3, 4, 5, 6])
    assert b2 == 1 << 7 and b3 == 1 << 13


def test_tripod_bags_flag_long_cycle():
    G = cycle(8)
    hits = 0
    for tp in bk.enumerate_tripods(G, 6):
        try:
            bk.tripod_bags(G, tp, 6)
        except ViolationError:
            hits += 1
    assert hits > 0
    # C7 is short enough that no bag computation fails
    for tp in bk.enumerate_tripods(cycle(7), 6):
        bk.tripod_bags(cycle(7), tp, 6)


def test_tripod_buckets_claw_and_p5():
    idx = bk.tripod_buckets(star(3), 6, keep_witnesses=True)
    hub = [tp for tp in idx.bucket(1, 2, 3) if tp.center == (0,)]
    assert len(hub) == 1
    idx = bk.tripod_buckets(path(5), 6, keep_witnesses=True)
    core = idx.bucket(0, 2, 4)
    assert any(tp.center == (2,) and tp.mask == 0b11111 for tp in core)


def test_tripod_buckets_disconnected_triple_empty():
    G = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    idx = bk.tripod_buckets(G, 6, keep_witnesses=True)
    assert idx.bucket(0, 1, 3) == []


def test_minimal_connector_examples():
    c = bk.minimal_connector(path(3), 0, 2, 1)
    assert c.center == (1,) and c.mask == 0b111
    c = bk.minimal_connector(star(3), 1, 2, 3)
    assert c.center == (0,)
    c = bk.minimal_connector(cycle(6), 0, 2, 4)
    assert c.mask.bit_count() == 5 and bk.is_connector(cycle(6), c)


def test_find_chip():
    # caterpillar: K = {0}, chip side {2, 3}, B = {3}
    G = path(5)
    assert bk.find_chip(G, H=from_iter([3, 4]), C2=from_iter([3, 4]), B=1 << 4, K=1 << 0) is None
    assert bk.find_chip(G, H=G.vertices, C2=from_iter([1, 2, 3]), B=1 << 3, K=1 << 0) == from_iter([1, 2, 3])
    # two bridges from K to B
    C = cycle(8)
    with pytest.raises(ViolationError):
        bk.find_chip(C, C.vertices, from_iter([1, 2, 3, 5, 6, 7]), from_iter([3, 5]), 1 << 0)


def test_links_through_single_vertex():
    G = Graph.from_edges(3, [(0, 2), (1, 2)])
    assert list(bk.iter_links(G, G.vertices, 1 << 2, 6)) == [(0, 2, 1)]
    # the edge uv may coexist with the link
    T = Graph.from_edges(3, [(0, 2), (1, 2), (0, 1)])
    assert list(bk.iter_links(T, T.vertices, 1 << 2, 6)) == [(0, 2, 1)]


def test_links_through_p2_chip():
    # chip {2, 3}; 0 sees 2, 1 sees 3, 4 sees both
    G = Graph.from_edges(5, [(2, 3), (0, 2), (1, 3), (4, 2), (4, 3)])
    links = sorted(bk.iter_links(G, G.vertices, from_iter([2, 3]), 6))
    assert (0, 2, 3, 1) in links and (0, 2, 4) in links
    assert {len(p) for p in links} == {3, 4}


def test_secondary_heavy_cut_vertex():
    G = Graph.from_edges(5, [(0, 4), (1, 4), (2, 4), (3, 4)])
    idx = bk.c_link_buckets(G, G.vertices, 1 << 4, 6)
    cands = dict(bk.heavy_candidates(idx, Fraction(1, 12)))
    assert cands[4] == max(cands.values())
    assert bk.secondary_heavy_vertex(G, G.vertices, 1 << 4, 6, idx) in cands


def test_quota_weights():
    G = Graph.from_edges(3, [(0, 2), (1, 2)])
    eta = {0: 1, 1: 3}
    assert bk.quota_weights(G, 1 << 2, eta, {2: 4}, 2) == {2: 1}
    assert bk.quota_weights(G, 1 << 2, eta, {2: 2}, 2) == {2: 2}


def test_enumerated_tripods_are_valid_and_distinct():
    for seed in range(10):
        G = generate_instance("random-gnp-rejection", seed=seed, n=9, t=6, target="pt")
        tps = bk.enumerate_tripods(G, 6)
        assert len(set(tps)) == len(tps)
        assert all(bk.is_tripod(G, tp, 6) for tp in tps)
