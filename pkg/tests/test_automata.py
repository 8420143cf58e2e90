import json

import pytest

from qpbranch import automata as au
from qpbranch.errors import ContractError, NoSolution
from qpbranch.generators import generate_instance
from qpbranch.graph import Graph
from qpbranch.oracle import brute_mwis, brute_td_automaton

from conftest import complete, path, star


def test_cap_multiset_examples():
    assert au.cap_multiset(["q", "q", "q"], 2) == ("q", "q")
    assert au.cap_multiset([], 3) == ()
    assert au.cap_multiset(["q2", "q1"], 5) == ("q1", "q2")


def test_labels():
    K2 = path(2)
    assert au.vertex_label(K2, {0: None}, 0, 2) == "1:00"
    assert au.vertex_label(K2, {0: None, 1: 0}, 1, 2) == "2:10"
    # P3 as the chain 1 -> 0 -> 2: vertex 2 sees only the root, at depth 1
    P3 = path(3)
    lab = au.default_labeller(P3, {1: None, 0: 1, 2: 0}, 3)
    assert lab == {1: "1:000", 0: "2:100", 2: "3:100"}
    assert set(lab.values()) <= set(au.label_alphabet(3))
    with pytest.raises(ContractError):
        au.vertex_label(P3, {1: None, 0: 1, 2: 0}, 2, 2)


def test_make_proper_examples():
    P3 = path(3)
    proper = {1: None, 0: 1, 2: 1}
    assert au.is_proper(P3, proper) and au.make_proper(P3, proper) == proper
    star2 = star(2)
    assert au.make_proper(star2, {0: None, 1: 0, 2: 1}) == {0: None, 1: 0, 2: 0}
    E = Graph.from_edges(2, [])
    assert au.make_proper(E, {0: None, 1: 0}) == {0: None, 1: None}


def test_decomposition_checks():
    P3 = path(3)
    assert au.is_decomposition(P3, P3.vertices, {1: None, 0: 1, 2: 1}, 2)
    assert not au.is_decomposition(P3, P3.vertices, {0: None, 1: None, 2: None})
    assert not au.is_decomposition(P3, P3.vertices, {1: None, 0: 1, 2: 0}, 2)


def test_runs_of_builtins():
    edgeless = au.builtin_automaton("edgeless")
    assert au.run_automaton(edgeless, {}, {})[1]
    K2 = path(2)
    assert not au.accepts_set(K2, edgeless, K2.vertices, {0: None, 1: 0}, 2)
    E3 = Graph.from_edges(3, [])
    assert au.accepts_set(E3, edgeless, E3.vertices, {0: None, 1: None, 2: None}, 1)
    matching = au.builtin_automaton("induced-matching")
    run, ok = au.run_automaton(matching, {0: None, 1: 0}, au.default_labeller(K2, {0: None, 1: 0}, 2))
    assert ok and run == {0: "pair", 1: "leaf"}
    P3 = path(3)
    assert not au.accepts_set(P3, matching, P3.vertices, {1: None, 0: 1, 2: 1}, 2)


def test_run_rejects_bad_order():
    aut = au.builtin_automaton("edgeless")
    K2 = path(2)
    labels = au.default_labeller(K2, {0: None, 1: 0}, 2)
    with pytest.raises(ContractError):
        au.run_automaton(aut, {0: None, 1: 0}, labels, order=[0, 1])


def test_json_round_trip(tmp_path):
    aut = au.builtin_automaton("matching")
    data = aut.to_json(2)
    assert set(data) == {"states", "alphabet", "tau", "delta", "accept"}
    p = tmp_path / "m.json"
    p.write_text(json.dumps(data))
    back = au.load_automaton(p)
    for sym in data["alphabet"]:
        for ms in aut.multisets():
            assert back.step(sym, ms) == aut.step(sym, ms)
    assert back.accept == aut.accept


def test_json_errors():
    with pytest.raises(ContractError):
        au.automaton_from_json({"states": ["a"]})
    with pytest.raises(ContractError):
        au.automaton_from_json({"states": ["a"], "alphabet": ["x"], "tau": 1,
                                "delta": [["y", [], "a"]], "accept": []})


def test_matching_on_p3():
    assert brute_td_automaton(path(3), 2, au.matching_automaton()).weight == 2
    assert au.solve_td_automaton(path(3), 2, 6, au.matching_automaton()).weight == 2


def test_edgeless_equals_mwis():
    for seed in range(6):
        G = generate_instance("random-gnp-rejection", seed=seed, n=9, t=6, weights=(1, 9))
        r = au.solve_td_automaton(G, 1, 6, au.edgeless_automaton())
        assert r.weight == brute_mwis(G).weight
        assert au.is_decomposition(G, r.solution, r.parent, 1)


def test_matching_against_brute_force():
    for seed in range(4):
        G = generate_instance("random-gnp-rejection", seed=seed, n=7, t=6, weights=(1, 9))
        r = au.solve_td_automaton(G, 2, 6, au.matching_automaton(), validate=True, monitor=True)
        assert r.weight == brute_td_automaton(G, 2, au.matching_automaton()).weight
        assert r.stats.as_dict()["muViolations"] == 0


def test_nothing_accepted():
    none = au.ThresholdAutomaton(("ok", "bad"), None, 1, au.edgeless_automaton().delta, frozenset(), "none")
    with pytest.raises(NoSolution):
        brute_td_automaton(path(2), 1, none)
    with pytest.raises(NoSolution):
        au.solve_td_automaton(path(2), 1, 6, none)


def test_brute_force_caps():
    with pytest.raises(ContractError):
        brute_td_automaton(complete(11), 1, au.edgeless_automaton())
