import pytest

from qpbranch.errors import ContractError
from qpbranch.generators import generate_instance
from qpbranch.replay import lucky_replay, replay_from_oracle

from conftest import cycle, path


@pytest.mark.parametrize("d", [0, 1])
def test_replay_follows_lucky_path(d):
    for seed in range(5):
        G = generate_instance("random-gnp-rejection", seed=seed, n=8, t=6, weights=(1, 9))
        S, eta, rep = replay_from_oracle(G, d, 6)
        assert rep.ok, rep.failures
        assert rep.leaves >= 1 and rep.success_steps >= 1


def test_replay_cgt():
    G = generate_instance("random-chordal", seed=3, n=8)
    assert replay_from_oracle(G, 1, 6, "cgt")[2].ok


def test_replay_rejects_bad_ordering():
    C = cycle(5)
    with pytest.raises(ContractError):
        lucky_replay(C, 1, 6, C.vertices, {v: v + 1 for v in range(5)})


def test_report_dict():
    G = path(4)
    S, eta, rep = replay_from_oracle(G, 0, 6)
    out = rep.as_dict()
    assert out["ok"] and out["failures"] == [] and out["steps"] >= out["depth"]
