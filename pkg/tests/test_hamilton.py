import pytest

from oracles import has_hamilton_cycle_order
from wcgames.clients import client_pool, make_client
from wcgames.core import BoardSpec, GameState
from wcgames.hamilton import MIN_VERTICES, HamiltonStrategy
from wcgames.play import play


@pytest.mark.parametrize("n", [MIN_VERTICES, 21, 57, 120])
def test_cycle_within_n_plus_one_with_properties(n):
    for client in client_pool(n, "hamilton"):
        g = GameState(BoardSpec.complete(n))
        s = HamiltonStrategy()
        r = play(g, s, client)
        assert r.clean and g.real_rounds <= n + 1
        assert has_hamilton_cycle_order(g, s.cycle)
        assert all(s.properties().values())


def test_avoider_forces_n_plus_one():
    g = GameState(BoardSpec.complete(60))
    r = play(g, HamiltonStrategy(), make_client("avoider", 0, "hamilton"))
    assert r.clean and g.real_rounds == 61


def test_stop_at_path():
    g = GameState(BoardSpec.complete(40))
    s = HamiltonStrategy(stop_at_path=True)
    play(g, s, make_client("random", 1))
    assert s.hpath is not None and sorted(s.hpath) == list(range(40)) and g.real_rounds == 39


def test_on_a_vertex_subset():
    g = GameState(BoardSpec.complete(50))
    s = HamiltonStrategy(range(10, 40))
    r = play(g, s, make_client("random", 2), probes="final")
    assert s.cycle and sorted(s.cycle) == list(range(10, 40)) and not r.probe_failures


def test_too_small_forfeits():
    r = play(GameState(BoardSpec.complete(MIN_VERTICES - 1)), HamiltonStrategy(),
             make_client("random", 0))
    assert r.forfeit
