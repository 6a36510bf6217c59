import random

import pytest

from oracles import is_client_perfect_matching
from wcgames.clients import client_pool, make_client
from wcgames.core import BoardSpec, GameState
from wcgames.matching import MIN_SIDE, BipartiteMatching, CompleteMatching, check_potential
from wcgames.play import enumerate_replies, play
from wcgames.registry import random_obstacles


@pytest.mark.parametrize("n", [16, 24, 50])
def test_complete_matching_within_half_plus_one(n):
    for client in client_pool(3, "matching"):
        g = GameState(BoardSpec.complete(n))
        r = play(g, CompleteMatching(), client)
        assert r.clean and g.real_rounds <= n // 2 + 1
        assert is_client_perfect_matching(g, r.certificate.edges)


def test_avoider_cannot_push_past_bound_and_bound_is_reached():
    # Client can always refuse the last matching edge once, so n/2 + 1 is met.
    for n in (16, 40):
        g = GameState(BoardSpec.complete(n))
        r = play(g, CompleteMatching(), make_client("avoider", 0, "matching"))
        assert r.clean and g.real_rounds == n // 2 + 1


def test_bipartite_with_obstacles():
    for n in (8, 13, 30):
        H = random_obstacles(n, random.Random(n))
        for client in client_pool(n, "matching"):
            g = GameState(BoardSpec.bipartite(n, forbidden=H))
            r = play(g, BipartiteMatching(), client)
            assert r.clean and g.real_rounds <= n + 1
            assert not set(r.certificate.edges) & set(H)


def test_exhaustive_smallest_side():
    H = random_obstacles(MIN_SIDE, random.Random(0))
    results = [r for _, r in enumerate_replies(
        lambda c: play(GameState(BoardSpec.bipartite(MIN_SIDE, forbidden=H)), BipartiteMatching(), c))]
    assert results and all(r.clean and r.game.real_rounds <= MIN_SIDE + 1 for r in results)


def test_small_sides_forfeit():
    r = play(GameState(BoardSpec.bipartite(MIN_SIDE - 1)), BipartiteMatching(),
             make_client("random", 0))
    assert r.forfeit and "minimum" in r.forfeit


def test_odd_complete_board_forfeits():
    r = play(GameState(BoardSpec.complete(15)), CompleteMatching(), make_client("random", 0))
    assert r.forfeit


def test_potential_on_fresh_board():
    g = GameState(BoardSpec.bipartite(10))
    assert check_potential(g, range(10), range(10, 20), range(10))
