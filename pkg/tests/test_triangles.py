from wcgames.clients import client_pool
from wcgames.core import BoardSpec, GameState
from wcgames.play import enumerate_replies, play
from wcgames.solver import clique_game, tau_wc
from wcgames.triangles import (SCRIPT_MOVES, SCRIPT_SIZE, WAITER_POOL, Delayer, ExactCliqueOracle,
                               PreSeededClique, TriangleFactorStrategy, TwoTriangleStrategy,
                               count_lower_bound, find_triangle_factor, make_triangle_waiter,
                               post_seed_bound)


def test_two_triangle_script_exhaustive_other_anchors():
    results = [r for _, r in enumerate_replies(
        lambda c: play(GameState(BoardSpec.complete(SCRIPT_SIZE)), TwoTriangleStrategy(4, 9), c))]
    assert len(results) > 1
    for r in results:
        assert r.clean and r.game.real_rounds <= SCRIPT_MOVES
        a, b = r.certificate.triangles
        assert not set(a) & set(b) and {4, 9} <= set(a) | set(b)


def test_factor_with_seeded_clique():
    n = 102
    for client in client_pool(2, "triangle") + [Delayer()]:
        g = GameState(BoardSpec.complete(n))
        s = TriangleFactorStrategy()
        r = play(g, s, client)
        assert r.clean and s.post_seed_rounds(g) <= post_seed_bound(n)


def test_seeded_clique_is_granted():
    g = GameState(BoardSpec.complete(60))
    k = PreSeededClique(12).seed(g)
    assert len(k) == 12 and g.granted == 66


def test_delayer_lower_bound_clauses():
    for kind in WAITER_POOL[:3]:
        d = Delayer()
        g = GameState(BoardSpec.complete(48))
        r = play(g, make_triangle_waiter(kind, 0), d)
        assert r.won
        cb = count_lower_bound(g, r.certificate.triangles, d.marked)
        assert cb["bound_ok"] and cb["high_degree"] and cb["many_marked"]


def test_find_triangle_factor():
    cadj = [set() for _ in range(6)]
    for a, b in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]:
        cadj[a].add(b)
        cadj[b].add(a)
    assert sorted(map(sorted, find_triangle_factor(cadj))) == [[0, 1, 2], [3, 4, 5]]
    cadj[3].discard(5)
    cadj[5].discard(3)
    assert find_triangle_factor(cadj) is None


def test_exact_clique_oracle_matches_solver():
    tau = tau_wc(clique_game(5, 3)).tau
    for client in client_pool(0, "triangle"):
        o = ExactCliqueOracle(3, range(5))
        g = GameState(BoardSpec.complete(5))
        r = play(g, o, client)
        assert r.forfeit is None and len(o.clique) == 3 and g.real_rounds <= tau
