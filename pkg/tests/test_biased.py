import math

import pytest

from oracles import has_hamilton_cycle_order, is_client_perfect_matching
from wcgames.biased import (BiasedConstants, BiasedHamStrategy, BiasedPMStrategy,
                            RotationCycleBuilder, make_remainder)
from wcgames.clients import client_pool, make_client
from wcgames.core import FAKE, BoardSpec, GameState, Owner
from wcgames.play import play


def test_literal_constants_follow_the_formula():
    k = BiasedConstants.literal(c=0.01, n0=1)
    assert k.C0 == 10000 and k.delta0 == pytest.approx(0.001)
    assert k.delta == pytest.approx(1e-6) and k.C == pytest.approx(1e10)
    assert BiasedConstants.literal(c=0.5, n0=300).C0 == 30000


def test_desk_constants():
    k = BiasedConstants.desk()
    assert (k.C0, k.delta0, k.delta, k.C) == (20, 0.05, 0.01, 2000)
    assert k.violations(3000, 5) == [] and k.violations(300, 5)


@pytest.mark.parametrize("b", [1, 2, 4])
def test_ham_biased_small(b):
    n = 1200
    for client in client_pool(b, "hamilton"):
        g = GameState(BoardSpec.complete(n, b))
        s = BiasedHamStrategy()
        r = play(g, s, client)
        assert r.clean and has_hamilton_cycle_order(g, s.cycle)
        assert s.stage_rounds[1] == n - 20 * b - 1 and s.stage_rounds[4] == b
        assert g.real_rounds <= s.round_bound() and s.max_spread <= 1


def test_stage_five_every_pick_closes():
    g = GameState(BoardSpec.complete(1000, 3))
    s = BiasedHamStrategy()
    while True:
        offer = s.next_offer(g)
        if s.stage == 5:
            break
        if offer == FAKE:
            g.apply_fake_round()
            continue
        g.apply_round(offer, 0)
        s.on_pick(g, tuple(offer[0]))
    assert len(offer) == 4 and all(s._closes(c, e) for c, e in zip(s.closing_cycles(), offer))
    assert not s.failures


def test_pm_biased():
    n, b = 1200, 3
    g = GameState(BoardSpec.complete(n, b))
    s = BiasedPMStrategy()
    r = play(g, s, make_client("random", 0))
    assert r.clean and is_client_perfect_matching(g, r.certificate.edges)
    m = n - 20 * b
    fakes = sum(1 for h in g.history[:m - 1] if h == FAKE)
    assert fakes == m // 2 - 1 and len(s.sub.vertices) == 20 * b


def test_pm_biased_odd_n_forfeits():
    r = play(GameState(BoardSpec.complete(1201, 2)), BiasedPMStrategy(), make_client("random", 0))
    assert r.forfeit


def test_degree_probe_flags_planted_vertex():
    class Planted(BiasedHamStrategy):
        def _enter_stage_four(self):
            r = self.R[0]
            targets = [y for y in self.path if self.view.is_free(r, y)][:int(0.05 * self.n) + 5]
            self.view.game.grant([(r, y) for y in targets], Owner.WAITER)
            super()._enter_stage_four()

    g = GameState(BoardSpec.complete(1200, 2))
    r = play(g, Planted(), make_client("random", 0))
    assert any("Stage IV entry" in m for m in r.probe_failures)


def test_spread_probe_flags_planted_heavy_vertex():
    g = GameState(BoardSpec.complete(1200, 2))
    g.grant([(5, v) for v in range(600, 700)], Owner.WAITER)
    r = play(g, BiasedHamStrategy(), make_client("random", 0))
    assert any("spread" in m for m in r.probe_failures)


def test_rotation_builder_alone():
    g = GameState(BoardSpec.complete(60, 3))
    from wcgames.core import View
    sub = RotationCycleBuilder(range(60), 3, View(g))
    client = make_client("anti-structure", 0, "hamilton")
    while True:
        offer = sub.next_offer(g)
        if offer is None:
            break
        i = client.choose(g, tuple(offer))
        g.apply_round(offer, i)
        sub.on_pick(g, tuple(offer[i]))
    assert sub.done and has_hamilton_cycle_order(g, sub.cycle) and g.real_rounds <= sub.budget
    assert not RotationCycleBuilder.guaranteed


def test_stub_remainder_is_accounted_as_fake_rounds():
    g = GameState(BoardSpec.complete(1000, 2))
    s = BiasedHamStrategy(remainder="stub")
    r = play(g, s, make_client("random", 0))
    assert r.clean and g.fake_rounds == math.ceil(math.comb(40, 2) / 3)


def test_literal_profile_cannot_fit_desk_sizes():
    r = play(GameState(BoardSpec.complete(3000, 2)), BiasedHamStrategy(BiasedConstants.literal()),
             make_client("random", 0))
    assert r.forfeit


def test_unknown_remainder():
    with pytest.raises(ValueError):
        make_remainder("nope", range(5), 1, None)
