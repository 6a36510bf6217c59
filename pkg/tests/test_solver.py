import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_tau, k3_connectivity_sets, k4_matching_sets
from wcgames.solver import (INF, HypergraphGame, Solver, SolverBudgetExceeded, clique_game,
                            connectivity_game, matching_game, tau_wc)


def test_single_element():
    r = tau_wc(HypergraphGame(1, ((0,),)))
    assert r.tau == 1 and r.principal_variation == [([0], 0)]


def test_k3_connectivity_matches_oracle():
    # Round 1 offers two of the three edges; round 2 must offer the last edge
    # alone, and any two edges of a triangle connect it.
    assert tau_wc(connectivity_game(3)).tau == brute_tau(3, k3_connectivity_sets()) == 2


def test_k4_matching_is_unwinnable():
    r = tau_wc(matching_game(4))
    assert r.tau == brute_tau(6, k4_matching_sets()) == INF
    assert r.tau >= 3 and not r.winnable and r.describe() == "Unwinnable"


def test_lower_bound_by_smallest_set():
    g = clique_game(4, 3)
    r = tau_wc(g)
    assert r.tau >= g.min_set_size


def test_self_consistency_and_optimal_offer():
    s = Solver(connectivity_game(4))
    v = s.value(0, 0)
    assert s.consistency_violations() == []
    offer = s.optimal_offer(0, 0)
    worst = max(s.value(cw, cc) for _, cw, cc in s.children(0, 0, offer))
    assert 1 + worst == v


def test_terminal_positions():
    s = Solver(HypergraphGame(2, ((0,),)))
    assert s.optimal_offer(0, 1) is None
    assert s.value(0, 1) == 0
    assert s.value(1, 0) == INF


def test_budget():
    with pytest.raises(SolverBudgetExceeded):
        tau_wc(matching_game(6), max_states=100)


def test_rejects_bad_sets():
    with pytest.raises(ValueError):
        HypergraphGame(2, ((0, 2),))
    with pytest.raises(ValueError):
        HypergraphGame(2, ())


hypergraphs = st.integers(2, 6).flatmap(lambda m: st.tuples(
    st.just(m),
    st.lists(st.sets(st.integers(0, m - 1), min_size=1, max_size=3), min_size=1, max_size=4),
    st.integers(1, 2)))


@settings(max_examples=80, deadline=None)
@given(hypergraphs)
def test_agrees_with_brute_force(h):
    m, sets, b = h
    assert tau_wc(HypergraphGame(m, tuple(map(tuple, sets)), b)).tau == brute_tau(m, sets, b)


@settings(max_examples=60, deadline=None)
@given(hypergraphs, st.sets(st.integers(0, 5), min_size=1, max_size=3))
def test_adding_a_winning_set_never_increases_tau(h, extra):
    m, sets, b = h
    extra = {e % m for e in extra}
    base = tau_wc(HypergraphGame(m, tuple(map(tuple, sets)), b)).tau
    more = tau_wc(HypergraphGame(m, tuple(map(tuple, sets + [extra])), b)).tau
    assert more <= base


def test_more_bias_can_lower_tau_under_short_offers():
    # Monotonicity in the bias fails once offers shrink to the free count:
    # with b = 1 Client always refuses element 0, with b = 2 Waiter offers
    # the other three first and then 0 alone.
    game = lambda b: HypergraphGame(4, ((0,),), b)
    assert tau_wc(game(1)).tau == brute_tau(4, [(0,)], 1) == INF
    assert tau_wc(game(2)).tau == brute_tau(4, [(0,)], 2) == 2


@settings(max_examples=60, deadline=None)
@given(hypergraphs)
def test_bias_monotone_when_no_short_offer_arises(h):
    m, sets, b = h
    base = tau_wc(HypergraphGame(m, tuple(map(tuple, sets)), b))
    more = tau_wc(HypergraphGame(m, tuple(map(tuple, sets)), b + 1))
    if more.tau < base.tau:
        assert more.short_offer_used
