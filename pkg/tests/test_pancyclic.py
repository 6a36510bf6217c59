import math

import pytest
from hypothesis import given, strategies as st

from oracles import is_client_cycle
from wcgames.clients import make_client
from wcgames.core import BoardSpec, GameState
from wcgames.pancyclic import (MIN_VERTICES, PancyclicStrategy, choose_depth, decompose_length,
                               iterated_log, round_bound)
from wcgames.play import play


def test_depth_and_bound_for_1024():
    k, g, f = choose_depth(1024)
    # log2 1024 = 10, log2 10 = 3.32, log2 3.32 = 1.73 < 2
    assert (k, g, f) == (3, 2, 102)
    assert round_bound(1024) == 1024 + 10 + 102 + 3


def test_iterated_log():
    assert iterated_log(16, 2) == 2
    assert iterated_log(16, 0) == 16


@given(st.lists(st.integers(1, 6), min_size=1, max_size=6), st.integers(1, 8), st.data())
def test_decompose_length(gaps, f, data):
    # greedy works whenever each gap is at most f plus the gaps before it
    growth = all(a <= f + sum(gaps[:i]) for i, a in enumerate(gaps))
    x = data.draw(st.integers(0, f - 1 + sum(gaps)))
    if growth:
        t, chosen = decompose_length(x, f, gaps)
        assert 0 <= t <= f - 1 and t + sum(gaps[j - 1] for j in chosen) == x


def test_decompose_rejects_out_of_range():
    with pytest.raises(ValueError):
        decompose_length(100, 2, [1, 1])


def test_pancyclic_game_512():
    n = MIN_VERTICES
    g = GameState(BoardSpec.complete(n))
    r = play(g, PancyclicStrategy(), make_client("anti-structure", 0, "hamilton"))
    assert r.clean and g.round <= round_bound(n)
    cycles = r.certificate.cycles
    assert sorted(cycles) == list(range(3, n + 1))
    for length in (3, 4, 17, n // 2, n):
        assert is_client_cycle(g, cycles[length]) and len(cycles[length]) == length


def test_small_board_forfeits():
    r = play(GameState(BoardSpec.complete(100)), PancyclicStrategy(), make_client("random", 0))
    assert r.forfeit
