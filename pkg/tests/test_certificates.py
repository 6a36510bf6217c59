import pytest

from wcgames.certificates import (NOT_A_BOARD_VERTEX, NOT_CLIENT, NOT_MATCHING, NOT_SPANNING,
                                  PIN_MOVED, REPEATED_VERTEX, HamiltonCycle, Matching,
                                  PancyclicFamily, TreeEmbedding, TreeFactor, TriangleFactor,
                                  TrianglePacking, certificate_from_dict)
from wcgames.core import BoardSpec, GameState, Owner


def game_with(n, client=(), waiter=()):
    g = GameState(BoardSpec.complete(n))
    if client:
        g.grant(client)
    if waiter:
        g.grant(waiter, Owner.WAITER)
    return g


K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_matching():
    g = game_with(4, [(0, 1), (2, 3)], [(0, 2)])
    assert Matching(((0, 1), (2, 3))).check(g) is None
    assert Matching(((0, 1),)).check(g) == NOT_SPANNING
    assert Matching(((0, 1), (1, 2))).check(g) == NOT_MATCHING
    assert Matching(((0, 2), (1, 3))).check(g) == NOT_CLIENT
    assert Matching(((0, 1), (2, 9))).check(g) == NOT_A_BOARD_VERTEX


def test_hamilton_cycle():
    g = game_with(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert HamiltonCycle((0, 1, 2, 3)).check(g) is None
    assert HamiltonCycle((0, 2, 1, 3)).check(g) == NOT_CLIENT
    assert HamiltonCycle((0, 1, 2)).check(g) == NOT_SPANNING
    assert HamiltonCycle((0, 1, 1, 3)).check(g) == REPEATED_VERTEX


def test_pancyclic_family():
    g = game_with(4, K4)
    fam = PancyclicFamily({3: (0, 1, 2), 4: (0, 1, 2, 3)})
    assert fam.check(g) is None
    assert PancyclicFamily({4: (0, 1, 2, 3)}).check(g) is not None
    assert PancyclicFamily({3: (0, 1, 2, 3), 4: (0, 1, 2, 3)}).check(g) is not None


def test_tree_embedding_and_factor():
    g = game_with(4, [(0, 1), (1, 2), (2, 3)])
    path = ((0, 1), (1, 2), (2, 3))
    assert TreeEmbedding(path, (0, 1, 2, 3), pin=(0, 0)).check(g) is None
    assert TreeEmbedding(path, (0, 1, 2, 3), pin=(0, 3)).check(g) == PIN_MOVED
    assert TreeEmbedding(path, (1, 0, 2, 3)).check(g) == NOT_CLIENT
    assert TreeFactor(((0, 1),), ((0, 1), (2, 3))).check(g) is None
    assert TreeFactor(((0, 1),), ((0, 1), (1, 2))).check(g) is not None


def test_triangles():
    g = game_with(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert TriangleFactor(((0, 1, 2), (3, 4, 5))).check(g) is None
    assert TriangleFactor(((0, 1, 2),)).check(g) == NOT_SPANNING
    assert TrianglePacking(((0, 1, 2),)).check(g) is None
    assert TrianglePacking(((0, 1, 3),)).check(g) is not None


@pytest.mark.parametrize("cert", [
    Matching(((0, 1), (2, 3))),
    HamiltonCycle((0, 1, 2, 3)),
    PancyclicFamily({3: (0, 1, 2), 4: (0, 1, 2, 3)}),
    TreeEmbedding(((0, 1),), (0, 1), pin=(0, 0)),
    TreeFactor(((0, 1),), ((0, 1), (2, 3))),
    TriangleFactor(((0, 1, 2),)),
    TrianglePacking(((0, 1, 2),)),
])
def test_dict_roundtrip(cert):
    g = game_with(4, K4)
    back = certificate_from_dict(cert.to_dict())
    assert back.kind == cert.kind and back.check(g) == cert.check(g)


def test_unknown_kind():
    with pytest.raises(ValueError):
        certificate_from_dict({"kind": "nope"})
