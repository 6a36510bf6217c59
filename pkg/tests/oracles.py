"""Reference computations written independently of the package.

These share no code with ``wcgames``: a direct game-tree search over
frozensets and graph checks built on networkx.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations

import networkx as nx


def brute_tau(size: int, sets, bias: int = 1) -> float:
    """Waiter's forced-win round count by exhaustive search (``inf`` if Client escapes).

    Offers have ``min(bias + 1, free)`` elements.
    """
    sets = [frozenset(s) for s in sets]

    @lru_cache(maxsize=None)
    def val(waiter: frozenset, client: frozenset) -> float:
        if any(s <= client for s in sets):
            return 0
        free = [e for e in range(size) if e not in waiter and e not in client]
        if not free or all(s & waiter for s in sets):
            return math.inf
        best = math.inf
        for offer in combinations(free, min(bias + 1, len(free))):
            worst = max(val(waiter | (frozenset(offer) - {p}), client | {p}) for p in offer)
            best = min(best, 1 + worst)
        return best

    return val(frozenset(), frozenset())


def k_edges(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def k3_connectivity_sets():
    """Spanning trees of K_3: every pair of its three edges."""
    return [s for s in combinations(range(3), 2)]


def k4_matching_sets():
    idx = {e: i for i, e in enumerate(k_edges(4))}
    return [(idx[(0, 1)], idx[(2, 3)]), (idx[(0, 2)], idx[(1, 3)]), (idx[(0, 3)], idx[(1, 2)])]


def client_graph(game) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(game.num_vertices))
    g.add_edges_from(game.client_edges())
    return g


def has_hamilton_cycle_order(game, order) -> bool:
    n = game.num_vertices
    if sorted(order) != list(range(n)):
        return False
    g = client_graph(game)
    return all(g.has_edge(order[i], order[(i + 1) % n]) for i in range(n))


def is_client_perfect_matching(game, edges) -> bool:
    g = client_graph(game)
    m = nx.Graph(list(edges))
    covered = sorted(m.nodes)
    return (all(g.has_edge(*e) for e in edges) and nx.is_matching(g, set(map(tuple, edges)))
            and covered == list(range(game.num_vertices)) and len(edges) * 2 == game.num_vertices)


def is_client_cycle(game, order) -> bool:
    g = client_graph(game)
    k = len(order)
    return k >= 3 and len(set(order)) == k and all(
        g.has_edge(order[i], order[(i + 1) % k]) for i in range(k))


def embeds_tree(game, tree_edges, mapping) -> bool:
    """``mapping`` is injective and sends every tree edge to a Client edge."""
    g = client_graph(game)
    imgs = list(mapping.values())
    return len(set(imgs)) == len(imgs) and all(g.has_edge(mapping[a], mapping[b]) for a, b in tree_edges)


def isomorphic_trees(edges_a, edges_b) -> bool:
    return nx.is_isomorphic(nx.Graph(list(edges_a)), nx.Graph(list(edges_b)))
