"""Generic Client policies used as the adversarial pool in tests and sweeps."""

from __future__ import annotations

import random

from .core import Edge, GameState, Owner
from .play import ClientPolicy, ScriptedClient

TARGETS = ("matching", "hamilton", "tree", "triangle")


class UniformRandom(ClientPolicy):
    name = "random"

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def choose(self, game, offer):
        return self.rng.randrange(len(offer))


class FirstEdge(ClientPolicy):
    name = "first"

    def choose(self, game, offer):
        return 0


class MinWaiterDegree(ClientPolicy):
    """Keeps the edge whose endpoints have the smallest total Waiter degree."""

    name = "min-waiter-degree"

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def choose(self, game, offer):
        scores = [len(game.wadj[u]) + len(game.wadj[v]) for u, v in offer]
        best = min(scores)
        return self.rng.choice([i for i, s in enumerate(scores) if s == best])


class _Components:
    """Union-find over Client edges, fed incrementally from the game history."""

    def __init__(self):
        self.parent: dict[int, int] = {}
        self.seen = 0

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p.get(root, root) != root:
            root = p[root]
        while p.get(x, x) != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def sync(self, game: GameState) -> None:
        for h in game.history[self.seen:]:
            if h == "fake":
                continue
            if h[0] == "grant":
                if h[2] == Owner.CLIENT:
                    for u, v in h[1]:
                        self.union(u, v)
            else:
                u, v = h[0][h[1]]
                self.union(u, v)
        self.seen = len(game.history)


class AntiStructure(ClientPolicy):
    """Greedily keeps the offered edge least useful for the target structure.

    An edge scores one point per endpoint already saturated for the target
    (Client degree 1 for a matching, 2 for Hamilton cycles) and one more when
    it closes a Client cycle.  For triangles, edges that close no triangle
    score highest.  Ties are broken by the seeded generator.
    """

    name = "anti-structure"

    def __init__(self, target: str = "hamilton", seed: int = 0):
        if target not in TARGETS:
            raise ValueError(f"unknown target {target!r}")
        self.target = target
        self.rng = random.Random(seed)
        self.comp = _Components()

    def score(self, game: GameState, e: Edge) -> int:
        u, v = e
        if self.target == "triangle":
            return 0 if game.cadj[u] & game.cadj[v] else 1
        cap = 1 if self.target == "matching" else 2
        s = (len(game.cadj[u]) >= cap) + (len(game.cadj[v]) >= cap)
        if self.target != "matching" and self.comp.find(u) == self.comp.find(v):
            s += 1
        return s

    def choose(self, game, offer):
        self.comp.sync(game)
        scores = [self.score(game, e) for e in offer]
        best = max(scores)
        return self.rng.choice([i for i, s in enumerate(scores) if s == best])


def completes_exactly(game: GameState, e: Edge, target: str, tree_form=None) -> bool:
    """Whether Client's graph plus ``e`` is exactly a copy of the target.

    Only meaningful in the round where Client's edge count reaches the
    target's edge count, when containing the structure means being it.
    """
    u, v = e
    deg = [len(s) for s in game.cadj]
    deg[u] += 1
    deg[v] += 1
    if target == "matching":
        return all(d == 1 for d in deg)
    if target == "hamilton":
        if any(d != 2 for d in deg):
            return False
        return _connected_with(game, e)
    if target == "tree":
        if not _connected_with(game, e):
            return False
        from .trees import canonical_form

        adj = [set(s) for s in game.cadj]
        adj[u].add(v)
        adj[v].add(u)
        return canonical_form(adj) == tree_form
    if target == "triangle":
        adj = [set(s) for s in game.cadj]
        adj[u].add(v)
        adj[v].add(u)
        for a in adj:
            if len(a) != 2:
                return False
            y, z = a
            if z not in adj[y]:
                return False
        return True
    raise ValueError(f"unknown target {target!r}")


def _connected_with(game: GameState, e: Edge) -> bool:
    n = game.num_vertices
    adj = game.cadj
    u, v = e
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        nbrs = adj[x] | ({v} if x == u else {u} if x == v else set())
        for y in nbrs:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


class LastEdgeAvoider(ClientPolicy):
    """Refuses to complete the target in the first round it could appear.

    The target needs ``m`` edges; in the round where Client would reach
    ``m`` edges the policy keeps an offered edge that does not turn its graph
    into a copy of the target, if one exists.  Otherwise it plays like
    ``AntiStructure``.
    """

    name = "avoider"

    def __init__(self, target: str = "hamilton", seed: int = 0, tree_adj=None):
        self.target = target
        self.fallback = AntiStructure(target, seed)
        self.tree_form = None
        if target == "tree":
            from .trees import canonical_form

            self.tree_form = canonical_form(tree_adj)

    def size(self, game: GameState) -> int:
        n = game.num_vertices
        return {"matching": n // 2, "hamilton": n, "tree": n - 1, "triangle": n}[self.target]

    def choose(self, game, offer):
        ncl = game.real_rounds + game.granted
        if ncl + 1 == self.size(game):
            safe = [i for i, e in enumerate(offer)
                    if not completes_exactly(game, e, self.target, self.tree_form)]
            if safe and len(safe) < len(offer):
                self.fallback.comp.sync(game)
                return safe[0]
        return self.fallback.choose(game, offer)


def make_client(kind: str, seed: int = 0, target: str = "hamilton", **kw) -> ClientPolicy:
    if kind == "random":
        return UniformRandom(seed)
    if kind == "first":
        return FirstEdge()
    if kind == "min-waiter-degree":
        return MinWaiterDegree(seed)
    if kind == "anti-structure":
        return AntiStructure(target, seed)
    if kind == "avoider":
        return LastEdgeAvoider(target, seed, kw.get("tree_adj"))
    if kind == "delayer":
        from .triangles import Delayer

        return Delayer()
    if kind == "scripted":
        return ScriptedClient(kw.get("picks", ()))
    raise ValueError(f"unknown client policy {kind!r}")


CLIENT_KINDS = ("random", "first", "min-waiter-degree", "anti-structure", "avoider", "delayer")


def client_pool(seed: int, target: str) -> list[ClientPolicy]:
    """The three-policy pool used by the sweeps."""
    return [UniformRandom(seed), MinWaiterDegree(seed), AntiStructure(target, seed)]
