"""Exact minimax values of Waiter-Client games on tiny hypergraphs.

Positions are pairs of bitmasks (Waiter's elements, Client's elements).  The
value of a position is the number of further rounds Waiter needs to force
Client to own a winning set, or ``INF`` when Client can avoid it forever.
Waiter picks the offer, Client the element, so

    value = 0                                  if Client owns a winning set
    value = INF                                if every set meets Waiter's
                                               elements or nothing is free
    value = 1 + min_offer max_pick value(child) otherwise.

Offers contain ``min(b + 1, free)`` elements, following the short-offer rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

INF = math.inf


class SolverBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class HypergraphGame:
    size: int
    sets: tuple
    bias: int = 1

    def __post_init__(self):
        if self.bias < 1:
            raise ValueError("bias must be at least 1")
        if not self.sets:
            raise ValueError("need at least one winning set")
        masks = []
        for s in self.sets:
            s = tuple(sorted(set(s)))
            if not s or s[0] < 0 or s[-1] >= self.size:
                raise ValueError(f"winning set {s} not a nonempty subset of the universe")
            masks.append(s)
        object.__setattr__(self, "sets", tuple(masks))

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << i for i in s) for s in self.sets)

    @property
    def min_set_size(self) -> int:
        return min(len(s) for s in self.sets)

    @classmethod
    def from_graph(cls, edges, structures, bias: int = 1) -> "HypergraphGame":
        """Index ``edges`` and translate each structure (an edge list) to a set."""
        index = {tuple(sorted(e)): i for i, e in enumerate(edges)}
        return cls(len(edges), tuple(tuple(index[tuple(sorted(e))] for e in s)
                                     for s in structures), bias)

    def to_dict(self) -> dict:
        return {"size": self.size, "sets": [list(s) for s in self.sets], "bias": self.bias}

    @classmethod
    def from_dict(cls, d: dict) -> "HypergraphGame":
        return cls(d["size"], tuple(tuple(s) for s in d["sets"]), d.get("bias", 1))


@dataclass
class SolveResult:
    tau: float
    principal_variation: list = field(default_factory=list)
    states_visited: int = 0
    short_offer_used: bool = False

    @property
    def winnable(self) -> bool:
        return self.tau != INF

    def describe(self) -> str:
        return "Unwinnable" if self.tau == INF else str(int(self.tau))


class Solver:
    """Memoized minimax over positions of one game."""

    def __init__(self, game: HypergraphGame, max_states: int = 2_000_000):
        self.game = game
        self.sets = game.masks
        self.full = (1 << game.size) - 1
        self.max_states = max_states
        self.memo: dict[tuple[int, int], float] = {}
        self.short_offer_used = False

    def won(self, c: int) -> bool:
        return any(f & c == f for f in self.sets)

    def dead(self, w: int) -> bool:
        return all(f & w for f in self.sets)

    def offers(self, w: int, c: int):
        free = [i for i in range(self.game.size) if not (w | c) >> i & 1]
        k = min(self.game.bias + 1, len(free))
        for combo in combinations(free, k):
            yield sum(1 << i for i in combo)

    def children(self, w: int, c: int, offer: int):
        bits = offer
        while bits:
            low = bits & -bits
            yield low, w | (offer ^ low), c | low
            bits ^= low

    def value(self, w: int, c: int) -> float:
        key = (w, c)
        got = self.memo.get(key)
        if got is not None:
            return got
        if self.won(c):
            v = 0
        elif self.dead(w) or (w | c) == self.full:
            v = INF
        else:
            v = INF
            for offer in self.offers(w, c):
                if offer.bit_count() < self.game.bias + 1:
                    self.short_offer_used = True
                worst = 0
                for _, cw, cc in self.children(w, c, offer):
                    worst = max(worst, self.value(cw, cc))
                    if worst == INF:
                        break
                v = min(v, 1 + worst)
        self.memo[key] = v
        if len(self.memo) > self.max_states:
            raise SolverBudgetExceeded(f"more than {self.max_states} positions")
        return v

    def optimal_offer(self, w: int, c: int) -> int | None:
        """An offer achieving the position's value; ties go to the smallest mask."""
        target = self.value(w, c)
        if target == 0 or target == INF:
            return None
        best = None
        for offer in self.offers(w, c):
            worst = max(self.value(cw, cc) for _, cw, cc in self.children(w, c, offer))
            if 1 + worst == target and (best is None or offer < best):
                best = offer
        return best

    def client_reply(self, w: int, c: int, offer: int) -> int:
        """Client's best pick: the child of largest value, smallest bit on ties."""
        best = None
        for low, cw, cc in self.children(w, c, offer):
            v = self.value(cw, cc)
            if best is None or v > best[0]:
                best = (v, low)
        return best[1]

    def principal_variation(self) -> list[tuple[list[int], int]]:
        w = c = 0
        line = []
        while True:
            offer = self.optimal_offer(w, c)
            if offer is None:
                return line
            pick = self.client_reply(w, c, offer)
            line.append(([i for i in range(self.game.size) if offer >> i & 1], pick.bit_length() - 1))
            w, c = w | (offer ^ pick), c | pick

    def consistency_violations(self) -> list[tuple[int, int]]:
        """Memo nodes whose stored value disagrees with a fresh one-step backup."""
        bad = []
        for (w, c), v in list(self.memo.items()):
            if self.won(c):
                expect = 0
            elif self.dead(w) or (w | c) == self.full:
                expect = INF
            else:
                expect = min(1 + max(self.value(cw, cc) for _, cw, cc in self.children(w, c, o))
                             for o in self.offers(w, c))
            if expect != v:
                bad.append((w, c))
        return bad


def tau_wc(game: HypergraphGame, max_states: int = 2_000_000) -> SolveResult:
    solver = Solver(game, max_states)
    tau = solver.value(0, 0)
    pv = solver.principal_variation() if tau != INF else []
    return SolveResult(tau, pv, len(solver.memo), solver.short_offer_used)


def complete_graph_edges(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def perfect_matchings(vertices) -> list[list[tuple[int, int]]]:
    vs = sorted(vertices)
    if not vs:
        return [[]]
    first, rest = vs[0], vs[1:]
    out = []
    for i, x in enumerate(rest):
        for m in perfect_matchings(rest[:i] + rest[i + 1:]):
            out.append([(first, x)] + m)
    return out


def spanning_trees(n: int) -> list[list[tuple[int, int]]]:
    """All spanning trees of K_n by filtering (n - 1)-edge subsets."""
    out = []
    for es in combinations(complete_graph_edges(n), n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for u, v in es:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            out.append(list(es))
    return out


def cliques(n: int, t: int) -> list[list[tuple[int, int]]]:
    return [list(combinations(q, 2)) for q in combinations(range(n), t)]


def connectivity_game(n: int, bias: int = 1) -> HypergraphGame:
    return HypergraphGame.from_graph(complete_graph_edges(n), spanning_trees(n), bias)


def matching_game(n: int, bias: int = 1) -> HypergraphGame:
    return HypergraphGame.from_graph(complete_graph_edges(n), perfect_matchings(range(n)), bias)


def clique_game(n: int, t: int, bias: int = 1) -> HypergraphGame:
    return HypergraphGame.from_graph(complete_graph_edges(n), cliques(n, t), bias)
