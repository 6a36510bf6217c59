"""Spanning trees and tree factors.

A tree on ``n`` vertices with a pinned vertex ``v`` is forced within ``n``
rounds so that a chosen board vertex ``p`` represents ``v``.  Trees with a
long bare path are built around that path, which is filled in last by the
Hamiltonicity strategy; trees with many leaf neighbours are built without
some of their leaves, which are attached last by the bipartite matching
strategy.  Tree factors reuse the same strategy on a larger tree through a
phantom vertex whose rounds are only pretended.
"""

from __future__ import annotations

import heapq
import math
import random
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from .certificates import TreeEmbedding, TreeFactor
from .core import FAKE, Edge, ForcedForfeit, GameState, View, edge
from .hamilton import MIN_VERTICES as HAM_MIN, HamiltonStrategy
from .matching import MIN_SIDE, BipartiteMatching
from .play import WaiterStrategy

MU = 1 / 3
EPS_EMBED = MU / 21


@dataclass(frozen=True)
class Tree:
    n: int
    edges: tuple

    def __post_init__(self):
        es = tuple(sorted(edge(*e) for e in self.edges))
        object.__setattr__(self, "edges", es)
        if len(es) != self.n - 1 or len(set(es)) != len(es):
            raise ValueError("a tree on n vertices has n - 1 distinct edges")
        if es and (es[0][0] < 0 or max(b for _, b in es) >= self.n):
            raise ValueError("edge endpoint outside 0..n-1")
        seen, stack = {0}, [0]
        while stack:
            for y in self.adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != self.n:
            raise ValueError("edges do not form a connected tree")

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for a, b in self.edges:
            nb[a].add(b)
            nb[b].add(a)
        return tuple(frozenset(s) for s in nb)

    def degree(self, x: int) -> int:
        return len(self.adj[x])

    @property
    def max_degree(self) -> int:
        return max(len(s) for s in self.adj)

    @cached_property
    def leaves(self) -> frozenset:
        return frozenset(x for x in range(self.n) if len(self.adj[x]) == 1)

    @cached_property
    def leaf_neighbours(self) -> frozenset:
        return frozenset(y for x in self.leaves for y in self.adj[x])

    def is_path(self) -> bool:
        return self.max_degree <= 2

    def path_order(self) -> list[int]:
        start = min(self.leaves) if self.n > 1 else 0
        order, prev = [start], None
        while len(order) < self.n:
            nxt = next(y for y in self.adj[order[-1]] if y != prev)
            prev = order[-1]
            order.append(nxt)
        return order

    # constructors

    @classmethod
    def from_edges(cls, edges, n: int | None = None) -> "Tree":
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=0)
        return cls(n, tuple(edges))

    @classmethod
    def from_prufer(cls, seq) -> "Tree":
        g = nx.from_prufer_sequence(list(seq))
        return cls(g.number_of_nodes(), tuple(g.edges()))

    @classmethod
    def path(cls, n: int) -> "Tree":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def two_leaf_tipped(cls, n: int) -> "Tree":
        """A path on ``n - 4`` vertices with two extra leaves at each end."""
        if n < 5:
            raise ValueError("the two-leaf-tipped tree needs at least 5 vertices")
        core = n - 4
        es = [(i, i + 1) for i in range(core - 1)]
        es += [(0, core), (0, core + 1), (core - 1, core + 2), (core - 1, core + 3)]
        return cls(n, tuple(es))

    @classmethod
    def random(cls, n: int, rng: random.Random, max_degree: int | None = None,
               max_tries: int = 100_000) -> "Tree":
        """Uniform labelled tree, conditioned on the degree bound by rejection."""
        if n <= 2:
            return cls.path(n)
        cap = None if max_degree is None else max_degree - 1
        for _ in range(max_tries):
            seq = [rng.randrange(n) for _ in range(n - 2)]
            if cap is None or max(Counter(seq).values()) <= cap:
                return cls.from_prufer(seq)
        raise ValueError(f"no tree with maximum degree {max_degree} after {max_tries} draws")

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


# isomorphism

_CODES: dict[tuple, int] = {}


def _centres(adj, vertices) -> list[int]:
    deg = {x: len(adj[x]) for x in vertices}
    layer = [x for x in vertices if deg[x] <= 1]
    left = len(deg)
    while left > 2:
        left -= len(layer)
        nxt = []
        for x in layer:
            for y in adj[x]:
                deg[y] -= 1
                if deg[y] == 1:
                    nxt.append(y)
        layer = nxt
    return sorted(layer)


def _rooted_code(adj, root: int) -> int:
    order, parent = [root], {root: None}
    for x in order:
        for y in adj[x]:
            if y != parent[x]:
                parent[y] = x
                order.append(y)
    code: dict[int, int] = {}
    kids: dict[int, list[int]] = {}
    for x in reversed(order):
        key = tuple(sorted(kids.pop(x, ())))
        code[x] = _CODES.setdefault(key, len(_CODES))
        if parent[x] is not None:
            kids.setdefault(parent[x], []).append(code[x])
    return code[root]


def canonical_form(adj) -> int:
    """Isomorphism invariant of a tree given as adjacency sets: equal values
    within one process mean isomorphic trees."""
    vertices = [x for x in range(len(adj)) if adj[x]] or [0]
    return min(_rooted_code(adj, c) for c in _centres(adj, vertices))


# structure


@dataclass(frozen=True)
class BarePath:
    path: tuple

    @property
    def length(self) -> int:
        return len(self.path) - 1


@dataclass(frozen=True)
class LeafRich:
    neighbours: tuple


def maximal_bare_paths(t: Tree) -> list[list[int]]:
    """Maximal runs of degree-2 vertices, each with its two outer neighbours."""
    seen: set[int] = set()
    out = []
    for s in range(t.n):
        if t.degree(s) != 2 or s in seen:
            continue
        run = [s]
        seen.add(s)
        for side in (0, 1):
            prev, cur = s, sorted(t.adj[s])[side]
            while t.degree(cur) == 2 and cur not in seen:
                seen.add(cur)
                run.append(cur) if side else run.insert(0, cur)
                prev, cur = cur, next(y for y in t.adj[cur] if y != prev)
            run.append(cur) if side else run.insert(0, cur)
        out.append(run)
    if t.n == 2:
        out.append([0, 1])
    return out


def bare_path_avoiding(t: Tree, v: int | None) -> list[int]:
    """The longest bare path of ``t`` not containing ``v``."""
    best: list[int] = []
    for run in maximal_bare_paths(t):
        pieces = [run]
        if v in run:
            k = run.index(v)
            pieces = [run[:k], run[k + 1:]]
        for piece in pieces:
            if len(piece) > len(best):
                best = piece
    return best


def longest_bare_path(t: Tree) -> list[int]:
    return bare_path_avoiding(t, None)


def classify_tree(t: Tree, mu: float = MU) -> BarePath | LeafRich:
    """Many leaf neighbours, or else a bare path of length at least ``mu * sqrt(n)``."""
    need = mu * math.sqrt(t.n)
    if len(t.leaf_neighbours) >= need:
        return LeafRich(tuple(sorted(t.leaf_neighbours)))
    path = longest_bare_path(t)
    if len(path) - 1 >= need:
        return BarePath(tuple(path))
    raise ValueError("tree has neither a long bare path nor many leaf neighbours")


def select_leaf_matching(t: Tree, v: int) -> tuple[dict[int, int], str]:
    """Leaf edges meeting one distance-parity class around ``v``.

    Returns ``(leaf_of, parity)`` where ``leaf_of`` maps each chosen leaf
    neighbour to its matched leaf.  Chosen leaf neighbours are pairwise
    non-adjacent, and ``v`` is never matched.
    """
    dist = {v: 0}
    order = [v]
    for x in order:
        for y in t.adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                order.append(y)
    m0: dict[int, int] = {}
    for x in sorted(t.leaf_neighbours):
        if x != v:
            m0[x] = min(y for y in t.adj[x] if y in t.leaves)
    odd = {x: l for x, l in m0.items() if dist[x] % 2 == 1}
    even = {x: l for x, l in m0.items() if dist[x] % 2 == 0}
    if len(odd) >= len(even):
        return odd, "odd"
    return even, "even"


def default_pin(t: Tree) -> int:
    """Lowest vertex that is neither a leaf nor a leaf neighbour and has degree at most n/3."""
    for x in range(t.n):
        if x not in t.leaves and x not in t.leaf_neighbours and 3 * t.degree(x) <= t.n:
            return x
    raise ValueError("no admissible vertex to pin")


class _SortedPool:
    """Ascending pool of board vertices with removal."""

    def __init__(self, items):
        self.items = sorted(items)
        self.live = set(self.items)
        self.start = 0

    def __len__(self) -> int:
        return len(self.live)

    def __contains__(self, x) -> bool:
        return x in self.live

    def remove(self, x: int) -> None:
        self.live.discard(x)

    def __iter__(self):
        items, live = self.items, self.live
        while self.start < len(items) and items[self.start] not in live:
            self.start += 1
        for x in items[self.start:]:
            if x in live:
                yield x


class TreeEmbedStrategy(WaiterStrategy):
    """Force a spanning copy of ``tree`` with the pinned tree vertex ``v`` on board vertex ``p``.

    With ``phantom=True`` the tree has one vertex more than the board and
    ``p`` is a phantom vertex; rounds at ``p`` are pretended, not played.
    A path tree given without a pin is forced as a Hamilton path in
    ``n - 1`` rounds.
    """

    name = "tree-embed"

    def __init__(self, tree: Tree, v: int | None = None, p: int | None = None, *,
                 phantom: bool = False, mu: float = MU, eps: float = EPS_EMBED):
        self.tree = tree
        self.v = v
        self.p = p
        self.phantom = phantom
        self.mu = mu
        self.eps = eps
        self.ready = False
        self.done = False
        self.failures: list[str] = []
        self.f: dict[int, int] = {}
        self.sub: WaiterStrategy | None = None
        self.case = None
        self.stage = 1

    # setup

    def _init(self, game: GameState) -> None:
        t = self.tree
        nv = game.num_vertices
        if t.n != nv + (1 if self.phantom else 0):
            raise ForcedForfeit(f"tree on {t.n} vertices does not fit a board on {nv}")
        self.view = View(game)
        self.ready = True
        if self.v is None and t.is_path() and not self.phantom:
            self.case = "path"
            self.stage = 3
            self.sub = HamiltonStrategy(view=self.view, stop_at_path=True)
            return
        if self.v is None:
            self.v = default_pin(t)
        if self.p is None:
            self.p = nv if self.phantom else 0
        v = self.v
        if v in t.leaves or v in t.leaf_neighbours or 3 * t.degree(v) > t.n:
            raise ForcedForfeit(f"tree vertex {v} cannot be pinned")
        others = [t.degree(x) for x in range(t.n) if x != v]
        self.degree_cap = max(self.eps * math.sqrt(t.n), max(others, default=0))
        kind = classify_tree(t, self.mu)
        self.f = {v: self.p}
        self.inv = {self.p: v}
        board = range(nv)
        if isinstance(kind, LeafRich):
            self._init_case_b()
        else:
            self._init_case_a()
        self.A = _SortedPool(x for x in board if x not in self.inv)
        self.tp_adj = {x: [y for y in sorted(t.adj[x]) if self.in_tprime(x, y)]
                       for x in range(t.n)}
        self.remaining = {x: sum(1 for y in self.tp_adj[x] if y not in self.f) for x in self.f}
        self.open_heap = [self.f[x] for x in self.f if self.remaining[x]]
        heapq.heapify(self.open_heap)
        self.stage_one_left = [y for y in sorted(t.adj[v]) if y not in self.f]
        self.marked: set[int] = set()
        self.fs_prime: set[int] = set()
        self.stop_seen = False
        self.prev_ew = 0
        self.new_image: int | None = None

    def _init_case_a(self) -> None:
        t, v = self.tree, self.v
        need = max(math.ceil(self.mu * math.sqrt(t.n)) + 1, HAM_MIN + 1)
        run = bare_path_avoiding(t, v)
        if len(run) - 1 < need:
            raise ForcedForfeit(f"longest bare path avoiding the pin has {len(run) - 1} "
                                f"edges, {need} needed")
        path = run[:need + 1]
        inner = set(path[1:-1])
        seen, stack = {v}, [v]
        while stack:
            for y in self.tree.adj[stack.pop()]:
                if y not in seen and y not in inner:
                    seen.add(y)
                    stack.append(y)
        if path[0] not in seen:
            path.reverse()
        self.case = "A"
        self.P = path
        self.u, self.u1, self.w1, self.w = path[0], path[1], path[-2], path[-1]
        self.interior = set(path[2:-2])
        w = self.w
        q = min(x for x in range(self.view.nv) if x != self.p)
        self.f[w] = q
        self.inv[q] = w
        self.a_floor = self.mu * math.sqrt(t.n) - 2

    def _init_case_b(self) -> None:
        t = self.tree
        self.case = "B"
        self.leaf_of, self.parity = select_leaf_matching(t, self.v)
        self.leaves_prime = set(self.leaf_of.values())
        if len(self.leaf_of) < MIN_SIDE:
            raise ForcedForfeit(f"leaf matching of size {len(self.leaf_of)} below {MIN_SIDE}")
        self.a_floor = self.mu / 3 * math.sqrt(t.n) - 2

    def in_tprime(self, x: int, y: int) -> bool:
        """Whether the tree edge ``xy`` belongs to the subtree built in Stages I-II."""
        if self.case == "A":
            return not ({x, y} & self.interior) and {x, y} != {self.u1, self.w1}
        return x not in self.leaves_prime and y not in self.leaves_prime

    # bookkeeping

    def _embed(self, z: int, image: int) -> None:
        self.f[z] = image
        self.inv[image] = z
        self.A.remove(image)
        self.marked.discard(image)
        self.remaining[z] = sum(1 for y in self.tp_adj[z] if y not in self.f)
        for y in self.tp_adj[z]:
            if y in self.f:
                self.remaining[y] -= 1
        if self.remaining[z]:
            heapq.heappush(self.open_heap, image)
        self.new_image = image
        if self.case == "B" and z in self.leaf_of:
            self.fs_prime.add(image)
            for a in self.view.wnbrs(image):
                if a in self.A:
                    self.marked.add(a)

    def open_images(self, limit: int) -> list[int]:
        out = []
        heap = self.open_heap
        while heap and len(out) < limit:
            x = heapq.heappop(heap)
            if self.remaining[self.inv[x]] and (not out or out[-1] != x):
                out.append(x)
        for x in out:
            heapq.heappush(heap, x)
        return out

    def _next_child(self, t_vertex: int, by_degree: bool = False) -> int:
        kids = [y for y in self.tp_adj[t_vertex] if y not in self.f]
        if by_degree:
            return max(kids, key=lambda y: (len(self.tp_adj[y]), -y))
        return kids[0]

    def is_stopping(self, image: int) -> bool:
        t = self.inv[image]
        return all(len(self.tp_adj[y]) == 1 for y in self.tp_adj[t] if y not in self.f)

    def _free_from(self, anchors, pool) -> list[int]:
        free = self.view.is_free
        return [a for a in pool if all(free(a, x) for x in anchors)]

    def _pick_available(self, anchors, count: int, prefer: bool, avoid_marked: bool = False):
        out: list[int] = []
        free = self.view.is_free
        if prefer:
            for a in sorted(self.marked):
                if all(free(a, x) for x in anchors):
                    out.append(a)
                    if len(out) == count:
                        return out
        for a in self.A:
            if a in out or (avoid_marked and a in self.marked):
                continue
            if all(free(a, x) for x in anchors):
                out.append(a)
                if len(out) == count:
                    return out
        raise ForcedForfeit(f"no {count} available vertices with free edges to {list(anchors)}")

    # moves

    def next_offer(self, game: GameState):
        if not self.ready:
            self._init(game)
        if self.done:
            return None
        if self.stage == 1:
            if self.stage_one_left:
                return self._stage_one()
            self.stage = 2
        if self.stage == 2:
            if len(self.f) < self._tprime_size():
                return self._stage_two()
            self._enter_stage_three()
        return self._stage_three(game)

    def _tprime_size(self) -> int:
        if self.case == "A":
            return self.tree.n - len(self.P) + 4
        return self.tree.n - len(self.leaves_prime)

    def _stage_one(self):
        t = self.stage_one_left[0]
        a1, a2 = self._pick_available([self.p], 2, prefer=False)
        self.move = ("one", t, a1, a2)
        offer = [edge(self.p, a1), edge(self.p, a2)]
        self.last_offer = offer
        if self.view.is_phantom(self.p):
            pick = offer[0]
            self.view.pretend_round(offer, pick)
            self._after_pick(pick, offer)
            return FAKE
        return offer

    def _stage_two(self):
        if self.case == "A":
            exclude = {self.f.get(self.u1), self.f.get(self.w1)}
            ims = [x for x in self.open_images(3) if x not in exclude]
            if not ims:
                raise ForcedForfeit("no open vertex to extend")
            x = ims[0]
            z = self._next_child(self.inv[x])
            a1, a2 = self._pick_available([x], 2, prefer=False)
            self.move = ("two", x, z, a1, a2)
            return self._offer([edge(x, a1), edge(x, a2)])
        ims = self.open_images(2)
        if len(ims) == 1 and self.is_stopping(ims[0]):
            self.stop_seen = True
        if len(ims) >= 2:
            u1, u2 = ims
            z1 = self._next_child(self.inv[u1])
            z2 = self._next_child(self.inv[u2])
            (a,) = self._pick_available([u1, u2], 1, prefer=True)
            self.move = ("case1", u1, z1, u2, z2, a)
            return self._offer([edge(a, u1), edge(a, u2)])
        (u,) = ims
        if u not in self.fs_prime:
            z = self._next_child(self.inv[u])
            a1, a2 = self._pick_available([u], 2, prefer=True)
            self.move = ("two", u, z, a1, a2)
        else:
            z = self._next_child(self.inv[u], by_degree=True)
            a1, a2 = self._pick_available([u], 2, prefer=False, avoid_marked=True)
            self.move = ("two", u, z, a1, a2)
        return self._offer([edge(u, a1), edge(u, a2)])

    def _offer(self, offer):
        if sum(self.p in e for e in offer) == 1:
            self.failures.append(f"offer {offer} has exactly one edge at the pinned vertex")
        self.last_offer = offer
        return offer

    def on_pick(self, game: GameState, pick: Edge) -> None:
        if self.stage == 3:
            self.sub.on_pick(game, pick)
            self._after_sub()
            return
        self._after_pick(pick, game.history[-1][0])

    def _after_pick(self, pick: Edge, offer) -> None:
        self.new_image = None
        move = self.move
        if move[0] == "one":
            _, t, a1, a2 = move
            self.stage_one_left.pop(0)
            self._embed(t, a1 if a1 in pick else a2)
        elif move[0] == "two":
            _, x, z, a1, a2 = move
            self._embed(z, a1 if a1 in pick else a2)
        else:
            _, u1, z1, u2, z2, a = move
            self._embed(z1 if u1 in pick else z2, a)
        if self.case == "B":
            for e in offer:
                if e == pick:
                    continue
                for s, a in (e, e[::-1]):
                    if s in self.fs_prime and a in self.A:
                        self.marked.add(a)

    # Stage III

    def _enter_stage_three(self) -> None:
        self.stage = 3
        view = self.view
        if self.case == "A":
            fu1, fw1 = self.f[self.u1], self.f[self.w1]
            a_prime = sorted(list(self.A) + [fu1, fw1])
            inside = set(a_prime)
            if any((view.wnbrs(x) | view.cnbrs(x)) & inside for x in a_prime):
                self.failures.append("Stage III entry: claimed edge inside the path vertices")
            self.a_prime = a_prime
            self.sub = HamiltonStrategy(a_prime, view=view, pretend_first=(fu1, fw1))
        else:
            side_a = sorted(self.fs_prime)
            side_b = sorted(self.A)
            bside = set(side_b)
            ew = sum(len(view.wnbrs(x) & bside) for x in side_a)
            ec = sum(len(view.cnbrs(x) & bside) for x in side_a)
            if ew > 2 * self.degree_cap + 1 or 2 * ew > len(side_a):
                self.failures.append(f"Stage III entry: {ew} Waiter edges across the matching sides")
            if ec:
                self.failures.append("Stage III entry: Client edge across the matching sides")
            self.sub = BipartiteMatching(side_a, side_b, view=view)

    def _stage_three(self, game: GameState):
        offer = self.sub.next_offer(game)
        if offer is None:
            self._after_sub()
            if not self.done:
                raise ForcedForfeit("final stage stopped without its structure")
            return None
        if offer == FAKE:
            self._after_sub()
        return offer

    def _after_sub(self) -> None:
        sub = self.sub
        if not sub.done:
            return
        if self.case == "path":
            order = self.tree.path_order()
            self.f = dict(zip(order, sub.hpath))
        elif self.case == "A":
            cyc = sub.cycle
            fu1, fw1 = self.f[self.u1], self.f[self.w1]
            i = cyc.index(fu1)
            m = len(cyc)
            step = -1 if cyc[(i + 1) % m] == fw1 else 1
            walk = [cyc[(i + step * k) % m] for k in range(m)]
            if walk[-1] != fw1:
                self.failures.append("pretended edge missing from the Hamilton cycle")
            for x, img in zip(self.P[1:-1], walk):
                self.f[x] = img
        else:
            for x, b in sub.pairs.items():
                self.f[self.leaf_of[self.inv[x]]] = b
        self.done = True

    # checks

    def probe(self, game: GameState) -> list[str]:
        out, self.failures = self.failures, []
        if not self.ready:
            return out
        if self.stage == 3 or self.done:
            if self.sub is not None:
                out.extend(self.sub.probe(game))
            return out
        out.extend(self.embedding_report())
        return out

    def embedding_report(self) -> list[str]:
        """Degree bookkeeping clauses after a Stage I or II round."""
        out = []
        view, A = self.view, self.A
        if len(A) < self.a_floor:
            out.append(f"|A| = {len(A)} below {self.a_floor:.2f}")
        offer = getattr(self, "last_offer", ())
        for a, b in offer:
            if a in A and b in A:
                out.append(f"edge {a}-{b} inside the available set")
        for x in {y for e in offer for y in e}:
            if x in self.inv and not view.is_phantom(x):
                if len(view.wnbrs(x) & A.live) > len(view.cnbrs(x)):
                    out.append(f"d_W({x}, A) exceeds d_C({x})")
        if self.case != "B":
            return out
        touched = {y for e in offer for y in e if y in A}
        if self.new_image is not None and self.new_image in self.fs_prime:
            touched |= view.wnbrs(self.new_image) & A.live
        fsp = self.fs_prime
        for a in touched:
            if len(view.wnbrs(a) & fsp) > 1:
                out.append(f"available vertex {a} has two Waiter edges into f(S')")
        ew = sum(len(view.wnbrs(a) & fsp) for a in self.marked)
        cap = self.degree_cap
        if not self.stop_seen:
            if ew > cap + 1:
                out.append(f"e_W(f(S'), A) = {ew} exceeds {cap + 1:.2f}")
            if self.prev_ew >= cap + 1 and ew > cap:
                out.append(f"e_W(f(S'), A) stayed at {ew} after reaching the ceiling")
        self.prev_ew = ew
        return out

    def final_checks(self, game: GameState) -> list[str]:
        out = list(self.failures)
        self.failures = []
        if self.sub is not None:
            out.extend(self.sub.final_checks(game))
        if self.done and self.case != "path":
            used = game.round - (1 if self.case == "A" else 0)
            if used > self.tree.n:
                out.append(f"{used} rounds exceed the budget {self.tree.n}")
        return out

    def mapping(self) -> tuple[int, ...]:
        return tuple(self.f[x] for x in range(self.tree.n))

    def certificate(self, game: GameState):
        if not self.done or self.phantom:
            return None
        pin = None if self.case == "path" else (self.v, self.p)
        return TreeEmbedding(self.tree.edges, self.mapping(), pin)


def attach_vertex(t: Tree) -> int:
    """Lowest vertex of maximum degree: where the phantom joins each copy."""
    top = t.max_degree
    return min(x for x in range(t.n) if t.degree(x) == top)


def factor_host(t: Tree, copies: int) -> Tree:
    """Disjoint copies of ``t`` joined through one extra vertex, labelled last."""
    k = t.n
    hub = k * copies
    c = attach_vertex(t)
    es = [(j * k + a, j * k + b) for j in range(copies) for a, b in t.edges]
    es += [(hub, j * k + c) for j in range(copies)]
    return Tree(hub + 1, tuple(es))


class TreeFactorStrategy(WaiterStrategy):
    """Force a ``T``-factor by embedding the joined host tree with the hub on a phantom."""

    name = "tree-factor"

    def __init__(self, small: Tree):
        self.small = small
        self.inner: TreeEmbedStrategy | None = None
        self.done = False

    def _init(self, game: GameState) -> None:
        n, k = game.num_vertices, self.small.n
        if n % k:
            raise ForcedForfeit(f"{k} does not divide {n}")
        self.copies = n // k
        host = factor_host(self.small, self.copies)
        self.inner = TreeEmbedStrategy(host, v=host.n - 1, phantom=True)

    def next_offer(self, game: GameState):
        if self.inner is None:
            self._init(game)
        offer = self.inner.next_offer(game)
        self.done = self.inner.done
        return offer

    def on_pick(self, game: GameState, pick: Edge) -> None:
        self.inner.on_pick(game, pick)
        self.done = self.inner.done

    def probe(self, game: GameState) -> list[str]:
        return self.inner.probe(game) if self.inner else []

    def final_checks(self, game: GameState) -> list[str]:
        return self.inner.final_checks(game) if self.inner else []

    def certificate(self, game: GameState):
        if not self.done:
            return None
        f, k = self.inner.f, self.small.n
        copies = tuple(tuple(f[j * k + i] for i in range(k)) for j in range(self.copies))
        return TreeFactor(self.small.edges, copies)


class PathFactorStrategy(WaiterStrategy):
    """Force a factor of ``k``-vertex paths in exactly ``(k - 1) n / k`` rounds.

    Blocks are built one after another.  A block starts by offering a fresh
    vertex to two fresh vertices; the one Client rejects is the spare.  The
    first spare starts the second block, and every later spare completes the
    previous block, which still lacks one vertex.  Every other round offers a
    fresh vertex to both ends of the current path.
    """

    name = "tree-factor"

    def __init__(self, k: int):
        if k < 3:
            raise ValueError("path factors are handled for k >= 3")
        self.k = k
        self.paths: list[list[int]] = []
        self.done = False
        self.gen = None
        self.failures: list[str] = []

    def _script(self, n: int):
        k = self.k
        fresh = iter(range(n))
        blocks = n // k

        def start(x):
            a, s = next(fresh), next(fresh)
            pick = yield [edge(x, a), edge(x, s)]
            other = s if a in pick else a
            self.paths.append([x, a if other == s else s])
            return other

        def extend(path, y):
            pick = yield [edge(y, path[0]), edge(y, path[-1])]
            if path[0] in pick:
                path.insert(0, y)
            else:
                path.append(y)

        first_spare = yield from start(next(fresh))
        for _ in range(k - 3):
            yield from extend(self.paths[0], next(fresh))
        for j in range(1, blocks):
            x = first_spare if j == 1 else next(fresh)
            spare = yield from start(x)
            yield from extend(self.paths[j - 1], spare)
            for _ in range(k - 3 + (j == blocks - 1)):
                yield from extend(self.paths[j], next(fresh))

    def next_offer(self, game: GameState):
        if self.done:
            return None
        try:
            if self.gen is None:
                n = game.num_vertices
                if n % self.k or n < 2 * self.k:
                    raise ForcedForfeit(f"need a multiple of {self.k} that is at least {2 * self.k}")
                self.gen = self._script(n)
                return next(self.gen)
            return self.gen.send(self.pick)
        except StopIteration:
            self.done = True
            return None

    def on_pick(self, game: GameState, pick: Edge) -> None:
        self.pick = pick

    def final_checks(self, game: GameState) -> list[str]:
        n = game.num_vertices
        expect = (self.k - 1) * n // self.k
        if self.done and game.real_rounds != expect:
            return [f"{game.real_rounds} rounds, expected {expect}"]
        return []

    def certificate(self, game: GameState):
        if not self.done:
            return None
        return TreeFactor(Tree.path(self.k).edges, tuple(tuple(p) for p in self.paths))
