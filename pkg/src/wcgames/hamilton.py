"""Unbiased Hamiltonicity: four growing paths, two merging rounds and a
rotation endgame, finishing within ``m + 1`` rounds on ``m`` vertices.

Stage I grows paths ``P_1..P_4`` from fixed roots, one vertex per round.
Odd rounds (and the last round) offer a single uncovered vertex to the ends
of two consecutive paths; even rounds offer two uncovered vertices to the end
of the partner path of the one just extended.  Stage II joins the four paths
into two, and Stage III joins those into a Hamilton path and closes it with
one Pósa rotation.

At completion the strategy guarantees: every Waiter degree is below 10,
Client's first edge lies on the cycle, and one Stage I path of length at
least ``m / 5`` survives on the cycle with no Waiter edge inside it.
"""

from __future__ import annotations

import heapq

from .certificates import HamiltonCycle
from .core import FAKE, Edge, ForcedForfeit, GameState, View, edge
from .play import WaiterStrategy

MIN_VERTICES = 20
PARTNER = (1, 0, 3, 2)


class HamiltonStrategy(WaiterStrategy):
    """Waiter's Hamilton cycle strategy on ``vertices`` (default: the whole board).

    ``pretend_first=(a, x)`` replaces round 1 by a fake round in which Client
    is pretended to claim ``xa`` and Waiter the other offered edge; ``a`` then
    becomes the first root.  ``stop_at_path`` ends the game once the Hamilton
    path exists.
    """

    name = "ham-unbiased"

    def __init__(self, vertices=None, *, view: View | None = None,
                 pretend_first: tuple[int, int] | None = None, stop_at_path: bool = False,
                 min_vertices: int = MIN_VERTICES):
        self.vertices = None if vertices is None else sorted(vertices)
        self.view = view
        self.pretend_first = pretend_first
        self.stop_at_path = stop_at_path
        self.min_vertices = min_vertices
        self.ready = False
        self.done = False
        self.stage = 1
        self.i = 0
        self.failures: list[str] = []
        self.first_client_edge: Edge | None = None
        self.stage1_paths: list[list[int]] = []
        self.hpath: list[int] | None = None
        self.cycle: list[int] | None = None

    # setup

    def _init(self, game: GameState) -> None:
        if self.view is None:
            self.view = View(game)
        if self.vertices is None:
            self.vertices = list(range(game.num_vertices))
        self.m = m = len(self.vertices)
        if m < self.min_vertices:
            raise ForcedForfeit(f"{m} vertices is below the minimum {self.min_vertices}")
        self.vset = set(self.vertices)
        self.full = m == game.num_vertices and all(v < game.num_vertices for v in self.vertices)
        if self.pretend_first is not None:
            a, x = self.pretend_first
            others = [v for v in self.vertices if v not in (a, x)]
            roots = [a] + others[:3]
        else:
            roots = self.vertices[:4]
        self.paths = [[r] for r in roots]
        self.roots = list(roots)
        self.covered = set(roots)
        self.R = set(self.vertices) - self.covered
        self.heap = sorted(self.R)
        self.cand: set[int] = set()
        self.bad: set[int] = set()
        self.last_extended = 0
        self.ready = True

    def wdeg(self, v: int) -> int:
        nb = self.view.wnbrs(v)
        return len(nb) if self.full else len(nb & self.vset)

    def _lowest_r(self, count: int) -> list[int]:
        out = []
        while len(out) < count:
            while self.heap and self.heap[0] not in self.R:
                heapq.heappop(self.heap)
            if not self.heap:
                break
            out.append(heapq.heappop(self.heap))
        for v in out:
            heapq.heappush(self.heap, v)
        return out

    def _cover(self, x: int, path: int) -> None:
        self.paths[path].append(x)
        self.R.discard(x)
        self.covered.add(x)
        self.cand.discard(x)
        for y in self.view.wnbrs(x):
            if y in self.R:
                self.cand.add(y)

    def _need_free(self, u: int, v: int) -> None:
        if not self.view.is_free(u, v):
            raise ForcedForfeit(f"edge {u}-{v} required by the strategy is claimed")

    # moves

    def next_offer(self, game: GameState):
        if not self.ready:
            self._init(game)
        if self.done:
            return None
        if self.stage == 1:
            if self.R:
                return self._stage_one()
            self._end_stage_one()
        if self.stage == 2:
            if len(self.paths) > 2:
                return self._stage_two()
            self.stage = 3
            self.step3 = 0
            self._check_stage_three_entry()
        return self._stage_three()

    def _stage_one(self):
        self.i += 1
        i = self.i
        if len(self.R) == 1 or i % 2 == 1:
            best, best_d = None, 0
            for z in sorted(self.cand):
                if z not in self.R:
                    continue
                d = len(self.view.wnbrs(z) & self.covered)
                if d > best_d:
                    best, best_d = z, d
            x = best if best is not None else self._lowest_r(1)[0]
            if i == 1 and self.pretend_first is not None:
                x = self.pretend_first[1]
            p, q = (i - 1) % 4, i % 4
            ends = (self.paths[p][-1], self.paths[q][-1])
            for a in ends:
                self._need_free(x, a)
            self.move = ("A", x, p, q)
            offer = [edge(x, ends[0]), edge(x, ends[1])]
            if i == 1 and self.pretend_first is not None:
                a, px = self.pretend_first
                if ends[0] != a:
                    raise ForcedForfeit("pretended first round does not match the strategy")
                self.view.pretend_round(offer, edge(x, a))
                self._after_pick(edge(x, a), offer)
                return FAKE
            return offer
        target = PARTNER[self.last_extended]
        end = self.paths[target][-1]
        pair = self._lowest_r(2)
        if len(pair) < 2:
            raise ForcedForfeit("fewer than two uncovered vertices for a Type B move")
        x, y = pair
        self._need_free(x, end)
        self._need_free(y, end)
        self.move = ("B", x, y, target)
        return [edge(x, end), edge(y, end)]

    def on_pick(self, game: GameState, pick: Edge) -> None:
        offer = game.history[-1][0]
        self._after_pick(pick, offer)

    def _after_pick(self, pick: Edge, offer) -> None:
        if self.first_client_edge is None:
            self.first_client_edge = pick
        for e in offer:
            if e != pick:
                for a, b in (e, e[::-1]):
                    if a in self.R and b in self.covered:
                        self.cand.add(a)
        if self.stage == 1:
            move = self.move
            if move[0] == "A":
                _, x, p, q = move
                j = p if self.paths[p][-1] in pick else q
                self._cover(x, j)
                self.last_extended = j
            else:
                _, x, y, target = move
                z = x if x in pick else y
                self._cover(z, target)
                self.last_extended = target
        elif self.stage == 2:
            self._stage_two_pick(pick)
        else:
            self._stage_three_pick(pick)

    def _end_stage_one(self) -> None:
        self.stage1_paths = [list(p) for p in self.paths]
        self.stage = 2
        self.failures.extend(self.stage_one_report())

    # Stage II

    def _stage_two(self):
        ends = [p[-1] for p in self.paths]
        end_set = set(ends)
        v = max(sorted(ends), key=lambda a: len(self.view.wnbrs(a) & end_set))
        vi = ends.index(v)
        roots = sorted((p[0], k) for k, p in enumerate(self.paths)
                       if k != vi and self.view.is_free(v, p[0]))
        if len(roots) < 2:
            raise ForcedForfeit(f"no two free root edges at {v}")
        self.move = (vi, roots[0], roots[1])
        return [edge(v, roots[0][0]), edge(v, roots[1][0])]

    def _stage_two_pick(self, pick: Edge) -> None:
        vi, r1, r2 = self.move
        root, k = r1 if r1[0] in pick else r2
        merged = self.paths[vi] + self.paths[k]
        self.paths = [p for idx, p in enumerate(self.paths) if idx not in (vi, k)] + [merged]

    # Stage III

    def _check_stage_three_entry(self) -> None:
        q1, q2 = self.paths
        for a in (q1[0], q1[-1]):
            for b in (q2[0], q2[-1]):
                if not self.view.is_free(a, b):
                    self.failures.append(f"endpoint edge {a}-{b} claimed at Stage III entry")
        worst = max(self.wdeg(v) for v in self.vertices)
        if worst > 6:
            self.failures.append(f"Waiter degree {worst} > 6 at Stage III entry")

    def _stage_three(self):
        q1, q2 = self.paths
        if self.step3 == 0:
            v = q1[-1]
            self._need_free(v, q2[0])
            self._need_free(v, q2[-1])
            return [edge(v, q2[0]), edge(v, q2[-1])]
        if self.step3 == 1:
            i, j = self._rotation_pair()
            p = self.hpath
            return [edge(p[i - 1], p[-1]), edge(p[j - 1], p[-1])]
        if self.step3 == 2:
            p = self.hpath
            i = self.rot
            return [edge(p[0], p[i]), edge(p[0], p[-1])]
        self.done = True
        return None

    def _rotation_pair(self) -> tuple[int, int]:
        """First label pair ``(i, j)`` in lexicographic order usable for the rotation."""
        p = self.hpath
        m = len(p)
        free = self.view.is_free
        e1 = self.first_client_edge
        if not free(p[0], p[-1]):
            raise ForcedForfeit("closing edge v_1 v_n is claimed")
        good = [i for i in range(2, m - 1)
                if edge(p[i - 1], p[i]) != e1 and free(p[0], p[i]) and free(p[i - 1], p[-1])]
        for a, i in enumerate(good):
            for j in good[a + 1:]:
                if j - i >= 2:
                    self.pair = (i, j)
                    return i, j
        raise ForcedForfeit("no rotation pair available")

    def _stage_three_pick(self, pick: Edge) -> None:
        q1, q2 = self.paths
        if self.step3 == 0:
            v = q1[-1]
            self.hpath = q1 + (q2 if pick == edge(v, q2[0]) else q2[::-1])
            if self.stop_at_path:
                self.done = True
        elif self.step3 == 1:
            p = self.hpath
            i, j = self.pair
            self.rot = i if edge(p[i - 1], p[-1]) == pick else j
        else:
            p = self.hpath
            i = self.rot
            if pick == edge(p[0], p[-1]):
                self.cycle = list(p)
            else:
                self.cycle = p[:i] + p[i:][::-1]
            self.done = True
        self.step3 += 1

    # checks

    def a2_waiter_edges(self) -> list[Edge]:
        ends = [p[-1] for p in self.paths]
        s = set(ends)
        return sorted({edge(a, b) for a in ends for b in self.view.wnbrs(a) if b in s})

    def probe(self, game: GameState) -> list[str]:
        out, self.failures = self.failures, []
        if not self.ready or self.stage != 1 or self.i == 0:
            return out
        i, m = self.i, self.m
        bad = sorted(z for z in self.cand if z in self.R and self.view.wnbrs(z) & self.covered)
        a2 = self.a2_waiter_edges()
        if i <= m - 5 and i % 2 == 1:
            if len(a2) != 1:
                out.append(f"after odd round {i}: e_W(A_2) = {len(a2)}")
            else:
                ends = {self.paths[(i - 1) % 4][-1], self.paths[i % 4][-1]}
                if set(a2[0]) != ends:
                    out.append(f"after odd round {i}: A_2 edge {a2[0]} joins the wrong paths")
            if bad:
                out.append(f"after odd round {i}: bad vertices {bad}")
        elif i <= m - 5:
            if a2:
                out.append(f"after even round {i}: e_W(A_2) = {len(a2)}")
            if len(bad) != 1:
                out.append(f"after even round {i}: {len(bad)} bad vertices")
            else:
                z = bad[0]
                near = set(self.paths[(i - 2) % 4]) | set(self.paths[(i - 1) % 4])
                wz = self.view.wnbrs(z)
                if len(wz & self.covered) != 1 or len(wz & near) != 1:
                    out.append(f"after even round {i}: bad vertex {z} has the wrong degree")
        elif len(a2) > 2:
            out.append(f"after round {i}: e_W(A_2) = {len(a2)} > 2")
        return out

    def stage_one_report(self) -> list[str]:
        out = []
        roots = set(p[0] for p in self.paths)
        ends = set(p[-1] for p in self.paths)
        for r in roots:
            if self.view.wnbrs(r) & (roots | ends):
                out.append(f"Stage I end: Waiter edge between root {r} and a path end")
        if len(self.a2_waiter_edges()) > 2:
            out.append("Stage I end: e_W(A_2) > 2")
        worst = max(self.wdeg(v) for v in self.vertices)
        if worst > 4:
            out.append(f"Stage I end: Waiter degree {worst} > 4")
        for k, p in enumerate(self.paths):
            if waiter_edges_inside(self.view, p):
                out.append(f"Stage I end: Waiter edge inside path {k + 1}")
        return out

    def properties(self) -> dict[str, bool]:
        """The three completion guarantees, checked on the final position."""
        return ham_properties(self.view, self.vertices, self.cycle, self.first_client_edge,
                              self.stage1_paths)

    def final_checks(self, game: GameState) -> list[str]:
        out = list(self.failures)
        self.failures = []
        if self.cycle is not None:
            props = self.properties()
            out.extend(f"property {k} fails" for k, ok in props.items() if not ok)
        return out

    def certificate(self, game: GameState):
        if self.cycle is None or not self.full:
            return None
        return HamiltonCycle(tuple(self.cycle))

    def clean_path(self) -> list[int] | None:
        """A Stage I path of length at least ``m / 5`` lying on the cycle with no
        Waiter edge inside, the lowest-numbered one if several qualify."""
        return clean_stage_one_path(self.view, self.cycle, self.stage1_paths)


def waiter_edges_inside(view: View, vertices) -> bool:
    s = set(vertices)
    return any(view.wnbrs(v) & s for v in vertices)


def on_cycle(cycle, path) -> bool:
    pos = {v: k for k, v in enumerate(cycle)}
    m = len(cycle)
    for a, b in zip(path, path[1:]):
        d = (pos[a] - pos[b]) % m
        if d not in (1, m - 1):
            return False
    return True


def clean_stage_one_path(view: View, cycle, paths) -> list[int] | None:
    if cycle is None:
        return None
    m = len(cycle)
    for p in paths:
        if 5 * (len(p) - 1) >= m and on_cycle(cycle, p) and not waiter_edges_inside(view, p):
            return list(p)
    return None


def ham_properties(view: View, vertices, cycle, first_client_edge, stage1_paths) -> dict[str, bool]:
    vset = set(vertices)
    p1 = all(len(view.wnbrs(v) & vset) < 10 for v in vertices)
    p2 = False
    if cycle is not None and first_client_edge is not None:
        ring = {edge(a, b) for a, b in zip(cycle, cycle[1:] + cycle[:1])}
        p2 = first_client_edge in ring
    p3 = clean_stage_one_path(view, cycle, stage1_paths) is not None
    return {"p1": p1, "p2": p2, "p3": p3}
