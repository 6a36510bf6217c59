"""Unbiased perfect matching strategies.

``BipartiteMatching`` forces a perfect matching between two equal sides in at
most ``side + 1`` rounds even when up to ``side / 2`` of the cross edges are
unavailable (forbidden by the board or already Waiter's).  ``CompleteMatching``
plays it on a fixed balanced bipartition of ``K_n``.
"""

from __future__ import annotations

import bisect

from .certificates import Matching
from .core import Edge, ForcedForfeit, GameState, View, edge
from .play import WaiterStrategy

MIN_SIDE = 8


class BipartiteMatching(WaiterStrategy):
    """Waiter's matching strategy on sides ``side_a`` and ``side_b``.

    Stage I matches one vertex of ``side_a`` per round, always the one with
    most blocked edges into the unmatched part of ``side_b``.  Stage II finishes
    the last four pairs with a fixed five-round script.
    """

    name = "pm-bipartite"

    def __init__(self, side_a=None, side_b=None, view: View | None = None):
        self.side_a = None if side_a is None else sorted(side_a)
        self.side_b = None if side_b is None else sorted(side_b)
        self.view = view
        self.ready = False
        self.done = False
        self.pairs: dict[int, int] = {}
        self.stage_one_rounds = 0
        self.stage = 1
        self.script_step = 0
        self.pending: tuple | None = None
        self.failures: list[str] = []

    # setup

    def _init(self, game: GameState) -> None:
        if self.view is None:
            self.view = View(game)
        if self.side_a is None:
            a, b = game.board.sides
            self.side_a, self.side_b = list(a), list(b)
        if len(self.side_a) != len(self.side_b):
            raise ForcedForfeit("sides differ in size")
        self.n = len(self.side_a)
        if self.n < MIN_SIDE:
            raise ForcedForfeit(f"side size {self.n} below the minimum {MIN_SIDE}")
        self.ra = list(self.side_a)
        self.rb = list(self.side_b)
        self.rb_set = set(self.rb)
        self.in_a = set(self.side_a)
        self.sb_set = set(self.side_b)
        self.forbidden_nbrs: dict[int, set[int]] = {}
        for u, v in game.board.forbidden:
            self.forbidden_nbrs.setdefault(u, set()).add(v)
            self.forbidden_nbrs.setdefault(v, set()).add(u)
        self.touched = {u for u in self.side_a if self._blocked(u)}
        self.ready = True

    def _blocked(self, u: int) -> set[int]:
        """Neighbours ``b`` of ``u`` in the unmatched part of side B with ``ub`` not free."""
        view = self.view
        out = (view.wnbrs(u) | view.cnbrs(u) | self.forbidden_nbrs.get(u, set())) & self.rb_set
        return out

    def blocked_in_r(self) -> int:
        """Unavailable edges between the unmatched parts of both sides."""
        return sum(len(self._blocked(u)) for u in self.ra)

    # moves

    def next_offer(self, game: GameState):
        if not self.ready:
            self._init(game)
        if self.done:
            return None
        if self.stage == 1 and len(self.ra) > 4:
            return self._stage_one()
        if self.stage == 1:
            self.stage = 2
            self._start_script()
        return self._script_offer()

    def _stage_one(self):
        ra_set = set(self.ra)
        best, best_d = None, -1
        for u in sorted(self.touched & ra_set):
            d = len(self._blocked(u))
            if d > best_d:
                best, best_d = u, d
        if best is None or best_d == 0:
            best = self.ra[0]
            best_d = len(self._blocked(best))
        avail = len(self.rb) - best_d
        bound = min((len(self.ra) + len(self.rb)) / 2, self.n / 2)
        if avail < bound or bound < 2:
            self.failures.append(f"availability bound fails at u={best}")
        picks = [b for b in self.rb if self.view.is_free(best, b)][:2]
        if len(picks) < 2:
            raise ForcedForfeit(f"no two free edges at {best}")
        self.pending = (best,)
        return [edge(best, picks[0]), edge(best, picks[1])]

    def on_pick(self, game: GameState, pick: Edge) -> None:
        if self.stage == 1:
            u = self.pending[0]
            b = pick[0] if pick[1] == u else pick[1]
            self._match(u, b)
            self.stage_one_rounds += 1
        else:
            self._script_pick(pick)
        for e in game.history[-1][0]:
            for x in e:
                if x in self.in_a:
                    self.touched.add(x)

    def _match(self, a: int, b: int) -> None:
        self.pairs[a] = b
        self.ra.pop(bisect.bisect_left(self.ra, a))
        self.rb.pop(bisect.bisect_left(self.rb, b))
        self.rb_set.discard(b)

    # Stage II: the five-round script on S = {s1..s4}, T = {t1..t4}

    def _start_script(self) -> None:
        self.s = list(self.ra)
        self.t = list(self.rb)
        for a in self.s:
            for b in self.t:
                if not self.view.is_free(a, b):
                    raise ForcedForfeit(f"edge {a}-{b} between the last quadruples is claimed")
        self.script_step = 0
        self.picks: list[Edge] = []

    def _script_offer(self):
        s, t = self.s, self.t
        step = self.script_step
        if step == 0:
            offer = [(s[0], t[0]), (s[0], t[1])]
        elif step == 1:
            offer = [(s[0], t[2]), (s[0], t[3])]
        elif step == 2:
            offer = [(s[1], t[2]), (s[1], t[3])]
        elif step == 3:
            offer = [(s[2], t[3]), (s[3], t[3])]
        elif step == 4:
            offer = [(s[3], t[0]), (s[3], t[1])]
        else:
            self.done = True
            return None
        self.offered = [edge(*e) for e in offer]
        return self.offered

    def _script_pick(self, pick: Edge) -> None:
        s, t = self.s, self.t
        step = self.script_step
        if step == 0:
            c1 = t[0] if t[0] in pick else t[1]
            u1 = t[1] if c1 == t[0] else t[0]
            self._first = (c1, u1)
        elif step == 1:
            c2 = t[2] if t[2] in pick else t[3]
            u2 = t[3] if c2 == t[2] else t[2]
            c1, u1 = self._first
            self.t = [c1, c2, u1, u2]
        elif step == 2:
            t3 = t[2] if t[2] in pick else t[3]
            t4 = t[3] if t3 == t[2] else t[2]
            self.t = [t[0], t[1], t3, t4]
            self.pairs[s[1]] = t3
        elif step == 3:
            s3 = s[2] if s[2] in pick else s[3]
            s4 = s[3] if s3 == s[2] else s[2]
            self.s = [s[0], s[1], s3, s4]
            self.pairs[s3] = t[3]
        elif step == 4:
            tk = t[0] if t[0] in pick else t[1]
            self.pairs[s[3]] = tk
            self.pairs[s[0]] = t[1] if tk == t[0] else t[0]
            self.done = True
        self.script_step += 1

    # checks and certificate

    def potential_ok(self) -> bool:
        """``e(W+H)`` inside the unmatched vertices is at most ``max(0, (|R| - n) / 2)``."""
        r = len(self.ra) + len(self.rb)
        return self.blocked_in_r() <= max(0, (r - self.n) / 2)

    def probe(self, game: GameState) -> list[str]:
        out, self.failures = self.failures, []
        if self.ready and self.stage == 1:
            if not self.potential_ok():
                out.append(f"potential bound fails with |R|={len(self.ra) + len(self.rb)}")
            cn = self.view.cnbrs
            isolated = [x for x in self.side_a if not cn(x) & self.sb_set]
            isolated += [x for x in self.side_b if not cn(x) & self.in_a]
            if sorted(isolated) != sorted(self.ra + self.rb):
                out.append("unmatched set differs from the Client-isolated vertices")
        return out

    def final_checks(self, game: GameState) -> list[str]:
        out = list(self.failures)
        if self.ready and self.stage_one_rounds != self.n - 4:
            out.append(f"Stage I lasted {self.stage_one_rounds} rounds, expected {self.n - 4}")
        return out

    def matching(self) -> tuple[Edge, ...]:
        return tuple(sorted(edge(a, b) for a, b in self.pairs.items()))

    def certificate(self, game: GameState):
        if not self.done:
            return None
        return Matching(self.matching())


class CompleteMatching(BipartiteMatching):
    """Perfect matching on ``K_n``: the first half against the second half."""

    name = "pm-complete"

    def _init(self, game: GameState) -> None:
        n = game.num_vertices
        if n % 2:
            raise ForcedForfeit("perfect matching needs an even vertex count")
        self.side_a = list(range(n // 2))
        self.side_b = list(range(n // 2, n))
        super()._init(game)


def check_potential(game: GameState, side_a, side_b, unmatched) -> bool:
    """Stand-alone form of the Stage I potential bound for arbitrary states."""
    r = set(unmatched)
    n = len(side_a)
    blocked = 0
    for a in side_a:
        if a not in r:
            continue
        for b in side_b:
            if b in r and not game.is_free(a, b):
                blocked += 1
    return blocked <= max(0, (len(r) - n) / 2)
