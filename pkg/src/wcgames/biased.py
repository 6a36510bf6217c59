"""Biased Hamiltonicity and biased perfect matching.

The Hamilton strategy runs five stages on ``K_n`` with bias ``b``:

I.   Grow a Client path ``a_1 .. a_{n - C_0 b}`` by offering the endpoint's
     edges to the ``b + 1`` uncovered vertices of least Waiter degree.
II.  Force a Hamilton cycle ``H`` on the remainder ``R`` with a pluggable
     subroutine.
III. Offer ``b + 1`` free edges from ``a_1`` into ``R``; Client's pick
     ``a_1 x~`` fixes ``x``, a cycle neighbour of ``x~``.
IV.  ``b`` Pósa rotations at the far endpoint, each offering ``b + 1``
     chords, give ``b + 1`` distinct endpoints ``v_i`` with ``v_i x`` free.
V.   Offer every ``v_i x``.  Whatever Client takes closes a Hamilton cycle.

The matching strategy runs Stage I with every second round faked and then
Stage II, and reads the matching off the path and the remainder cycle.
"""

from __future__ import annotations

import heapq
import math
from collections import Counter
from dataclasses import dataclass

from .certificates import HamiltonCycle, Matching
from .core import FAKE, Edge, ForcedForfeit, GameState, Owner, View, edge
from .hamilton import MIN_VERTICES as HAM_MIN, HamiltonStrategy
from .play import WaiterStrategy

REMAINDER_KINDS = ("auto", "rotation", "hamilton", "stub")


@dataclass(frozen=True)
class BiasedConstants:
    """The constants ``C_0``, ``delta_0``, ``delta`` and ``C = C_0 / delta``.

    ``c`` and ``n0`` are the constants of the external pancyclicity result;
    they are only known for the ``literal`` profile, where they are guesses.
    """

    profile: str
    C0: int
    delta0: float
    delta: float
    c: float | None = None
    n0: int | None = None

    @property
    def C(self) -> float:
        return self.C0 / self.delta

    @classmethod
    def literal(cls, c: float = 0.01, n0: int = 1) -> "BiasedConstants":
        C0 = math.ceil(100 * max(1 / c, n0))
        delta0 = 0.1 * c
        return cls("literal", C0, delta0, 0.01 * min(delta0, 1 / C0), c, n0)

    @classmethod
    def desk(cls) -> "BiasedConstants":
        return cls("desk", 20, 0.05, 0.01)

    @classmethod
    def named(cls, name: str) -> "BiasedConstants":
        if name == "literal":
            return cls.literal()
        if name == "desk":
            return cls.desk()
        raise ValueError(f"unknown constants profile {name!r}")

    def remainder_size(self, b: int) -> int:
        return self.C0 * b

    def violations(self, n: int, b: int) -> list[str]:
        """Preconditions of the constants regime that ``(n, b)`` breaks."""
        out = []
        if b > self.delta * n:
            out.append(f"bias {b} exceeds delta*n = {self.delta * n:g}")
        if self.n0 is not None and self.C0 * b < self.n0:
            out.append(f"remainder {self.C0 * b} below n0 = {self.n0}")
        return out

    def ham_bound(self, n: int, b: int) -> float:
        return n + self.C * b

    def pm_bound(self, n: int, b: int) -> float:
        return n / 2 + self.C * b

    def to_dict(self) -> dict:
        return {"profile": self.profile, "C0": self.C0, "delta0": self.delta0,
                "delta": self.delta, "C": self.C, "c": self.c, "n0": self.n0}


# Stage II subroutines.  Each exposes next_offer/on_pick, ``done``, ``cycle``,
# a declared round ``budget`` and whether its success is ``guaranteed``.

def _other(e: Edge, v: int) -> int:
    return e[1] if e[0] == v else e[0]


class RotationCycleBuilder:
    """Heuristic biased Hamilton cycle builder on a small vertex set.

    Grows a path greedily while the endpoint sees ``b + 1`` uncovered vertices
    through free edges.  Each remaining vertex ``z`` is then absorbed by
    collecting ``b + 1`` rotation endpoints whose edge to ``z`` is free and
    offering all of those edges; closing the cycle is the same move with ``z``
    the path's start.  Forfeits when too few rotation chords are free.
    """

    guaranteed = False

    def __init__(self, vertices, bias: int, view: View):
        self.vertices = sorted(vertices)
        self.b = bias
        self.view = view
        m = len(self.vertices)
        self.budget = math.ceil(math.comb(m, 2) / (bias + 1))
        self.done = False
        self.cycle: list[int] | None = None
        self.absorptions = 0
        self._gen = self._moves()
        self._pick: Edge | None = None

    def next_offer(self, game: GameState):
        if self.done:
            return None
        try:
            offer = next(self._gen) if self._pick is None else self._gen.send(self._pick)
        except StopIteration:
            self.done = True
            return None
        self._pick = None
        return offer

    def on_pick(self, game: GameState, pick: Edge) -> None:
        self._pick = pick

    def probe(self, game: GameState) -> list[str]:
        return []

    def _wdeg(self, v: int) -> int:
        return len(self.view.wnbrs(v))

    def _moves(self):
        view, b = self.view, self.b
        s = self.vertices[0]
        path = [s]
        U = set(self.vertices[1:])
        while U:
            t = path[-1]
            near = [u for u in U if view.is_free(t, u)]
            if len(near) >= b + 1:
                near.sort(key=lambda u: (self._wdeg(u), u))
                pick = yield [edge(t, u) for u in near[:b + 1]]
                u = _other(pick, t)
                path.append(u)
                U.discard(u)
                continue
            z = min(U, key=lambda u: (self._wdeg(u), u))
            path = (yield from self._absorb(path, z)) + [z]
            U.discard(z)
            self.absorptions += 1
        self.cycle = yield from self._absorb(path, s)

    def _absorb(self, path: list[int], z: int):
        """Rotate until ``b + 1`` endpoints see ``z`` freely, then offer them.

        Returns the Hamilton path (same start) whose endpoint Client joined to ``z``.
        """
        view, b = self.view, self.b
        ends: dict[int, list[int]] = {}
        seen = {path[-1]}
        if view.is_free(path[-1], z):
            ends[path[-1]] = path
        cur = path
        while len(ends) < b + 1:
            v = cur[-1]
            chosen = []
            for i in range(len(cur) - 1):
                y, yp = cur[i], cur[i + 1]
                if yp in seen or not view.is_free(yp, z) or not view.is_free(y, v):
                    continue
                chosen.append(i)
                if len(chosen) == b + 1:
                    break
            if len(chosen) < b + 1:
                raise ForcedForfeit(f"only {len(chosen)} rotation chords available at {v}")
            pick = yield [edge(cur[i], v) for i in chosen]
            y = _other(pick, v)
            i = cur.index(y)
            cur = cur[:i + 1] + cur[i + 1:][::-1]
            seen.add(cur[-1])
            ends[cur[-1]] = cur
        pick = yield [edge(e, z) for e in sorted(ends)]
        return ends[_other(pick, z)]


class HamiltonRemainder(HamiltonStrategy):
    """The unbiased Hamilton strategy, usable as a remainder subroutine for b = 1."""

    guaranteed = True

    def __init__(self, vertices, bias: int, view: View):
        if bias != 1:
            raise ValueError("the unbiased Hamilton remainder needs bias 1")
        super().__init__(vertices, view=view)
        self.budget = len(vertices) + 1


class StubRemainder:
    """Oracle stand-in: grants a Hamilton cycle of the remainder to Client and
    accounts its declared budget as fake rounds."""

    guaranteed = False

    def __init__(self, vertices, bias: int, view: View):
        self.vertices = sorted(vertices)
        self.view = view
        self.budget = math.ceil(math.comb(len(self.vertices), 2) / (bias + 1))
        self.done = False
        self.cycle: list[int] | None = None
        self._left = self.budget

    def next_offer(self, game: GameState):
        if self.cycle is None:
            vs = self.vertices
            game.grant(edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))
            self.cycle = list(vs)
        if self._left == 0:
            self.done = True
            return None
        self._left -= 1
        return FAKE

    def on_pick(self, game: GameState, pick: Edge) -> None:
        pass

    def probe(self, game: GameState) -> list[str]:
        return []


def make_remainder(kind: str, vertices, bias: int, view: View):
    if kind == "auto":
        kind = "hamilton" if bias == 1 and len(vertices) >= HAM_MIN else "rotation"
    if kind == "rotation":
        return RotationCycleBuilder(vertices, bias, view)
    if kind == "hamilton":
        return HamiltonRemainder(vertices, bias, view)
    if kind == "stub":
        return StubRemainder(vertices, bias, view)
    raise ValueError(f"unknown remainder subroutine {kind!r}; choose from {REMAINDER_KINDS}")


class _BiasedBase(WaiterStrategy):
    """Stage I path growth and Stage II delegation shared by both strategies."""

    fake_alternate = False

    def __init__(self, constants: BiasedConstants | None = None, *, remainder: str = "auto",
                 a1: int = 0):
        self.constants = constants or BiasedConstants.desk()
        self.remainder_kind = remainder
        self.a1 = a1
        self.ready = False
        self.failures: list[str] = []
        self.stage = 1
        self.sub = None
        self.stage_rounds: dict[int, int] = {}

    def setup(self, game: GameState) -> None:
        n, b = game.num_vertices, game.board.bias
        if game.board.kind != "complete":
            raise ForcedForfeit("biased strategies play on complete boards")
        self.n, self.b = n, b
        k = self.constants
        self.m = n - k.remainder_size(b)
        if self.m < 2:
            raise ForcedForfeit(f"remainder {k.remainder_size(b)} leaves no room for the path on {n} vertices")
        self.failures.extend(f"constants: {msg}" for msg in k.violations(n, b))
        self.view = View(game)
        self.path = [self.a1]
        self.U = set(range(n)) - {self.a1}
        self.heap = [(self._wdeg(v), v) for v in sorted(self.U)]
        heapq.heapify(self.heap)
        self.udeg = Counter(d for d, _ in self.heap)
        self.max_spread = 0
        self._mark = game.round
        self.ready = True

    def _wdeg(self, v: int) -> int:
        return len(self.view.wnbrs(v))

    def _lightest(self, count: int) -> list[int]:
        out, heap = [], self.heap
        while len(out) < count:
            if not heap:
                raise ForcedForfeit("too few uncovered vertices for a Stage I offer")
            d, v = heapq.heappop(heap)
            if v in self.U and d == self._wdeg(v) and v not in out:
                out.append(v)
        return out

    def _close_stage(self, game: GameState) -> None:
        self.stage_rounds[self.stage] = game.round - self._mark
        self._mark = game.round
        self.stage += 1

    # Stage I

    def _stage_one(self, game: GameState):
        a = self.path[-1]
        xs = self._lightest(self.b + 1)
        offer = [edge(a, x) for x in xs]
        self._offer_ends = xs
        if self.fake_alternate and len(self.path) % 2 == 0:
            self.view.pretend_round(offer, offer[0])
            self._extend(xs[0], xs)
            return FAKE
        for e in offer:
            if not self.view.is_free(*e):
                self.failures.append(f"Stage I edge {e} is not free")
        return offer

    def _extend(self, x: int, xs: list[int]) -> None:
        for y in xs:
            d = self._wdeg(y)
            if y == x:
                self.udeg[d] -= 1
                continue
            self.udeg[d - 1] -= 1
            self.udeg[d] += 1
            heapq.heappush(self.heap, (d, y))
        self.U.discard(x)
        self.path.append(x)
        levels = [d for d, c in self.udeg.items() if c > 0]
        if levels:
            spread = max(levels) - min(levels)
            self.max_spread = max(self.max_spread, spread)
            if spread > 1:
                self.failures.append(f"Stage I Waiter-degree spread {spread} on uncovered vertices")

    def _stage_one_pick(self, pick: Edge) -> None:
        self._extend(_other(pick, self.path[-1]), self._offer_ends)

    # Stage II

    def _enter_stage_two(self, game: GameState) -> None:
        self._close_stage(game)
        self.R = sorted(self.U)
        rset = set(self.R)
        for v in self.R:
            if (self.view.wnbrs(v) | self.view.cnbrs(v)) & rset:
                self.failures.append(f"Stage II entry: claimed edge inside the remainder at {v}")
                break
        self.sub = make_remainder(self.remainder_kind, self.R, self.b, self.view)

    def _stage_two(self, game: GameState):
        offer = self.sub.next_offer(game)
        if offer is None:
            if not self.sub.done or self.sub.cycle is None:
                raise ForcedForfeit("remainder subroutine stopped without a Hamilton cycle")
            self._close_stage(game)
        return offer

    def stage_one_rounds(self) -> int:
        return self.m - 1

    def report(self) -> dict:
        return {"stage_rounds": dict(self.stage_rounds), "max_spread": self.max_spread,
                "remainder": self.remainder_kind if self.sub is None else type(self.sub).__name__,
                "guaranteed": bool(self.sub is not None and self.sub.guaranteed)}

    def _common_final(self, game: GameState) -> list[str]:
        out = []
        if not self.ready:
            return out
        if self.stage_rounds.get(1) not in (None, self.stage_one_rounds()):
            out.append(f"Stage I took {self.stage_rounds[1]} rounds, expected {self.stage_one_rounds()}")
        if self.sub is not None and 2 in self.stage_rounds and self.stage_rounds[2] > self.sub.budget:
            out.append(f"Stage II took {self.stage_rounds[2]} rounds, budget {self.sub.budget}")
        if self.sub is not None and self.sub.budget > self.constants.C * self.b:
            out.append(f"Stage II budget {self.sub.budget} exceeds C*b")
        return out

    def probe(self, game: GameState) -> list[str]:
        out, self.failures = self.failures, []
        if self.sub is not None and self.stage == 2:
            out.extend(self.sub.probe(game))
        return out


class BiasedHamStrategy(_BiasedBase):
    """Waiter forces a Hamilton cycle on ``K_n`` with bias ``b``."""

    name = "ham-biased"

    def __init__(self, constants: BiasedConstants | None = None, *, remainder: str = "auto",
                 a1: int = 0):
        super().__init__(constants, remainder=remainder, a1=a1)
        self.cycle: list[int] | None = None
        self.b_sizes: list[tuple[int, int, int]] = []

    def next_offer(self, game: GameState):
        if not self.ready:
            self.setup(game)
        if self.stage == 1:
            if len(self.path) < self.m:
                return self._stage_one(game)
            self._enter_stage_two(game)
        if self.stage == 2:
            offer = self._stage_two(game)
            if offer is not None:
                return offer
        if self.stage == 3:
            return self._stage_three()
        if self.stage == 4:
            if len(self.ends) <= self.b:
                return self._rotation_offer()
            self._close_stage(game)
        if self.stage == 5:
            return self._closing_offer()
        return None

    def on_pick(self, game: GameState, pick: Edge) -> None:
        if self.stage == 1:
            self._stage_one_pick(pick)
        elif self.stage == 2:
            self.sub.on_pick(game, pick)
        elif self.stage == 3:
            self._stage_three_pick(game, pick)
        elif self.stage == 4:
            self._rotation_pick(pick)
        elif self.stage == 5:
            self._closing_pick(game, pick)

    # Stage III

    def _stage_three(self):
        a1 = self.path[0]
        xs = [x for x in self.R if self.view.is_free(a1, x)][:self.b + 1]
        if len(xs) < self.b + 1:
            raise ForcedForfeit(f"only {len(xs)} free edges from a_1 into the remainder")
        return [edge(a1, x) for x in xs]

    def _stage_three_pick(self, game: GameState, pick: Edge) -> None:
        H = self.sub.cycle
        self.xt = _other(pick, self.path[0])
        self.walk = H[H.index(self.xt) + 1:] + H[:H.index(self.xt) + 1]
        self.x = self.walk[0]
        self._close_stage(game)
        self._enter_stage_four()

    # Stage IV

    def _enter_stage_four(self) -> None:
        self.P0 = set(self.path)
        self.ends = [self.path[-1]]
        self.paths = [list(self.path)]
        view = self.view
        if not view.is_free(self.ends[0], self.x):
            self.failures.append("v_0 x is not free at Stage IV entry")
        cap = self.constants.delta0 * self.n
        worst = max(self._deg_into_p0(v) for v in range(self.n))
        if worst >= cap:
            self.failures.append(f"Stage IV entry: degree into V(P_0) {worst} not below {cap:g}")
        self.entry_max_degree = worst

    def _deg_into_p0(self, v: int) -> int:
        return len((self.view.wnbrs(v) | self.view.cnbrs(v)) & self.P0)

    def _rotation_offer(self):
        view, x = self.view, self.x
        cur = self.paths[-1]
        v = cur[-1]
        prior = set(self.ends)
        b1 = b2 = b3 = 0
        chosen = []
        for i in range(len(cur) - 1):
            y, yp = cur[i], cur[i + 1]
            in1 = not view.is_free(yp, x)
            in2 = yp in prior
            in3 = not view.is_free(y, v)
            b1 += in1
            b2 += in2
            b3 += in3
            if not (in1 or in2 or in3) and len(chosen) < self.b + 1:
                chosen.append(y)
        self.b_sizes.append((b1, b2, b3))
        i = len(self.ends)
        d0n = self.constants.delta0 * self.n
        if b1 >= d0n:
            self.failures.append(f"rotation {i}: |B1| = {b1} not below {d0n:g}")
        if b2 > i:
            self.failures.append(f"rotation {i}: |B2| = {b2} exceeds {i}")
        if b3 >= d0n + i:
            self.failures.append(f"rotation {i}: |B3| = {b3} not below {d0n + i:g}")
        if len(chosen) < self.b + 1:
            raise ForcedForfeit(f"rotation {i}: only {len(chosen)} admissible chords")
        return [edge(y, v) for y in chosen]

    def _rotation_pick(self, pick: Edge) -> None:
        cur = self.paths[-1]
        y = _other(pick, cur[-1])
        i = cur.index(y)
        nxt = cur[:i + 1] + cur[i + 1:][::-1]
        self.paths.append(nxt)
        self.ends.append(nxt[-1])
        self.failures.extend(self.rotation_report())

    def rotation_report(self) -> list[str]:
        """Path properties and the degree bound after the latest rotation."""
        out = []
        i = len(self.ends) - 1
        p, view = self.paths[-1], self.view
        if len(p) != len(self.P0) or set(p) != self.P0:
            out.append(f"P_{i} does not span V(P_0)")
        if any(not view.is_client(p[k], p[k + 1]) for k in range(len(p) - 1)):
            out.append(f"P_{i} is not a Client path")
        if p[0] != self.path[0]:
            out.append(f"P_{i} does not start at a_1")
        if p[-1] in self.ends[:-1]:
            out.append(f"P_{i} endpoint {p[-1]} repeats an earlier endpoint")
        if not view.is_free(p[-1], self.x):
            out.append(f"v_{i} x is not free")
        cap = self.constants.delta0 * self.n + i
        used = set(self.ends[:-1])
        worst = max(self._deg_into_p0(v) for v in self.P0 - used)
        if worst >= cap:
            out.append(f"after rotation {i}: degree into V(P_i) {worst} not below {cap:g}")
        return out

    # Stage V

    def closing_cycles(self) -> list[list[int]]:
        return [p + self.walk for p in self.paths]

    def _closing_offer(self):
        offer = [edge(v, self.x) for v in self.ends]
        for e, order in zip(offer, self.closing_cycles()):
            if not self._closes(order, e):
                self.failures.append(f"picking {e} would not close a Client Hamilton cycle")
        return offer

    def _closes(self, order: list[int], extra: Edge) -> bool:
        if len(order) != self.n or len(set(order)) != self.n:
            return False
        for k in range(self.n):
            e = edge(order[k], order[(k + 1) % self.n])
            if e != extra and not self.view.is_client(*e):
                return False
        return self.view.is_free(*extra)

    def _closing_pick(self, game: GameState, pick: Edge) -> None:
        j = self.ends.index(_other(pick, self.x))
        self.cycle = self.closing_cycles()[j]
        self._close_stage(game)

    # results

    def round_bound(self) -> int:
        budget = self.sub.budget if self.sub is not None else 0
        return self.stage_one_rounds() + budget + 1 + self.b + 1

    def final_checks(self, game: GameState) -> list[str]:
        out = self.probe(game) + self._common_final(game)
        if not self.ready or self.cycle is None:
            return out
        if game.real_rounds > self.round_bound():
            out.append(f"{game.real_rounds} real rounds exceed the stage budget {self.round_bound()}")
        if game.real_rounds > self.constants.ham_bound(self.n, self.b):
            out.append(f"{game.real_rounds} real rounds exceed n + C*b")
        if self.stage_rounds.get(4) != self.b:
            out.append(f"Stage IV took {self.stage_rounds.get(4)} rounds, expected {self.b}")
        return out

    def certificate(self, game: GameState):
        return None if self.cycle is None else HamiltonCycle(tuple(self.cycle))


class BiasedPMStrategy(_BiasedBase):
    """Waiter forces a perfect matching on ``K_n`` with bias ``b``.

    Stage I fakes every second round, so the path's odd edges are real Client
    edges; the remainder's Hamilton cycle supplies the rest of the matching.
    """

    name = "pm-biased"
    fake_alternate = True

    def setup(self, game: GameState) -> None:
        if game.num_vertices % 2:
            raise ForcedForfeit("a perfect matching needs an even number of vertices")
        if self.constants.remainder_size(game.board.bias) % 2:
            raise ForcedForfeit("the remainder must have even size")
        super().setup(game)
        self.matching: list[Edge] | None = None

    def next_offer(self, game: GameState):
        if not self.ready:
            self.setup(game)
        if self.stage == 1:
            if len(self.path) < self.m:
                return self._stage_one(game)
            self._enter_stage_two(game)
        if self.stage == 2:
            offer = self._stage_two(game)
            if offer is not None:
                return offer
            H, p = self.sub.cycle, self.path
            self.matching = sorted([edge(p[k], p[k + 1]) for k in range(0, len(p), 2)]
                                   + [edge(H[k], H[k + 1]) for k in range(0, len(H), 2)])
        return None

    def on_pick(self, game: GameState, pick: Edge) -> None:
        if self.stage == 1:
            self._stage_one_pick(pick)
        elif self.stage == 2:
            self.sub.on_pick(game, pick)

    def stage_one_real_rounds(self) -> int:
        return self.m // 2

    def final_checks(self, game: GameState) -> list[str]:
        out = self.probe(game) + self._common_final(game)
        if not self.ready or self.matching is None:
            return out
        fakes_one = sum(1 for h in game.history[:self.stage_one_rounds()] if h == FAKE)
        if fakes_one != self.stage_one_real_rounds() - 1:
            out.append(f"Stage I faked {fakes_one} rounds, expected {self.stage_one_real_rounds() - 1}")
        budget = self.stage_one_real_rounds() + self.sub.budget
        if game.real_rounds > budget:
            out.append(f"{game.real_rounds} real rounds exceed the stage budget {budget}")
        if game.real_rounds > self.constants.pm_bound(self.n, self.b):
            out.append(f"{game.real_rounds} real rounds exceed n/2 + C*b")
        return out

    def certificate(self, game: GameState):
        return None if self.matching is None else Matching(tuple(self.matching))
