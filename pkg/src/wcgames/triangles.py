"""Triangle factors: Waiter's batch strategy around a Client clique, the
seven-move two-triangle script it repeats, and the delaying Client policy
that keeps any triangle factor from appearing before ``13n/12`` Client edges.
"""

from __future__ import annotations

import random
from itertools import combinations

from .certificates import TriangleFactor, TrianglePacking
from .core import Edge, ForcedForfeit, GameState, Owner, View, edge
from .play import ClientPolicy, WaiterStrategy
from .solver import INF, Solver, clique_game

SCRIPT_SIZE = 12
SCRIPT_MOVES = 7
CLIQUE_SIZE = 48


class TwoTriangleScript:
    """Seven moves on twelve vertices forcing two disjoint triangles through ``u`` and ``v``.

    Cherries are grown at ``u`` and at ``v``; then the two cherries are
    offered for closing together, and the anchor whose cherry stays open
    gets a fresh neighbour that is offered to both of its cherry leaves.
    ``uv`` and the edges among the six unused vertices are never offered.
    """

    def __init__(self, vertices, u: int, v: int, view: View):
        vertices = list(vertices)
        if len(vertices) != SCRIPT_SIZE or len(set(vertices)) != SCRIPT_SIZE:
            raise ValueError("the script needs twelve distinct vertices")
        if u not in vertices or v not in vertices or u == v:
            raise ValueError("anchors must be two of the twelve vertices")
        self.vertices = vertices
        self.u, self.v = u, v
        self.others = sorted(x for x in vertices if x not in (u, v))
        self.view = view
        self.triangles: list[tuple[int, int, int]] = []
        self.offered: list[Edge] = []
        self.done = False
        self.gen = self._moves()
        self.pending = None

    def _moves(self):
        u, v = self.u, self.v
        fresh = iter(self.others)
        leaves: dict[int, list[int]] = {u: [], v: []}
        for anchor in (u, v):
            for _ in range(2):
                a, b = next(fresh), next(fresh)
                pick = yield [edge(anchor, a), edge(anchor, b)]
                leaves[anchor].append(a if a in pick else b)
        b1, b2 = leaves[u]
        b3, b4 = leaves[v]
        pick = yield [edge(b1, b2), edge(b3, b4)]
        closed, open_ = (u, v) if pick == edge(b1, b2) else (v, u)
        self.triangles.append(tuple(sorted([closed, *leaves[closed]])))
        a, b = next(fresh), next(fresh)
        pick = yield [edge(open_, a), edge(open_, b)]
        w = a if a in pick else b
        c1, c2 = leaves[open_]
        pick = yield [edge(w, c1), edge(w, c2)]
        self.triangles.append(tuple(sorted([open_, w, c1 if c1 in pick else c2])))

    def next_offer(self):
        try:
            offer = next(self.gen) if self.pending is None else self.gen.send(self.pending)
        except StopIteration:
            self.done = True
            return None
        for e in offer:
            if not self.view.is_free(*e):
                raise ForcedForfeit(f"script edge {e} is already claimed")
        self.offered.extend(offer)
        return offer

    def on_pick(self, pick: Edge) -> None:
        self.pending = pick

    def finish(self) -> None:
        """Advance past the last pick so the second triangle is recorded."""
        if not self.done:
            try:
                self.gen.send(self.pending)
            except StopIteration:
                self.done = True

    @property
    def moves(self) -> int:
        return len(self.offered) // 2

    @property
    def unused(self) -> list[int]:
        used = {x for t in self.triangles for x in t}
        return sorted(x for x in self.vertices if x not in used)

    def report(self, view: View) -> list[str]:
        """Violated completion properties of the script."""
        out = []
        if len(self.triangles) != 2:
            return ["script did not produce two triangles"]
        t1, t2 = self.triangles
        if set(t1) & set(t2):
            out.append("triangles share a vertex")
        for t in self.triangles:
            if not all(view.is_client(a, b) for a, b in combinations(t, 2)):
                out.append(f"triangle {t} not fully Client's")
        if not ({self.u, self.v} <= set(t1) | set(t2)):
            out.append("an anchor is not covered")
        banned = {edge(a, b) for a, b in combinations(self.unused, 2)} | {edge(self.u, self.v)}
        if banned & set(self.offered):
            out.append("an edge among the unused vertices or the anchor edge was offered")
        if self.moves > SCRIPT_MOVES:
            out.append(f"{self.moves} moves exceed {SCRIPT_MOVES}")
        return out


class TwoTriangleStrategy(WaiterStrategy):
    """The two-triangle script as a stand-alone game on the first twelve vertices."""

    name = "two-triangles"

    def __init__(self, u: int = 0, v: int = 1):
        self.u, self.v = u, v
        self.script: TwoTriangleScript | None = None

    def next_offer(self, game: GameState):
        if self.script is None:
            self.script = TwoTriangleScript(range(SCRIPT_SIZE), self.u, self.v, View(game))
        return self.script.next_offer()

    def on_pick(self, game: GameState, pick: Edge) -> None:
        self.script.on_pick(pick)

    def final_checks(self, game: GameState) -> list[str]:
        self.script.finish()
        return self.script.report(self.script.view)

    def certificate(self, game: GameState):
        self.script.finish()
        return TrianglePacking(tuple(self.script.triangles)) if self.script.done else None


# clique oracles


class PreSeededClique:
    """Grants Client a clique on the lowest ``size`` vertices before play."""

    name = "pre-seeded"

    def __init__(self, size: int = CLIQUE_SIZE):
        self.size = size

    def reservoir(self, n: int) -> list[int]:
        return list(range(self.size))

    def seed(self, game: GameState) -> list[int]:
        k = self.reservoir(game.num_vertices)
        game.grant([edge(a, b) for a, b in combinations(k, 2)], Owner.CLIENT)
        return k


class ExactCliqueOracle(WaiterStrategy):
    """Forces a Client ``K_t`` on a small vertex set by optimal play.

    Waiter follows the exact solver's offers on the edges inside
    ``vertices``; the clique found is stored in ``clique``.
    """

    name = "clique-exact"

    def __init__(self, t: int, vertices, max_states: int = 2_000_000):
        self.t = t
        self.vertices = sorted(vertices)
        game = clique_game(len(self.vertices), t)
        self.solver = Solver(game, max_states)
        self.edges = [edge(self.vertices[a], self.vertices[b])
                      for a, b in combinations(range(len(self.vertices)), 2)]
        self.index = {e: i for i, e in enumerate(self.edges)}
        self.clique: list[int] | None = None
        self.done = False

    def masks(self, game: GameState) -> tuple[int, int]:
        w = c = 0
        for i, e in enumerate(self.edges):
            who = game.owner_of(*e)
            if who is Owner.WAITER:
                w |= 1 << i
            elif who is Owner.CLIENT:
                c |= 1 << i
        return w, c

    def reservoir(self, n: int) -> list[int]:
        return list(self.vertices)

    def next_offer(self, game: GameState):
        if self.done:
            return None
        w, c = self.masks(game)
        if self.solver.won(c):
            self._record(c)
            return None
        if self.solver.value(w, c) == INF:
            raise ForcedForfeit(f"K_{self.t} cannot be forced on {len(self.vertices)} vertices")
        offer = self.solver.optimal_offer(w, c)
        return [self.edges[i] for i in range(len(self.edges)) if offer >> i & 1]

    def _record(self, c: int) -> None:
        for s in self.solver.game.sets:
            if all(c >> i & 1 for i in s):
                self.clique = sorted({x for i in s for x in self.edges[i]})
                break
        self.done = True

    def certificate(self, game: GameState):
        return None


class TriangleFactorStrategy(WaiterStrategy):
    """Waiter's triangle factor strategy in three stages.

    Stage I obtains a Client clique ``K`` on a reservoir ``W`` from the
    oracle.  Stage II repeats the two-triangle script on twelve vertices of
    ``S ∪ T`` (``S = W - K``, ``T`` the rest), taking both anchors from
    ``S`` while it is nonempty.  Stage III covers each leftover vertex with
    two edges into four private clique vertices and splits the rest of the
    clique into triangles.
    """

    name = "triangle-factor"

    def __init__(self, oracle=None, clique_size: int = CLIQUE_SIZE):
        self.oracle = oracle if oracle is not None else PreSeededClique(clique_size)
        self.clique_size = clique_size
        self.ready = False
        self.done = False
        self.triangles: list[tuple[int, ...]] = []
        self.failures: list[str] = []
        self.script: TwoTriangleScript | None = None
        self.stage = 1
        self.scripts_run = 0

    def setup(self, game: GameState) -> None:
        if isinstance(self.oracle, PreSeededClique):
            self._start_stage_two(game, self.oracle.seed(game))

    def _start_stage_two(self, game: GameState, clique) -> None:
        n = game.num_vertices
        if n % 3:
            raise ForcedForfeit("a triangle factor needs n divisible by 3")
        if len(clique) < self.clique_size:
            raise ForcedForfeit(f"clique of size {len(clique)} below {self.clique_size}")
        self.view = View(game)
        self.K = sorted(clique)
        w = set(self.oracle.reservoir(n))
        self.S = sorted(w - set(self.K))
        self.T = sorted(set(range(n)) - w)
        self.stage = 2
        self.ready = True
        self.post_seed_start = game.real_rounds

    def next_offer(self, game: GameState):
        if self.done:
            return None
        if self.stage == 1:
            offer = self.oracle.next_offer(game)
            if offer is not None:
                return offer
            self._start_stage_two(game, self.oracle.clique or [])
        if self.stage == 2:
            offer = self._stage_two(game)
            if offer is not None:
                return offer
            self.stage = 3
            self.gen = self._stage_three()
            self.pending = None
        try:
            return next(self.gen) if self.pending is None else self.gen.send(self.pending)
        except StopIteration:
            self.done = True
            return None

    def on_pick(self, game: GameState, pick: Edge) -> None:
        if self.stage == 1:
            return
        if self.stage == 2:
            self.script.on_pick(pick)
        else:
            self.pending = pick

    def _stage_two(self, game: GameState):
        while True:
            if self.script is not None:
                offer = self.script.next_offer()
                if offer is not None:
                    return offer
                self.failures.extend(self.script.report(self.view))
                self.triangles.extend(self.script.triangles)
                used = {x for t in self.script.triangles for x in t}
                self.S = [x for x in self.S if x not in used]
                self.T = [x for x in self.T if x not in used]
                self.script = None
            if len(self.T) < SCRIPT_SIZE:
                return None
            self._check_batch_start()
            if self.S:
                u, v = self.S[:2]
                pool = [u, v] + self.T[:SCRIPT_SIZE - 2]
            else:
                pool = self.T[:SCRIPT_SIZE]
                u, v = pool[:2]
            self.script = TwoTriangleScript(pool, u, v, self.view)
            self.scripts_run += 1

    def _check_batch_start(self) -> None:
        free = self.view.is_free
        rest = self.S + self.T
        tset = set(self.T)
        for x in self.T:
            for y in rest:
                if (y not in tset or y > x) and not free(x, y):
                    self.failures.append(f"batch start: edge {x}-{y} already claimed")
                    return

    def _stage_three(self):
        if self.S:
            raise ForcedForfeit("reservoir vertices left over at the final stage")
        pool = list(self.K)
        if 4 * len(self.T) > len(pool):
            raise ForcedForfeit("clique too small for the leftover vertices")
        for x in self.T:
            kv, pool = pool[:4], pool[4:]
            got = []
            for a, b in ((kv[0], kv[1]), (kv[2], kv[3])):
                pick = yield [edge(x, a), edge(x, b)]
                got.append(a if a in pick else b)
                pool.append(b if a in pick else a)
            self.triangles.append(tuple(sorted([x, *got])))
        pool.sort()
        if len(pool) % 3:
            raise ForcedForfeit("clique remainder not divisible by three")
        for i in range(0, len(pool), 3):
            self.triangles.append(tuple(pool[i:i + 3]))

    def probe(self, game: GameState) -> list[str]:
        out, self.failures = self.failures, []
        return out

    def final_checks(self, game: GameState) -> list[str]:
        out, self.failures = self.failures, []
        return out

    def post_seed_rounds(self, game: GameState) -> int:
        return game.real_rounds - getattr(self, "post_seed_start", 0)

    def certificate(self, game: GameState):
        if not self.done:
            return None
        return TriangleFactor(tuple(sorted(self.triangles)))


def post_seed_bound(n: int, clique_size: int = CLIQUE_SIZE) -> float:
    """Round budget after the clique: seven moves per six covered vertices plus slack."""
    return 7 * (n - clique_size) / 6 + 30


# Client side


class Delayer(ClientPolicy):
    """Client policy that delays triangle factors by marking vertices.

    An offered edge closes a triangle when its ends have a common Client
    neighbour.  A non-closing edge is always taken.  If both edges close,
    with witnesses ``z1`` and ``z2``, Client keeps the edge whose partner's
    witness is unmarked and marks that witness.
    """

    name = "delayer"

    def __init__(self):
        self.marked: set[int] = set()
        self.case_counts = {"1": 0, "2a": 0, "2b": 0, "2c": 0}

    def choose(self, game: GameState, offer) -> int:
        if len(offer) < 2:
            return 0
        cadj = game.cadj
        wits = [cadj[x] & cadj[y] for x, y in offer]
        for i, w in enumerate(wits):
            if not w:
                self.case_counts["1"] += 1
                return i
        z1, z2 = (min(w - self.marked, default=min(w)) for w in wits)
        if z1 not in self.marked:
            self.marked.add(z1)
            self.case_counts["2a"] += 1
            return 1
        if z2 not in self.marked:
            self.marked.add(z2)
            self.case_counts["2b"] += 1
            return 0
        self.case_counts["2c"] += 1
        return 0


def granted_edges(game: GameState) -> set[Edge]:
    return {edge(*e) for h in game.history if h != "fake" and h[0] == "grant" for e in h[1]}


def count_lower_bound(game: GameState, triangles, marked) -> dict:
    """Both counting branches of the ``13n/12`` bound on a finished game.

    Triangles whose three edges were all granted before play were never
    completed in a Client turn, so the marking argument does not cover them;
    they are left out of the unmarked count and reported separately.
    """
    n = game.num_vertices
    marked = set(marked)
    deg = [len(s) for s in game.cadj]
    edges = sum(deg) // 2
    granted = granted_edges(game)
    seeded = [t for t in triangles
              if all(edge(a, b) in granted for a, b in combinations(t, 2))]
    unmarked = [t for t in triangles if not marked & set(t) and t not in seeded]
    high_degree = all(deg[m] >= 3 for m in marked)
    many_marked = len(marked) >= len(unmarked)
    if 6 * len(unmarked) >= n:
        branch = "many unmarked triangles"
        bound = len(marked) + 2 * n
    else:
        branch = "few unmarked triangles"
        bound = 6 * len(unmarked) + 7 * (n // 3 - len(unmarked))
    return {
        "edges": edges,
        "high_degree": high_degree,
        "many_marked": many_marked,
        "branch": branch,
        "branch_bound_ok": 2 * edges >= bound,
        "bound_ok": 12 * edges >= 13 * n,
        "marked": len(marked),
        "unmarked_triangles": len(unmarked),
        "granted_triangles": len(seeded),
    }


def find_triangle_factor(cadj, budget: int = 200_000):
    """A triangle factor of the graph, ``None`` if there is none, or
    ``"budget"`` when the search gave up."""
    n = len(cadj)
    if n % 3:
        return None
    tris_at: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for x in range(n):
        for y in cadj[x]:
            if y <= x:
                continue
            for z in cadj[x] & cadj[y]:
                if z > y:
                    t = (x, y, z)
                    for a in t:
                        tris_at[a].append(t)
    if any(not ts for ts in tris_at):
        return None
    steps = 0
    chosen: list[tuple[int, int, int]] = []
    covered = [False] * n

    def solve() -> bool:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise _Budget
        best, best_opts = None, None
        for x in range(n):
            if covered[x]:
                continue
            opts = [t for t in tris_at[x] if not any(covered[a] for a in t)]
            if not opts:
                return False
            if best is None or len(opts) < len(best_opts):
                best, best_opts = x, opts
                if len(opts) == 1:
                    break
        if best is None:
            return True
        for t in best_opts:
            for a in t:
                covered[a] = True
            chosen.append(t)
            if solve():
                return True
            chosen.pop()
            for a in t:
                covered[a] = False
        return False

    try:
        return list(chosen) if solve() else None
    except _Budget:
        return "budget"


class _Budget(Exception):
    pass


# Waiter policies used against the delayer


class WatchingWaiter(WaiterStrategy):
    """Base for Waiter policies without their own certificate: play stops as
    soon as Client's graph contains a triangle factor."""

    name = "watching"

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)
        self.factor = None
        self.budget_hits = 0

    def _factor_now(self, game: GameState):
        if sum(len(s) for s in game.cadj) // 2 < game.num_vertices:
            return None
        got = find_triangle_factor(game.cadj)
        if got == "budget":
            self.budget_hits += 1
            return None
        return got

    def next_offer(self, game: GameState):
        self.factor = self._factor_now(game)
        if self.factor is not None:
            return None
        free = list(game.free_edges())
        if not free:
            return None
        return self.choose_offer(game, free)

    def choose_offer(self, game: GameState, free: list[Edge]):
        raise NotImplementedError

    def certificate(self, game: GameState):
        return TriangleFactor(tuple(self.factor)) if self.factor else None


class RandomOffers(WatchingWaiter):
    name = "random-offers"

    def choose_offer(self, game, free):
        return self.rng.sample(free, min(2, len(free)))


class GreedyCloser(WatchingWaiter):
    """Offers edges that close triangles among uncovered vertices, preferring two at once."""

    name = "greedy-closer"

    def choose_offer(self, game, free):
        cadj = game.cadj
        in_tri = {x for x in range(game.num_vertices)
                  if any(cadj[x] & cadj[y] for y in cadj[x])}

        def score(e):
            x, y = e
            s = 0
            if cadj[x] & cadj[y]:
                s += 2
            s += (x not in in_tri) + (y not in in_tri)
            return s

        keyed = sorted(free, key=lambda e: (-score(e), self.rng.random()))
        return keyed[:2]


class StarBuilder(WatchingWaiter):
    """Grows cherries at the least covered vertex and then offers their closing edges."""

    name = "star-builder"

    def choose_offer(self, game, free):
        cadj = game.cadj
        freeset = set(free)
        n = game.num_vertices
        order = sorted(range(n), key=lambda x: (any(cadj[x] & cadj[y] for y in cadj[x]),
                                                len(cadj[x]), x))
        for x in order:
            nb = sorted(cadj[x])
            closing = [edge(a, b) for a, b in combinations(nb, 2) if edge(a, b) in freeset]
            if len(closing) >= 2:
                return closing[:2]
            at_x = [e for e in free if x in e]
            if len(at_x) >= 2:
                return self.rng.sample(at_x, 2)
        return self.rng.sample(free, min(2, len(free)))


class ScriptBatches(WatchingWaiter):
    """Runs the two-triangle script on successive fresh 12-sets, then plays greedily."""

    name = "script-batches"

    def __init__(self, seed: int = 0):
        super().__init__(seed)
        self.script: TwoTriangleScript | None = None
        self.untouched: list[int] | None = None
        self.greedy = GreedyCloser(seed)

    def choose_offer(self, game, free):
        if self.untouched is None:
            self.untouched = list(range(game.num_vertices))
            self.view = View(game)
        while True:
            if self.script is not None:
                offer = self.script.next_offer()
                if offer is not None:
                    return offer
                self.script = None
            if len(self.untouched) < SCRIPT_SIZE:
                return self.greedy.choose_offer(game, free)
            batch, self.untouched = self.untouched[:SCRIPT_SIZE], self.untouched[SCRIPT_SIZE:]
            self.script = TwoTriangleScript(batch, batch[0], batch[1], self.view)

    def on_pick(self, game, pick):
        if self.script is not None:
            self.script.on_pick(pick)


WAITER_POOL = ("triangle-factor", "random-offers", "greedy-closer", "star-builder", "script-batches")


def make_triangle_waiter(kind: str, seed: int = 0) -> WaiterStrategy:
    if kind == "triangle-factor":
        return TriangleFactorStrategy()
    cls = {"random-offers": RandomOffers, "greedy-closer": GreedyCloser,
           "star-builder": StarBuilder, "script-batches": ScriptBatches}[kind]
    return cls(seed)
