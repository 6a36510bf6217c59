"""Unbiased pancyclicity in ``n + log2(n) + f(n) + k`` rounds.

Stage I forces a Hamilton cycle ``H`` with a clean arc; the arc is relabelled
``w_1..w_n`` along ``H``.  Stage II claims the chords ``w_1 w_{f+1}`` and
``w_{f+1} w_{n-p}``.  Stage III builds a ladder of chords inside
``w_1..w_{f+1}`` giving head paths of every length.  Stage IV claims chords
``w_{t_{i-1}} w_{t_i}`` with ``t_i`` roughly doubling, which shortcut the long
arc by any subset sum of the gaps.  Stage V adds chords at ``w_1`` for deeper
iterated logarithms when ``n`` is large enough to need them.  Every cycle
length ``3..n`` is then realised by an explicit vertex sequence.
"""

from __future__ import annotations

import math

from .certificates import PancyclicFamily
from .core import FAKE, Edge, ForcedForfeit, GameState, View, edge
from .hamilton import HamiltonStrategy
from .play import WaiterStrategy

MIN_VERTICES = 512
GUARD = 1e-9


def iterated_log(n: float, t: int) -> float:
    x = float(n)
    for _ in range(t):
        if x <= 0:
            return -math.inf
        x = math.log2(x)
    return x


def choose_depth(n: int) -> tuple[int, int, int]:
    """``(k, g, f)``: ``k`` is the least ``t`` with ``log2^(t)(n) < 2``."""
    k = 0
    while iterated_log(n, k) >= 2:
        k += 1
    g = math.ceil(iterated_log(n, k) - GUARD)
    return k, g, g + 100


def stage_five_moves(n: int, k: int) -> int:
    """Number of Stage V moves the coverage argument needs.

    The argument for depth ``m`` only works while ``log2^(m)(n) >= 50``; the
    moves run over depths ``1..k'-1`` where ``k'`` is the largest depth with
    that property for every smaller ``m`` (capped by ``k``).
    """
    kk = 0
    while kk < k and iterated_log(n, kk) >= 50:
        kk += 1
    return max(kk, 1) - 1


def round_bound(n: int) -> float:
    k, _, f = choose_depth(n)
    return n + math.log2(n) + f + k


def decompose_length(x: int, f: int, gaps) -> tuple[int, list[int]]:
    """Write ``x = t + sum(gaps[i-1] for i in S)`` with ``0 <= t <= f - 1``.

    Gaps are 1-indexed in ``S``.  Greedy from the largest index: include
    ``a_j`` exactly when ``x`` exceeds what the smaller gaps and ``t`` can reach.
    """
    total = f - 1 + sum(gaps)
    if not 0 <= x <= total:
        raise ValueError(f"{x} outside [0, {total}]")
    prefix = [0]
    for a in gaps:
        prefix.append(prefix[-1] + a)
    chosen = []
    for j in range(len(gaps), 0, -1):
        if x > prefix[j - 1] + f - 1:
            x -= gaps[j - 1]
            chosen.append(j)
    if not 0 <= x <= f - 1:
        raise ValueError("gap sequence violates the growth condition")
    return x, sorted(chosen)


def find_clean_window(view: View, cycle, clean_path, size: int) -> list[int] | None:
    """A run of ``size`` consecutive cycle vertices spanning no claimed chord.

    Tries the two halves of ``clean_path`` first (first half preferred), then
    windows inside ``clean_path``, then every window along the cycle.  The
    result is oriented along ``cycle``.
    """
    n = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}

    def oriented(run):
        if len(run) >= 2 and (pos[run[1]] - pos[run[0]]) % n != 1:
            run = run[::-1]
        return run

    def clean(run) -> bool:
        s = set(run)
        idx = {v: i for i, v in enumerate(run)}
        for v in run:
            for nb in view.wnbrs(v):
                if nb in s:
                    return False
            for nb in view.cnbrs(v):
                if nb in s and abs(idx[nb] - idx[v]) != 1:
                    return False
        return True

    candidates = []
    if clean_path:
        h = len(clean_path) // 2
        candidates += [clean_path[:h], clean_path[h:]]
        candidates += [clean_path[i:i + size] for i in range(len(clean_path) - size + 1)]
    for run in candidates:
        if len(run) >= size and clean(run):
            return oriented(run)
    for start in range(n):
        run = [cycle[(start + d) % n] for d in range(size)]
        if clean(run):
            return run
    return None


class PancyclicStrategy(WaiterStrategy):
    name = "pancyclic"

    def __init__(self, min_vertices: int = MIN_VERTICES):
        self.min_vertices = min_vertices
        self.ready = False
        self.done = False
        self.stage = 1
        self.failures: list[str] = []
        self.t: list[int] = []
        self.stage5: list[tuple[int, int]] = []
        self.stage3_picks: list[str] = []
        self.p = None

    def _init(self, game: GameState) -> None:
        n = game.num_vertices
        if n < self.min_vertices:
            raise ForcedForfeit(f"{n} vertices is below the minimum {self.min_vertices}")
        self.n = n
        self.k, self.g, self.f = choose_depth(n)
        self.moves5 = stage_five_moves(n, self.k)
        self.view = View(game)
        self.ham = HamiltonStrategy(view=self.view)
        self.ready = True

    def W(self, i: int) -> int:
        """Board vertex labelled ``w_i`` (1-indexed, cyclic)."""
        return self.w[(i - 1) % self.n]

    # moves

    def next_offer(self, game: GameState):
        if not self.ready:
            self._init(game)
        if self.done:
            return None
        if self.stage == 1:
            offer = self.ham.next_offer(game)
            if offer is not None:
                return offer
            self.failures.extend(self.ham.final_checks(game))
            self._relabel()
            self.stage = 2
            self.step = 0
        n, f = self.n, self.f
        if self.stage == 2:
            if self.step == 0:
                v = self.v
                return self._offer([(v[0], v[f]), (v[1], v[f + 1])])
            if self.step == 1:
                hub = self.W(f + 1)
                js = [j for j in range(n - 60, n - 49) if self.view.is_free(hub, self.W(j))][:2]
                if len(js) < 2:
                    raise ForcedForfeit("fewer than two free chords for the long arc")
                self.arc_js = js
                return self._offer([(hub, self.W(j)) for j in js])
            self.stage = 3
            self.step = 0
        if self.stage == 3:
            i = self.step + 1
            if i <= f - 2:
                return self._offer([(self.W(1), self.W(i + 2)), (self.W(f - i), self.W(f + 1))])
            self.stage = 4
            self.t = [f + 1]
        if self.stage == 4:
            if self.t[-1] < n - 20:
                return self._stage_four()
            self.stage = 5
            self.step = 0
        if self.stage == 5:
            if self.step < self.moves5:
                return self._stage_five()
            self.done = True
            self.family = self.emit_cycles()
        return None

    def _offer(self, pairs):
        for a, b in pairs:
            if not self.view.is_free(a, b):
                raise ForcedForfeit(f"edge {a}-{b} required in Stage {self.stage} is claimed")
        self.offered = [edge(a, b) for a, b in pairs]
        return self.offered

    def _stage_four(self):
        i = len(self.t)
        prev = self.t[-1]
        hi = min(2 * prev - 2 * i, self.n)
        lo = hi - 20
        hub = self.W(prev)
        js = [j for j in range(hi, lo - 1, -1)
              if j > prev and self.view.is_free(hub, self.W(j))][:2]
        if len(js) < 2:
            raise ForcedForfeit(f"Stage IV window [{lo}, {hi}] has fewer than two free chords")
        self.window_js = js
        return self._offer([(hub, self.W(j)) for j in js])

    def _qualifying(self, L: float):
        """Client chords ``w_1 w_l`` with ``2L <= t_j <= l <= t_j + 20 <= 10L``."""
        w1 = self.W(1)
        for j, tj in enumerate(self.t):
            if not (2 * L <= tj and tj + 20 <= 10 * L):
                continue
            for ell in range(tj, tj + 21):
                if ell <= self.n and self.view.is_client(w1, self.W(ell)):
                    return ell, j
        return None

    def _stage_five(self):
        i = self.step + 1
        L = iterated_log(self.n, i)
        got = self._qualifying(L)
        if got is not None:
            self.stage5.append(got)
            self.step += 1
            return FAKE
        anchors = [j for j, tj in enumerate(self.t) if 2 * L <= tj <= 5 * L and tj + 20 <= 10 * L]
        if not anchors:
            self.failures.append(f"Stage V move {i}: no anchor t_j in [{2 * L:.1f}, {5 * L:.1f}]")
            self.step += 1
            return FAKE
        j = anchors[0]
        w1 = self.W(1)
        ells = [e for e in range(self.t[j], min(self.t[j] + 20, self.n) + 1)
                if self.view.is_free(w1, self.W(e))][:2]
        if len(ells) < 2:
            raise ForcedForfeit(f"Stage V move {i}: fewer than two free chords")
        self.s5_pending = (ells, j)
        return self._offer([(w1, self.W(e)) for e in ells])

    def on_pick(self, game: GameState, pick: Edge) -> None:
        if self.stage == 1:
            self.ham.on_pick(game, pick)
            return
        if self.stage == 2:
            if self.step == 0:
                if pick == self.offered[0]:
                    self.w = list(self.v)
                else:
                    self.w = self.v[1:] + self.v[:1]
                self.shifted = pick != self.offered[0]
            else:
                j = self.arc_js[0] if pick == self.offered[0] else self.arc_js[1]
                self.p = self.n - j
            self.step += 1
        elif self.stage == 3:
            self.stage3_picks.append("head" if pick == self.offered[0] else "tail")
            self.step += 1
        elif self.stage == 4:
            j = self.window_js[0] if pick == self.offered[0] else self.window_js[1]
            self.t.append(j)
        elif self.stage == 5:
            ells, j = self.s5_pending
            ell = ells[0] if pick == self.offered[0] else ells[1]
            self.stage5.append((ell, j))
            self.step += 1

    def _relabel(self) -> None:
        cycle = self.ham.cycle
        need = self.f + 2
        clean = self.ham.clean_path()
        if clean is None:
            self.failures.append("no clean Stage I path survived on the Hamilton cycle")
        window = find_clean_window(self.view, cycle, clean, need)
        if window is None:
            raise ForcedForfeit("no clean window for the chord ladder")
        self.window = window
        pos = {v: i for i, v in enumerate(cycle)}
        start = pos[window[0]]
        n = self.n
        self.v = [cycle[(start + d) % n] for d in range(n)]

    # certificates

    def head_path(self, t: int) -> list[int]:
        """Client path from ``w_1`` to ``w_{f+1}`` of length ``f - t`` inside ``w_1..w_{f+1}``."""
        f, W = self.f, self.W
        if t == 0:
            return [W(i) for i in range(1, f + 2)]
        if t == f - 1:
            return [W(1), W(f + 1)]
        if self.stage3_picks[t - 1] == "head":
            return [W(1)] + [W(i) for i in range(t + 2, f + 2)]
        return [W(i) for i in range(1, f - t + 1)] + [W(f + 1)]

    def long_tail(self, k_m: int, chosen) -> list[int]:
        """Vertices after ``w_{f+1}`` up to ``w_{k_m}`` with the gaps in ``chosen`` cut out."""
        out = []
        lo = self.f + 2
        for i in chosen:
            out.extend(self.w[lo - 1:self.t[i - 1]])
            lo = self.t[i]
        out.extend(self.w[lo - 1:k_m])
        return out

    def anchors(self) -> list[tuple[int, int]]:
        """``(k_m, j_m)`` for each depth with a long-cycle family."""
        out = [(self.n, len(self.t) - 1)]
        out += list(self.stage5)
        return out

    def emit_cycles(self) -> PancyclicFamily:
        n, f, p = self.n, self.f, self.p
        cycles: dict[int, tuple] = {}
        for ell in range(3, f + 2):
            cycles[ell] = tuple(self.head_path(f + 1 - ell))
        arc = [self.W(i) for i in range(n - p, n + 1)]
        for ell in range(f + 2, f + p + 3):
            cycles[ell] = tuple(self.head_path(f + p + 2 - ell) + arc)
        gaps = [self.t[i] - self.t[i - 1] - 1 for i in range(1, len(self.t))]
        for k_m, j_m in self.anchors():
            low = k_m - self.t[j_m] + j_m + 2
            for ell in range(max(low, 3), k_m + 1):
                if ell in cycles:
                    continue
                t, chosen = decompose_length(k_m - ell, f, gaps[:j_m])
                cycles[ell] = tuple(self.head_path(t) + self.long_tail(k_m, chosen))
        return PancyclicFamily(cycles)

    # checks

    def ladder_report(self) -> list[str]:
        """Chord-sequence invariants for the Stage IV indices recorded so far."""
        out = []
        t, n = self.t, self.n
        if not t or t[0] != self.f + 1:
            return ["t_0 differs from f + 1"]
        for i in range(1, len(t)):
            if not t[i - 1] < t[i] <= n:
                out.append(f"t_{i} = {t[i]} breaks the increasing order")
            if not self.view.is_client(self.W(t[i - 1]), self.W(t[i])):
                out.append(f"chord t_{i - 1}-t_{i} is not Client's")
            hi = min(2 * t[i - 1] - 2 * i, n)
            if not hi - 20 <= t[i] <= hi:
                out.append(f"t_{i} = {t[i]} outside [{hi - 20}, {hi}]")
            if t[i] < n - 20 and not t[i] > 2 ** i + i * i + 50:
                out.append(f"t_{i} = {t[i]} violates the growth bound")
        return out

    def probe(self, game: GameState) -> list[str]:
        out, self.failures = self.failures, []
        if self.stage == 1:
            out.extend(self.ham.probe(game))
        elif self.stage == 4 and len(self.t) > 1:
            out.extend(self.ladder_report())
        return out

    def final_checks(self, game: GameState) -> list[str]:
        out = list(self.failures)
        self.failures = []
        if self.stage >= 4:
            out.extend(self.ladder_report())
            if len(self.t) - 1 > math.ceil(math.log2(self.n)):
                out.append(f"Stage IV took {len(self.t) - 1} rounds")
        if self.p is not None and not 50 <= self.p < self.f:
            out.append(f"p = {self.p} outside [50, f)")
        return out

    def certificate(self, game: GameState):
        return getattr(self, "family", None)
