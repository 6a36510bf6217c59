"""Board, ownership bookkeeping and round mechanics for Waiter-Client games.

A round consists of Waiter offering ``b + 1`` free edges, Client keeping one
and Waiter taking the rest.  When fewer than ``b + 1`` free edges remain the
offer must contain all of them (the short-offer rule).  Fake rounds are rounds
a strategy accounts for without touching the board.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

Edge = tuple[int, int]

FAKE = "fake"


def edge(u: int, v: int) -> Edge:
    """Canonical (sorted) form of the edge ``uv``."""
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Owner(enum.IntEnum):
    FREE = 0
    WAITER = 1
    CLIENT = 2


class GameError(Exception):
    """Base class for engine errors."""


class InvalidBoard(GameError, ValueError):
    pass


class IllegalOffer(GameError):
    pass


class ForcedForfeit(GameError):
    """Raised by a strategy that cannot make the move its proof promises."""


@dataclass(frozen=True)
class BoardSpec:
    """The playable edge set: a complete or bipartite board minus ``forbidden``.

    For ``complete`` and ``complete-minus`` boards ``n`` is the vertex count.
    For ``bipartite`` boards ``n`` is the side size, with sides ``0..n-1`` and
    ``n..2n-1``.
    """

    kind: str
    n: int
    bias: int = 1
    forbidden: frozenset = field(default_factory=frozenset)

    KINDS = ("complete", "bipartite", "complete-minus")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise InvalidBoard(f"unknown board kind {self.kind!r}")
        if self.n < 2 and not (self.kind == "bipartite" and self.n >= 1):
            raise InvalidBoard("n must be at least 2")
        if self.bias < 1:
            raise InvalidBoard("bias must be at least 1")
        canon = set()
        for e in self.forbidden:
            u, v = e
            if u == v:
                raise InvalidBoard(f"forbidden loop {e}")
            c = edge(u, v)
            if c in canon:
                raise InvalidBoard(f"duplicate forbidden edge {c}")
            if not self._in_base(*c):
                raise InvalidBoard(f"forbidden edge {c} is not a board edge")
            canon.add(c)
        object.__setattr__(self, "forbidden", frozenset(canon))

    @classmethod
    def complete(cls, n: int, bias: int = 1) -> "BoardSpec":
        return cls("complete", n, bias)

    @classmethod
    def bipartite(cls, n: int, bias: int = 1, forbidden: Iterable[Edge] = ()) -> "BoardSpec":
        return cls("bipartite", n, bias, frozenset(forbidden))

    @classmethod
    def complete_minus(cls, n: int, forbidden: Iterable[Edge], bias: int = 1) -> "BoardSpec":
        return cls("complete-minus", n, bias, frozenset(forbidden))

    @property
    def num_vertices(self) -> int:
        return 2 * self.n if self.kind == "bipartite" else self.n

    @property
    def sides(self) -> tuple[range, range]:
        if self.kind != "bipartite":
            raise InvalidBoard("only bipartite boards have sides")
        return range(self.n), range(self.n, 2 * self.n)

    def _in_base(self, u: int, v: int) -> bool:
        nv = self.num_vertices
        if not (0 <= u < nv and 0 <= v < nv) or u == v:
            return False
        if self.kind == "bipartite":
            return (u < self.n) != (v < self.n)
        return True

    def is_playable(self, u: int, v: int) -> bool:
        return self._in_base(u, v) and edge(u, v) not in self.forbidden

    def playable_count(self) -> int:
        if self.kind == "bipartite":
            base = self.n * self.n
        else:
            base = self.n * (self.n - 1) // 2
        return base - len(self.forbidden)

    def playable_edges(self) -> Iterator[Edge]:
        if self.kind == "bipartite":
            pairs = ((a, b) for a in range(self.n) for b in range(self.n, 2 * self.n))
        else:
            pairs = combinations(range(self.n), 2)
        return (e for e in pairs if e not in self.forbidden)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "bias": self.bias,
            "forbidden": sorted(list(e) for e in self.forbidden),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoardSpec":
        return cls(d["kind"], d["n"], d.get("bias", 1),
                   frozenset(tuple(e) for e in d.get("forbidden", ())))


class GameState:
    """Mutable ownership state of one game.

    ``history`` holds ``(offer, choice)`` pairs for real rounds, the string
    ``"fake"`` for fake rounds and ``("grant", edges)`` for edges handed to
    Client by an oracle before play.
    """

    def __init__(self, board: BoardSpec):
        self.board = board
        nv = board.num_vertices
        self.owner: dict[Edge, Owner] = {}
        self.wadj: list[set[int]] = [set() for _ in range(nv)]
        self.cadj: list[set[int]] = [set() for _ in range(nv)]
        self.round = 0
        self.fake_rounds = 0
        self.short_offers = 0
        self.history: list = []
        self.n_free = board.playable_count()
        self.granted = 0

    @property
    def num_vertices(self) -> int:
        return self.board.num_vertices

    @property
    def real_rounds(self) -> int:
        return self.round - self.fake_rounds

    def is_free(self, u: int, v: int) -> bool:
        return self.board.is_playable(u, v) and edge(u, v) not in self.owner

    def owner_of(self, u: int, v: int) -> Owner:
        return self.owner.get(edge(u, v), Owner.FREE)

    def is_client(self, u: int, v: int) -> bool:
        return self.owner.get(edge(u, v)) is Owner.CLIENT

    def is_waiter(self, u: int, v: int) -> bool:
        return self.owner.get(edge(u, v)) is Owner.WAITER

    def edges_of(self, who: Owner) -> list[Edge]:
        return sorted(e for e, o in self.owner.items() if o is who)

    def client_edges(self) -> list[Edge]:
        return self.edges_of(Owner.CLIENT)

    def waiter_edges(self) -> list[Edge]:
        return self.edges_of(Owner.WAITER)

    def free_edges(self) -> list[Edge]:
        return [e for e in self.board.playable_edges() if e not in self.owner]

    def _claim(self, e: Edge, who: Owner) -> None:
        self.owner[e] = who
        adj = self.cadj if who is Owner.CLIENT else self.wadj
        adj[e[0]].add(e[1])
        adj[e[1]].add(e[0])
        self.n_free -= 1

    def check_offer(self, offer: Iterable[Edge]) -> tuple[Edge, ...]:
        edges = tuple(edge(*e) for e in offer)
        if not edges:
            raise IllegalOffer("empty offer")
        if len(set(edges)) != len(edges):
            raise IllegalOffer(f"duplicate edges in offer {edges}")
        for e in edges:
            if not self.board.is_playable(*e):
                raise IllegalOffer(f"{e} is not a playable edge")
            if e in self.owner:
                raise IllegalOffer(f"{e} is already claimed")
        want = min(self.board.bias + 1, self.n_free)
        if len(edges) != want:
            raise IllegalOffer(f"offer has {len(edges)} edges, expected {want}")
        return edges

    def apply_round(self, offer: Iterable[Edge], choice: int) -> "GameState":
        edges = self.check_offer(offer)
        if not 0 <= choice < len(edges):
            raise IllegalOffer(f"choice {choice} out of range for {len(edges)} edges")
        if len(edges) < self.board.bias + 1:
            self.short_offers += 1
        for i, e in enumerate(edges):
            self._claim(e, Owner.CLIENT if i == choice else Owner.WAITER)
        self.round += 1
        self.history.append((edges, choice))
        return self

    def apply_fake_round(self) -> "GameState":
        self.round += 1
        self.fake_rounds += 1
        self.history.append(FAKE)
        return self

    def grant(self, edges: Iterable[Edge], who: Owner = Owner.CLIENT) -> "GameState":
        """Hand edges to a player outside of play (oracle seeding)."""
        es = tuple(sorted({edge(*e) for e in edges}))
        for e in es:
            if not self.is_free(*e):
                raise IllegalOffer(f"cannot grant claimed or unplayable edge {e}")
        for e in es:
            self._claim(e, who)
        if who is Owner.CLIENT:
            self.granted += len(es)
        self.history.append(("grant", es, int(who)))
        return self

    def copy(self) -> "GameState":
        g = GameState.__new__(GameState)
        g.board = self.board
        g.owner = dict(self.owner)
        g.wadj = [set(s) for s in self.wadj]
        g.cadj = [set(s) for s in self.cadj]
        g.round = self.round
        g.fake_rounds = self.fake_rounds
        g.short_offers = self.short_offers
        g.history = list(self.history)
        g.n_free = self.n_free
        g.granted = self.granted
        return g

    def fingerprint(self) -> tuple:
        return (self.board, tuple(sorted(self.owner.items())), self.round, self.fake_rounds)

    def partition_ok(self) -> bool:
        """Free, Waiter and Client edges partition the playable edges."""
        claimed = len(self.owner)
        if claimed + self.n_free != self.board.playable_count():
            return False
        real = self.real_rounds
        nc = sum(1 for o in self.owner.values() if o is Owner.CLIENT)
        nw = claimed - nc
        cgrant = self.granted
        wgrant = sum(len(h[1]) for h in self.history
                     if isinstance(h, tuple) and h[0] == "grant" and h[2] == Owner.WAITER)
        return nc - cgrant == real and nw - wgrant <= self.board.bias * real


def create_game(spec: BoardSpec) -> GameState:
    return GameState(spec)


def apply_round(state: GameState, offer: Iterable[Edge], choice: int) -> GameState:
    return state.apply_round(offer, choice)


def apply_fake_round(state: GameState) -> GameState:
    return state.apply_fake_round()


class View:
    """Real ownership overlaid with edges a strategy only pretends were claimed.

    Vertices at or above the board's vertex count are phantoms: they exist
    only in the overlay, and every edge at a phantom is free until pretended.
    """

    def __init__(self, game: GameState):
        self.game = game
        self.nv = game.num_vertices
        self.pretend: dict[Edge, Owner] = {}
        self._pw: dict[int, set[int]] = {}
        self._pc: dict[int, set[int]] = {}

    def is_phantom(self, v: int) -> bool:
        return v >= self.nv

    def is_free(self, u: int, v: int) -> bool:
        e = edge(u, v)
        if e in self.pretend:
            return False
        if e[1] >= self.nv:
            return True
        return self.game.is_free(u, v)

    def owner_of(self, u: int, v: int) -> Owner:
        e = edge(u, v)
        if e in self.pretend:
            return self.pretend[e]
        if e[1] >= self.nv:
            return Owner.FREE
        return self.game.owner.get(e, Owner.FREE)

    def is_client(self, u: int, v: int) -> bool:
        return self.owner_of(u, v) is Owner.CLIENT

    def wnbrs(self, v: int) -> set[int]:
        extra = self._pw.get(v)
        if v >= self.nv:
            return set(extra or ())
        base = self.game.wadj[v]
        return base | extra if extra else base

    def cnbrs(self, v: int) -> set[int]:
        extra = self._pc.get(v)
        if v >= self.nv:
            return set(extra or ())
        base = self.game.cadj[v]
        return base | extra if extra else base

    def claim(self, e: Edge, who: Owner) -> None:
        e = edge(*e)
        if not self.is_free(*e):
            raise IllegalOffer(f"pretended claim of non-free edge {e}")
        self.pretend[e] = who
        adj = self._pc if who is Owner.CLIENT else self._pw
        adj.setdefault(e[0], set()).add(e[1])
        adj.setdefault(e[1], set()).add(e[0])

    def pretend_round(self, offer: Iterable[Edge], pick: Edge) -> None:
        pick = edge(*pick)
        for e in offer:
            e = edge(*e)
            self.claim(e, Owner.CLIENT if e == pick else Owner.WAITER)
