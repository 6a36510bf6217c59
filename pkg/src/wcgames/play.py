"""Running games: the strategy interface, the match loop, transcripts and
exhaustive enumeration of Client replies."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .certificates import certificate_from_dict
from .core import FAKE, BoardSpec, Edge, ForcedForfeit, GameState, IllegalOffer, Owner

SCHEMA = "wcgames.transcript/1"
PROBE_LEVELS = ("off", "final", "per-round")


class WaiterStrategy:
    """Base class for Waiter strategies.

    ``next_offer`` returns the edges to offer, ``FAKE`` for a fake round or
    ``None`` once the strategy is finished.  ``probe`` is called after every
    round when per-round probing is on and returns violated clauses.
    """

    name = "waiter"

    def setup(self, game: GameState) -> None:
        """Hook run once before the first round (oracle seeding)."""

    def next_offer(self, game: GameState):
        raise NotImplementedError

    def on_pick(self, game: GameState, pick: Edge) -> None:
        pass

    def probe(self, game: GameState) -> list[str]:
        return []

    def final_checks(self, game: GameState) -> list[str]:
        return []

    def certificate(self, game: GameState):
        return None


class ClientPolicy:
    name = "client"

    def choose(self, game: GameState, offer: tuple[Edge, ...]) -> int:
        raise NotImplementedError


@dataclass
class MatchResult:
    game: GameState
    certificate: object
    cert_reason: str | None
    probe_failures: list[str] = field(default_factory=list)
    forfeit: str | None = None

    @property
    def won(self) -> bool:
        return self.forfeit is None and self.certificate is not None and self.cert_reason is None

    @property
    def clean(self) -> bool:
        return self.won and not self.probe_failures


def play(game: GameState, waiter: WaiterStrategy, client: ClientPolicy, *,
         probes: str = "per-round", max_rounds: int | None = None) -> MatchResult:
    """Play ``waiter`` against ``client`` on ``game`` until Waiter stops."""
    if probes not in PROBE_LEVELS:
        raise ValueError(f"probe level must be one of {PROBE_LEVELS}")
    failures: list[str] = []
    forfeit = None
    try:
        waiter.setup(game)
        while True:
            offer = waiter.next_offer(game)
            if offer is None:
                break
            if offer == FAKE:
                game.apply_fake_round()
            else:
                edges = game.check_offer(offer)
                choice = client.choose(game, edges)
                game.apply_round(edges, choice)
                waiter.on_pick(game, edges[choice])
            if probes == "per-round":
                failures.extend(f"round {game.round}: {m}" for m in waiter.probe(game))
            if max_rounds is not None and game.round > max_rounds:
                raise ForcedForfeit(f"exceeded {max_rounds} rounds")
    except ForcedForfeit as exc:
        forfeit = str(exc) or "forfeit"
    except IllegalOffer as exc:
        forfeit = f"illegal offer: {exc}"
    if probes != "off":
        failures.extend(f"final: {m}" for m in waiter.final_checks(game))
    cert = reason = None
    if forfeit is None:
        cert = waiter.certificate(game)
        reason = "no certificate" if cert is None else cert.check(game)
    return MatchResult(game, cert, reason, failures, forfeit)


def history_records(game: GameState) -> list:
    out = []
    for h in game.history:
        if h == FAKE:
            out.append(FAKE)
        elif h[0] == "grant":
            out.append({"grant": [list(e) for e in h[1]], "owner": Owner(h[2]).name.lower()})
        else:
            out.append({"offer": [list(e) for e in h[0]], "pick": h[1]})
    return out


def replay_records(board: BoardSpec, rounds: list) -> GameState:
    """Rebuild a game state from transcript round records."""
    game = GameState(board)
    for r in rounds:
        if r == FAKE:
            game.apply_fake_round()
        elif "grant" in r:
            who = Owner[r.get("owner", "client").upper()]
            game.grant([tuple(e) for e in r["grant"]], who)
        else:
            game.apply_round([tuple(e) for e in r["offer"]], r["pick"])
    return game


@dataclass
class Transcript:
    board: BoardSpec
    strategies: dict
    rounds: list
    certificate: dict | None = None
    checks: list = field(default_factory=list)
    seed: int | None = None

    @classmethod
    def from_result(cls, result: MatchResult, strategies: dict, seed: int | None = None) -> "Transcript":
        cert = result.certificate.to_dict() if result.certificate is not None else None
        checks = list(result.probe_failures)
        if result.forfeit:
            checks.append(f"forfeit: {result.forfeit}")
        if result.cert_reason:
            checks.append(f"certificate: {result.cert_reason}")
        return cls(result.game.board, strategies, history_records(result.game), cert, checks, seed)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "board": self.board.to_dict(),
            "bias": self.board.bias,
            "strategies": self.strategies,
            "seed": self.seed,
            "rounds": self.rounds,
            "certificate": self.certificate,
            "checks": self.checks,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Transcript":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported transcript schema {d.get('schema')!r}")
        return cls(BoardSpec.from_dict(d["board"]), d["strategies"], d["rounds"],
                   d.get("certificate"), d.get("checks", []), d.get("seed"))

    @classmethod
    def from_json(cls, text: str) -> "Transcript":
        return cls.from_dict(json.loads(text))

    def replay(self) -> GameState:
        return replay_records(self.board, self.rounds)

    def certificate_object(self):
        return certificate_from_dict(self.certificate) if self.certificate else None


class ScriptedClient(ClientPolicy):
    """Follows a fixed list of picks, then picks index ``default``.

    Records the size of every offer seen, which drives exhaustive search.
    """

    name = "scripted"

    def __init__(self, picks=(), default: int = 0):
        self.picks = list(picks)
        self.default = default
        self.choices: list[int] = []
        self.sizes: list[int] = []

    def choose(self, game: GameState, offer) -> int:
        i = len(self.choices)
        c = self.picks[i] if i < len(self.picks) else min(self.default, len(offer) - 1)
        self.choices.append(c)
        self.sizes.append(len(offer))
        return c


def enumerate_replies(run: Callable[[ScriptedClient], MatchResult],
                      limit: int | None = None):
    """Yield ``(picks, result)`` for every Client reply sequence.

    ``run`` plays a fresh game against the given scripted client.  Strategies
    must be deterministic so that a replayed prefix reproduces the same
    offers.  The walk is a depth-first odometer over the reply tree.
    """
    prefix: list[int] = []
    count = 0
    while True:
        client = ScriptedClient(prefix)
        result = run(client)
        yield list(client.choices), result
        count += 1
        if limit is not None and count >= limit:
            return
        choices, sizes = client.choices, client.sizes
        i = len(choices) - 1
        while i >= 0 and choices[i] == sizes[i] - 1:
            i -= 1
        if i < 0:
            return
        prefix = choices[:i] + [choices[i] + 1]
