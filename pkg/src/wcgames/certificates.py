"""Certificates: explicit witnesses for the structure Client was forced to build.

Each certificate knows how to check itself against a game state.  ``check``
returns ``None`` when the certificate is valid and a short reason code
otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

from .core import GameState

NOT_CLIENT = "edge not Client"
NOT_SPANNING = "not spanning"
REPEATED_VERTEX = "repeated vertex"
NOT_A_BOARD_VERTEX = "not a board vertex"
LENGTH_GAP = "length gap"
WRONG_LENGTH = "wrong cycle length"
NOT_A_TREE_EDGE = "tree edge count mismatch"
PIN_MOVED = "pinned vertex misplaced"
BAD_TRIANGLE = "not a triangle"
NOT_MATCHING = "not a matching"


class Certificate(Protocol):
    kind: str

    def check(self, game: GameState) -> str | None: ...

    def to_dict(self) -> dict: ...


def _vertices_ok(game: GameState, vs) -> str | None:
    if vs and (min(vs) < 0 or max(vs) >= game.num_vertices):
        return NOT_A_BOARD_VERTEX
    return None


def _cycle_problem(game: GameState, order) -> str | None:
    if len(set(order)) != len(order):
        return REPEATED_VERTEX
    bad = _vertices_ok(game, order)
    if bad:
        return bad
    cadj = game.cadj
    prev = order[-1]
    for u in order:
        if prev not in cadj[u]:
            return NOT_CLIENT
        prev = u
    return None


@dataclass(frozen=True)
class Matching:
    edges: tuple
    kind: str = "matching"

    def check(self, game: GameState) -> str | None:
        seen: set[int] = set()
        for u, v in self.edges:
            if u in seen or v in seen:
                return NOT_MATCHING
            seen.update((u, v))
        bad = _vertices_ok(game, seen)
        if bad:
            return bad
        if len(seen) != game.num_vertices:
            return NOT_SPANNING
        if any(not game.is_client(u, v) for u, v in self.edges):
            return NOT_CLIENT
        return None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class HamiltonCycle:
    order: tuple
    kind: str = "hamilton-cycle"

    def check(self, game: GameState) -> str | None:
        if len(self.order) != game.num_vertices:
            return NOT_SPANNING
        return _cycle_problem(game, self.order)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "order": list(self.order)}


@dataclass(frozen=True)
class PancyclicFamily:
    """One Client cycle of every length ``3..n``, keyed by length."""

    cycles: dict
    kind: str = "pancyclic"

    def check(self, game: GameState) -> str | None:
        for length in range(3, game.num_vertices + 1):
            cyc = self.cycles.get(length)
            if cyc is None:
                return LENGTH_GAP
            if len(cyc) != length:
                return WRONG_LENGTH
            bad = _cycle_problem(game, cyc)
            if bad:
                return bad
        return None

    def to_dict(self) -> dict:
        return {"kind": self.kind,
                "cycles": {str(k): list(v) for k, v in sorted(self.cycles.items())}}


@dataclass(frozen=True)
class TreeEmbedding:
    """An injective map from tree vertices to board vertices.

    ``tree_edges`` uses tree labels; ``mapping[t]`` is the board image of
    tree vertex ``t``.  ``pin`` optionally fixes ``mapping[pin[0]] == pin[1]``.
    """

    tree_edges: tuple
    mapping: tuple
    pin: tuple | None = None
    spanning: bool = True
    kind: str = "tree-embedding"

    def check(self, game: GameState) -> str | None:
        f = self.mapping
        if len(self.tree_edges) != len(f) - 1:
            return NOT_A_TREE_EDGE
        if len(set(f)) != len(f):
            return REPEATED_VERTEX
        bad = _vertices_ok(game, f)
        if bad:
            return bad
        if self.spanning and len(f) != game.num_vertices:
            return NOT_SPANNING
        if self.pin is not None and f[self.pin[0]] != self.pin[1]:
            return PIN_MOVED
        if any(not game.is_client(f[a], f[b]) for a, b in self.tree_edges):
            return NOT_CLIENT
        return None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "tree_edges": [list(e) for e in self.tree_edges],
                "mapping": list(self.mapping),
                "pin": list(self.pin) if self.pin is not None else None}


@dataclass(frozen=True)
class TreeFactor:
    """Vertex-disjoint copies of one tree covering the board."""

    tree_edges: tuple
    copies: tuple
    kind: str = "tree-factor"

    def check(self, game: GameState) -> str | None:
        k = len(self.tree_edges) + 1
        used: list[int] = []
        for f in self.copies:
            if len(f) != k:
                return NOT_A_TREE_EDGE
            used.extend(f)
            if any(not game.is_client(f[a], f[b]) for a, b in self.tree_edges):
                return NOT_CLIENT
        if len(set(used)) != len(used):
            return REPEATED_VERTEX
        bad = _vertices_ok(game, used)
        if bad:
            return bad
        if len(used) != game.num_vertices:
            return NOT_SPANNING
        return None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "tree_edges": [list(e) for e in self.tree_edges],
                "copies": [list(c) for c in self.copies]}


def _triangles_problem(game: GameState, triangles, spanning: bool) -> str | None:
    used = [v for t in triangles for v in t]
    if any(len(set(t)) != 3 for t in triangles):
        return BAD_TRIANGLE
    if len(set(used)) != len(used):
        return REPEATED_VERTEX
    bad = _vertices_ok(game, used)
    if bad:
        return bad
    for a, b, c in triangles:
        if not (game.is_client(a, b) and game.is_client(b, c) and game.is_client(a, c)):
            return NOT_CLIENT
    if spanning and len(used) != game.num_vertices:
        return NOT_SPANNING
    return None


@dataclass(frozen=True)
class TriangleFactor:
    triangles: tuple
    kind: str = "triangle-factor"

    def check(self, game: GameState) -> str | None:
        return _triangles_problem(game, self.triangles, spanning=True)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "triangles": [list(t) for t in self.triangles]}


@dataclass(frozen=True)
class TrianglePacking:
    """Vertex-disjoint Client triangles, not necessarily spanning."""

    triangles: tuple
    kind: str = "triangle-packing"

    def check(self, game: GameState) -> str | None:
        return _triangles_problem(game, self.triangles, spanning=False)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "triangles": [list(t) for t in self.triangles]}


def validate_certificate(game: GameState, cert) -> tuple[bool, str | None]:
    """Return ``(ok, reason)``; ``reason`` is ``None`` when valid."""
    reason = cert.check(game)
    return reason is None, reason


def certificate_from_dict(d: dict):
    kind = d["kind"]
    if kind == "matching":
        return Matching(tuple(tuple(e) for e in d["edges"]))
    if kind == "hamilton-cycle":
        return HamiltonCycle(tuple(d["order"]))
    if kind == "pancyclic":
        return PancyclicFamily({int(k): tuple(v) for k, v in d["cycles"].items()})
    if kind == "tree-embedding":
        pin = tuple(d["pin"]) if d.get("pin") is not None else None
        return TreeEmbedding(tuple(tuple(e) for e in d["tree_edges"]), tuple(d["mapping"]), pin)
    if kind == "tree-factor":
        return TreeFactor(tuple(tuple(e) for e in d["tree_edges"]),
                          tuple(tuple(c) for c in d["copies"]))
    if kind == "triangle-factor":
        return TriangleFactor(tuple(tuple(t) for t in d["triangles"]))
    if kind == "triangle-packing":
        return TrianglePacking(tuple(tuple(t) for t in d["triangles"]))
    raise ValueError(f"unknown certificate kind {kind!r}")
