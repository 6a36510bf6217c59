"""Strategy and client ids used by the command line and the sweeps."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .biased import BiasedConstants, BiasedHamStrategy, BiasedPMStrategy
from .clients import CLIENT_KINDS, make_client
from .core import BoardSpec, GameState
from .hamilton import HamiltonStrategy
from .matching import BipartiteMatching, CompleteMatching
from .pancyclic import PancyclicStrategy, round_bound as pancyclic_bound
from .play import ClientPolicy, MatchResult, WaiterStrategy, play
from .trees import PathFactorStrategy, Tree, TreeEmbedStrategy, TreeFactorStrategy, default_pin
from .triangles import TriangleFactorStrategy, post_seed_bound

TREE_KINDS = ("random", "path", "two-leaf-tipped")
MAX_TREE_DEGREE = 5


@dataclass(frozen=True)
class StrategyEntry:
    """How to set up, bound and measure one strategy id.

    ``metric`` names the round count the bound refers to: ``real``, ``total``
    (real plus fake) or ``post-seed`` (real rounds after oracle seeding).
    """

    id: str
    target: str
    metric: str
    board: Callable[[int, int, dict], BoardSpec]
    waiter: Callable[[int, int, random.Random, dict], WaiterStrategy]
    bound: Callable[[int, int, dict], float]
    bound_text: str


def _tree(n: int, rng: random.Random, params: dict) -> Tree:
    kind = params.get("tree", "random")
    if kind == "path":
        return Tree.path(n)
    if kind == "two-leaf-tipped":
        return Tree.two_leaf_tipped(n)
    if kind == "random":
        return Tree.random(n, rng, MAX_TREE_DEGREE)
    raise ValueError(f"unknown tree kind {kind!r}; choose from {TREE_KINDS}")


def random_obstacles(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """``n // 2`` random cross edges of the bipartite board with sides of size ``n``."""
    cross = [(a, b) for a in range(n) for b in range(n, 2 * n)]
    return rng.sample(cross, n // 2)


def _tree_embed(n, b, rng, params):
    t = _tree(n, rng, params)
    params["_tree"] = t
    if t.is_path() and params.get("tree") == "path":
        return TreeEmbedStrategy(t)
    return TreeEmbedStrategy(t, default_pin(t), rng.randrange(n))


def _tree_factor(n, b, rng, params):
    k = int(params.get("k", 3))
    kind = params.get("tree", "path")
    if kind == "path":
        return PathFactorStrategy(k)
    if kind == "two-leaf-tipped":
        return TreeFactorStrategy(Tree.two_leaf_tipped(k))
    raise ValueError("tree-factor takes --tree path or two-leaf-tipped")


def _constants(params) -> BiasedConstants:
    return BiasedConstants.named(params.get("constants", "desk"))


def _complete(n, b, params):
    return BoardSpec.complete(n, b)


STRATEGIES: dict[str, StrategyEntry] = {e.id: e for e in (
    StrategyEntry("pm-bipartite", "matching", "real",
                  lambda n, b, p: BoardSpec.bipartite(n, b, p.get("_obstacles", ())),
                  lambda n, b, rng, p: BipartiteMatching(),
                  lambda n, b, p: n + 1, "n+1"),
    StrategyEntry("pm-complete", "matching", "real", _complete,
                  lambda n, b, rng, p: CompleteMatching(),
                  lambda n, b, p: n / 2 + 1, "n/2+1"),
    StrategyEntry("ham-unbiased", "hamilton", "real", _complete,
                  lambda n, b, rng, p: HamiltonStrategy(),
                  lambda n, b, p: n + 1, "n+1"),
    StrategyEntry("pancyclic", "hamilton", "total", _complete,
                  lambda n, b, rng, p: PancyclicStrategy(),
                  lambda n, b, p: pancyclic_bound(n), "n+log2(n)+f(n)+k"),
    StrategyEntry("tree-embed", "tree", "real", _complete, _tree_embed,
                  lambda n, b, p: n - 1 if p.get("tree") == "path" else n, "n (path: n-1)"),
    StrategyEntry("tree-factor", "tree", "real", _complete, _tree_factor,
                  lambda n, b, p: (int(p.get("k", 3)) - 1) * n / int(p.get("k", 3)) + 1,
                  "(k-1)n/k+1"),
    StrategyEntry("triangle-factor", "triangle", "post-seed", _complete,
                  lambda n, b, rng, p: TriangleFactorStrategy(),
                  lambda n, b, p: post_seed_bound(n), "7(n-48)/6+30"),
    StrategyEntry("ham-biased", "hamilton", "real", _complete,
                  lambda n, b, rng, p: BiasedHamStrategy(_constants(p), remainder=p.get("remainder", "auto")),
                  lambda n, b, p: _constants(p).ham_bound(n, b), "n+C*b"),
    StrategyEntry("pm-biased", "matching", "real", _complete,
                  lambda n, b, rng, p: BiasedPMStrategy(_constants(p), remainder=p.get("remainder", "auto")),
                  lambda n, b, p: _constants(p).pm_bound(n, b), "n/2+C*b"),
)}


@dataclass
class Match:
    """A fully specified game: board, Waiter, Client and the parameters that built them."""

    strategy: str
    client: str
    n: int
    bias: int
    seed: int
    params: dict
    board: BoardSpec
    waiter: WaiterStrategy
    client_policy: ClientPolicy

    @property
    def entry(self) -> StrategyEntry:
        return STRATEGIES[self.strategy]

    def describe(self) -> dict:
        public = {k: v for k, v in self.params.items() if not k.startswith("_")}
        return {"waiter": self.strategy, "client": self.client, "n": self.n, "bias": self.bias,
                "seed": self.seed, "params": public}


def build_match(strategy: str, client: str, n: int, bias: int = 1, seed: int = 0,
                params: dict | None = None, client_policy: ClientPolicy | None = None) -> Match:
    """Deterministically build a match; all randomness derives from the arguments."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {sorted(STRATEGIES)}")
    if client not in CLIENT_KINDS and client_policy is None:
        raise ValueError(f"unknown client {client!r}; choose from {CLIENT_KINDS}")
    entry = STRATEGIES[strategy]
    params = dict(params or {})
    rng = random.Random(f"{strategy}/{n}/{bias}/{seed}")
    if strategy == "pm-bipartite":
        params["_obstacles"] = random_obstacles(n, rng)
    board = entry.board(n, bias, params)
    waiter = entry.waiter(n, bias, rng, params)
    if client_policy is None:
        extra = {}
        if client == "avoider" and entry.target == "tree":
            if "_tree" not in params:
                raise ValueError("the avoider client needs a spanning tree target")
            extra["tree_adj"] = params["_tree"].adj
        client_policy = make_client(client, seed, entry.target, **extra)
    return Match(strategy, client, n, bias, seed, params, board, waiter, client_policy)


def metric_rounds(match: Match, game: GameState) -> int:
    metric = match.entry.metric
    if metric == "total":
        return game.round
    if metric == "post-seed":
        return match.waiter.post_seed_rounds(game)
    return game.real_rounds


def run_match(match: Match, probes: str = "per-round") -> MatchResult:
    return play(GameState(match.board), match.waiter, match.client_policy, probes=probes)
