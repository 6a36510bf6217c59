"""Waiter-Client games on graphs: Waiter strategies, Client policies, an exact
solver for tiny boards and a command-line harness."""

from .core import BoardSpec, ForcedForfeit, GameState, IllegalOffer, Owner, View, edge
from .play import MatchResult, Transcript, WaiterStrategy, play
from .registry import STRATEGIES, build_match, run_match

__version__ = "0.1.0"

__all__ = ["BoardSpec", "ForcedForfeit", "GameState", "IllegalOffer", "MatchResult", "Owner",
           "STRATEGIES", "Transcript", "View", "WaiterStrategy", "build_match", "edge", "play",
           "run_match"]
