"""Command line: ``wcgames run|verify|solve|replay``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .certificates import certificate_from_dict
from .clients import CLIENT_KINDS
from .core import GameError
from .play import PROBE_LEVELS, ScriptedClient, Transcript, history_records, replay_records
from .registry import STRATEGIES, TREE_KINDS, build_match, metric_rounds, run_match
from .solver import (HypergraphGame, SolverBudgetExceeded, connectivity_game, matching_game,
                     tau_wc)

RESULTS_SCHEMA = "wcgames.results/1"
FIELDS = ("schema", "strategy", "client", "n", "b", "seed", "real_rounds", "fake_rounds",
          "metric", "rounds", "bound", "bound_formula", "within_bound", "certificate_valid",
          "probes_failed", "forfeit")
BUILTIN_GAMES = {
    "single": lambda: HypergraphGame(1, ((0,),)),
    "k3-connectivity": lambda: connectivity_game(3),
    "k4-pm": lambda: matching_game(4),
}


def parse_ints(text: str, *, count_form: bool = False) -> list[int]:
    """Parse ``a..b[:step]`` ranges and comma lists; with ``count_form`` a bare
    ``N`` means ``0..N-1``."""
    text = text.strip()
    if count_form and text.isdigit():
        return list(range(int(text)))
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            span, _, step = part.partition(":")
            lo, hi = span.split("..")
            out.extend(range(int(lo), int(hi) + 1, int(step) if step else 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return out


def _params(args) -> dict:
    params = {"constants": args.constants}
    if args.tree is not None:
        params["tree"] = args.tree
    if args.k is not None:
        params["k"] = args.k
    if args.remainder is not None:
        params["remainder"] = args.remainder
    return params


def play_one(task: tuple) -> tuple[dict, str]:
    """Play one game; returns its table row and transcript JSON."""
    strategy, client, n, b, seed, params, probes = task
    match = build_match(strategy, client, n, b, seed, params)
    result = run_match(match, probes)
    game = result.game
    bound = match.entry.bound(n, b, match.params)
    rounds = metric_rounds(match, game) if result.forfeit is None else None
    row = {
        "schema": RESULTS_SCHEMA, "strategy": strategy, "client": client, "n": n, "b": b,
        "seed": seed, "real_rounds": game.real_rounds, "fake_rounds": game.fake_rounds,
        "metric": match.entry.metric, "rounds": rounds, "bound": float(f"{bound:.12g}"),
        "bound_formula": match.entry.bound_text,
        "within_bound": rounds is not None and rounds <= bound + 1e-9,
        "certificate_valid": result.won, "probes_failed": len(result.probe_failures),
        "forfeit": result.forfeit or "",
    }
    transcript = Transcript.from_result(result, match.describe(), seed)
    return row, transcript.to_json()


def format_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"schema": RESULTS_SCHEMA, "rows": rows}, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_run(args) -> int:
    params = _params(args)
    tasks = [(args.strategy, args.client, n, args.bias, seed, params, args.probes)
             for n in args.n for seed in args.seeds]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(play_one, tasks))
    else:
        results = [play_one(t) for t in tasks]
    results.sort(key=lambda r: (r[0]["n"], r[0]["seed"]))
    rows = [r[0] for r in results]
    fmt = args.format or ("json" if args.out and args.out.endswith(".json") else "csv")
    text = format_rows(rows, fmt)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.transcripts:
        folder = Path(args.transcripts)
        folder.mkdir(parents=True, exist_ok=True)
        tag = "".join(f"-{k}{params[k]}" for k in ("tree", "k") if k in params)
        for row, tjson in results:
            name = (f"{row['strategy']}{tag}-{row['client']}-n{row['n']}-b{row['b']}"
                    f"-s{row['seed']}.json")
            (folder / name).write_text(tjson + "\n")
    bad = [r for r in rows if r["forfeit"] or r["probes_failed"] or not r["certificate_valid"]]
    if bad:
        print(f"{len(bad)} of {len(rows)} games forfeited, failed a probe or lack a valid certificate",
              file=sys.stderr)
    return 1 if args.strict and bad else 0


def verify_transcript(t: Transcript) -> list[str]:
    """Replay ``t`` against its strategy and recheck everything; returns problems."""
    problems: list[str] = []
    try:
        recorded = replay_records(t.board, t.rounds)
    except (GameError, KeyError, TypeError, ValueError) as exc:
        return [f"malformed transcript: {exc}"]
    s = t.strategies
    picks = [r["pick"] for r in t.rounds if isinstance(r, dict) and "offer" in r]
    match = build_match(s["waiter"], s["client"], s["n"], s["bias"], s["seed"], s.get("params"),
                        client_policy=ScriptedClient(picks))
    if match.board != t.board:
        problems.append("board does not match the recorded strategy parameters")
    result = run_match(match, "per-round")
    fresh = history_records(result.game)
    if fresh != t.rounds:
        at = next((i for i, (a, b) in enumerate(zip(fresh, t.rounds)) if a != b),
                  min(len(fresh), len(t.rounds)))
        problems.append(f"replay divergence at round {at + 1}")
    if result.forfeit:
        problems.append(f"forfeit: {result.forfeit}")
    problems.extend(f"probe: {m}" for m in result.probe_failures)
    if t.certificate is None:
        problems.append("no certificate recorded")
    else:
        try:
            reason = certificate_from_dict(t.certificate).check(recorded)
        except (KeyError, TypeError, ValueError) as exc:
            reason = f"unreadable ({exc})"
        if reason:
            problems.append(f"certificate invalid: {reason}")
    return problems


def _load(path: str) -> Transcript:
    return Transcript.from_json(Path(path).read_text())


def cmd_verify(args) -> int:
    try:
        t = _load(args.transcript)
    except (OSError, ValueError, KeyError) as exc:
        print(f"malformed transcript: {exc}")
        return 2
    problems = verify_transcript(t)
    for p in problems:
        print(p)
    print("clean" if not problems else f"{len(problems)} problem(s)")
    return 0 if not problems else 1


def cmd_replay(args) -> int:
    try:
        t = _load(args.transcript)
        game = replay_records(t.board, t.rounds)
    except (OSError, ValueError, KeyError, GameError) as exc:
        print(f"malformed transcript: {exc}")
        return 2
    if args.verbose:
        for i, r in enumerate(t.rounds, 1):
            if isinstance(r, dict) and "offer" in r:
                print(f"{i}: offer {r['offer']} pick {r['offer'][r['pick']]}")
            elif isinstance(r, dict):
                print(f"{i}: grant {len(r['grant'])} edges to {r['owner']}")
            else:
                print(f"{i}: fake")
    reason = certificate_from_dict(t.certificate).check(game) if t.certificate else "none recorded"
    print(f"rounds {game.round} real {game.real_rounds} fake {game.fake_rounds} "
          f"client edges {len(game.client_edges())} certificate {'valid' if reason is None else reason}")
    return 0 if reason is None else 1


def cmd_solve(args) -> int:
    if args.builtin:
        game = BUILTIN_GAMES[args.builtin]()
    elif args.game:
        d = json.loads(Path(args.game).read_text())
        game = HypergraphGame.from_dict(d)
    else:
        print("give a game file or --builtin")
        return 2
    if args.bias is not None:
        game = HypergraphGame(game.size, game.sets, args.bias)
    try:
        res = tau_wc(game, args.max_states)
    except SolverBudgetExceeded as exc:
        print(f"budget exceeded: {exc}")
        return 3
    print(f"tau {res.describe()}")
    print(f"states visited {res.states_visited}")
    for k, (offer, pick) in enumerate(res.principal_variation, 1):
        print(f"{k}: offer {offer} pick {pick}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wcgames", description="Waiter-Client game strategies and checks")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="play strategy-vs-client games and print a round-count table")
    r.add_argument("--strategy", required=True, choices=sorted(STRATEGIES))
    r.add_argument("--client", default="random", choices=CLIENT_KINDS)
    r.add_argument("--n", required=True, type=parse_ints, help="e.g. 24..120:8 or 40,60")
    r.add_argument("--bias", type=int, default=1)
    r.add_argument("--seeds", default=[0], type=lambda s: parse_ints(s, count_form=True),
                   help="N for 0..N-1, or a..b, or a comma list")
    r.add_argument("--probes", choices=PROBE_LEVELS, default="per-round")
    r.add_argument("--strict", action="store_true", help="nonzero exit on any forfeit or probe failure")
    r.add_argument("--constants", choices=("literal", "desk"), default="desk")
    r.add_argument("--remainder", choices=("auto", "rotation", "hamilton", "stub"))
    r.add_argument("--tree", choices=TREE_KINDS)
    r.add_argument("--k", type=int, help="component size for tree-factor")
    r.add_argument("--out", help="output file; .json selects JSON")
    r.add_argument("--format", choices=("csv", "json"))
    r.add_argument("--transcripts", help="directory for per-game transcripts")
    r.add_argument("--jobs", type=int, default=1, help="worker processes")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="replay a transcript and recheck certificate and probes")
    v.add_argument("transcript")
    v.set_defaults(func=cmd_verify)

    rp = sub.add_parser("replay", help="rebuild a game from a transcript")
    rp.add_argument("transcript")
    rp.add_argument("-v", "--verbose", action="store_true")
    rp.set_defaults(func=cmd_replay)

    s = sub.add_parser("solve", help="exact tau for a tiny hypergraph game")
    s.add_argument("game", nargs="?", help='JSON file {"size": m, "sets": [[...]], "bias": b}')
    s.add_argument("--builtin", choices=sorted(BUILTIN_GAMES))
    s.add_argument("--bias", type=int)
    s.add_argument("--max-states", type=int, default=2_000_000)
    s.set_defaults(func=cmd_solve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
