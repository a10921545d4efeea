"""Command-line entry points.

Exit codes form a small contract for scripting: 0 all good, 1 an internal
invariant was violated (a bug), 2 unreadable or malformed input, 3 the
queried pair is not apart (it is bisimilar).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import fixtures
from .apartness import apartness, bisimilarity
from .checks import instance_failures
from .games import (BRANCHING, STRONG, SpoilerPair, all_pairs,
                    build_branching_game, build_strong_game, describe_config)
from .lts import Lts, LtsError, parse_aut, validate, write_aut
from .proofs import build_proof, check_proof, proof_to_json
from .render import render_dot, render_game_dot, render_proof_text, render_relation_text
from .solver import solve

OK, BUG, INPUT_ERROR, NOT_APART = 0, 1, 2, 3


def _load_lts(args) -> Lts:
    if args.lts in fixtures.BUILTIN:
        text = fixtures.BUILTIN[args.lts]
    else:
        with open(args.lts, encoding="utf-8") as fh:
            text = fh.read()
    return parse_aut(text, tau_names=tuple(args.tau_labels.split(",")))


def _resolve_pair(lts: Lts, x: str, y: str) -> tuple[int, int]:
    return lts.state_index(x), lts.state_index(y)


def _game_for(lts: Lts, kind: str, roots):
    build = build_strong_game if kind == STRONG else build_branching_game
    return build(lts, roots)


def cmd_check(args) -> int:
    lts = _load_lts(args)
    info = validate(lts)
    print(f"states={info['states']} labels={','.join(info['labels'])} "
          f"transitions={info['transitions']} tau_used={info['tau_used']}")
    rel = apartness(lts, args.kind)
    bis = bisimilarity(lts, args.kind)
    print(render_relation_text(lts, rel.level, bis.pairs))
    failures = [msg for prop, msg in instance_failures(lts, args.kind) if msg]
    if failures:
        for msg in failures:
            print(f"INVARIANT VIOLATED: {msg}", file=sys.stderr)
        return BUG
    print("duality, game agreement and determinacy confirmed")
    return OK


def cmd_solve(args) -> int:
    lts = _load_lts(args)
    if args.x is not None:
        roots = [_resolve_pair(lts, args.x, args.y)]
    else:
        roots = all_pairs(lts)
    game = _game_for(lts, args.kind, roots)
    sol = solve(game)
    if args.format == "json":
        doc = {
            "kind": args.kind,
            "configs": len(game.configs),
            "pairs": [
                {
                    "x": lts.state_name(game.configs[i].x),
                    "y": lts.state_name(game.configs[i].y),
                    "winner": "spoiler" if i in sol.spoiler_region else "duplicator",
                    "rank": sol.rank.get(i),
                }
                for i in game.roots
            ],
        }
        print(json.dumps(doc, indent=2))
        return OK
    print(f"{len(game.configs)} configurations; "
          f"{len(sol.spoiler_region)} challenger-won, {len(sol.duplicator_region)} mimic-won")
    for i in game.roots:
        cfg = game.configs[i]
        if i in sol.spoiler_region:
            print(f"{describe_config(cfg, lts)}: apart, challenger wins in {sol.rank[i]} rounds")
        else:
            print(f"{describe_config(cfg, lts)}: bisimilar, mimic wins")
    return OK


def cmd_prove(args) -> int:
    lts = _load_lts(args)
    x, y = _resolve_pair(lts, args.x, args.y)
    rel = apartness(lts, args.kind)
    if (x, y) not in rel.pairs:
        bis = bisimilarity(lts, args.kind)
        witness = sorted((lts.state_name(a), lts.state_name(b)) for a, b in bis.pairs)
        print(f"{args.x} and {args.y} are not apart; a witnessing bisimulation:")
        print("  " + ", ".join(f"({a},{b})" for a, b in witness))
        return NOT_APART
    proof = build_proof(lts, args.kind, x, y, relation=rel)
    res = check_proof(lts, args.kind, proof)
    if not res.valid:
        print(f"internal error: produced proof failed checking: {res.failures}",
              file=sys.stderr)
        return BUG
    if args.format == "json":
        print(json.dumps(proof_to_json(proof, lts), indent=2))
    elif args.format == "dot":
        print(render_dot(proof, lts), end="")
    else:
        print(render_proof_text(proof, lts))
    return OK


def cmd_game(args) -> int:
    lts = _load_lts(args)
    if args.x is not None:
        roots = [_resolve_pair(lts, args.x, args.y)]
    else:
        roots = all_pairs(lts)
    game = _game_for(lts, args.kind, roots)
    if args.format == "json":
        doc = {
            "kind": game.kind,
            "configs": [describe_config(c, lts) for c in game.configs],
            "moves": [list(m) for m in game.moves],
            "roots": list(game.roots),
        }
        print(json.dumps(doc, indent=2))
    elif args.format == "text":
        for i, cfg in enumerate(game.configs):
            targets = ", ".join(describe_config(game.configs[j], lts) for j in game.moves[i])
            print(f"{describe_config(cfg, lts)} -> {targets or '(stuck)'}")
    else:
        print(render_game_dot(game), end="")
    return OK


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    counts: dict[str, int] = {}
    for k in range(args.count):
        lts = None
        try:
            from .randgen import random_lts
            lts = random_lts(rng, max_states=args.max_states,
                             max_labels=args.max_labels, tau_prob=args.tau_prob)
            for prop, failure in instance_failures(lts, args.kind):
                if failure:
                    print(f"FAIL {prop} on instance {k}: {failure}", file=sys.stderr)
                    print(write_aut(lts), file=sys.stderr, end="")
                    return BUG
                counts[prop] = counts.get(prop, 0) + 1
        except Exception as e:  # noqa: BLE001 - counterexample reporting
            print(f"ERROR on instance {k}: {e}", file=sys.stderr)
            if lts is not None:
                print(write_aut(lts), file=sys.stderr, end="")
            return BUG
    for prop in sorted(counts):
        print(f"{prop}: {counts[prop]}/{args.count} passed")
    return OK


def cmd_serve(args) -> int:
    import os

    import uvicorn

    from .service import create_app

    ui_dir = args.ui
    if ui_dir is None and os.path.isfile(os.path.join("frontend", "index.html")):
        ui_dir = "frontend"
    uvicorn.run(create_app(ui_dir=ui_dir), host=args.host, port=args.port,
                log_level="warning")
    return OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bisimgames",
        description="Decide strong and branching bisimilarity via games and "
                    "produce checkable apartness proofs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tau-labels", default="tau,i",
                        help="comma-separated label spellings treated as the "
                             "silent action (first is canonical)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_lts(p, pair_required=False, pair_optional=False):
        p.add_argument("lts", help=f".aut file or builtin name {sorted(fixtures.BUILTIN)}")
        if pair_required:
            p.add_argument("x", help="first state name")
            p.add_argument("y", help="second state name")
        elif pair_optional:
            p.add_argument("x", nargs="?", default=None, help="first state name")
            p.add_argument("y", nargs="?", default=None, help="second state name")
        p.add_argument("--kind", choices=[STRONG, BRANCHING], default=STRONG)

    p = sub.add_parser("check", parents=[common],
                       help="verify duality, game agreement and determinacy")
    add_lts(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[common], help="winning regions and ranks")
    add_lts(p, pair_optional=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("prove", parents=[common],
                       help="minimal apartness proof for a pair")
    add_lts(p, pair_required=True)
    p.add_argument("--format", choices=["text", "dot", "json"], default="text")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("game", parents=[common], help="emit the game graph")
    add_lts(p, pair_optional=True)
    p.add_argument("--format", choices=["dot", "json", "text"], default="dot")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("selftest", help="randomised invariant harness")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-states", type=int, default=7)
    p.add_argument("--max-labels", type=int, default=3)
    p.add_argument("--tau-prob", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--kind", choices=[STRONG, BRANCHING], default=STRONG)
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("serve", help="run the interactive session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui", default=None,
                   help="directory with the built web client to host at / "
                        "(default: ./frontend when present)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    if getattr(args, "x", None) is not None and getattr(args, "y", None) is None:
        print("error: a pair needs two state names", file=sys.stderr)
        return INPUT_ERROR
    try:
        return args.func(args)
    except (LtsError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
