"""Cross-checks between the independent routes of the workbench.

Apartness levels (rule iteration), game ranks (attractor) and proof depth
(tree construction) are three separately implemented views of the same
quantity; the battery here confronts them pairwise on a given system, on
top of structural and fixed-point sanity checks. The CLI self-test and
the acceptance suite both run it.
"""

from __future__ import annotations

import random

from .apartness import apartness, bisimilarity
from .games import (BRANCHING, STRONG, DuplicatorChallenge, GameGraph,
                    SpoilerPair, SpoilerQuint, all_pairs, build_branching_game,
                    build_strong_game, check_structure, owner, SPOILER, DUPLICATOR)
from .lts import Lts, parse_aut, write_aut
from .proofs import (build_proof, check_proof, depth, proof_to_strategy,
                     strategy_to_proof)
from .solver import Solution, check_determinacy, enumerate_plays, solve

INF = float("inf")


def naive_ranks(game: GameGraph) -> dict[int, float]:
    """Reference ranks by value iteration over the raw move relation;
    deliberately independent of the attractor in the solver."""
    n = len(game.configs)
    rank = [INF] * n
    changed = True
    while changed:
        changed = False
        for i, cfg in enumerate(game.configs):
            succ = game.moves[i]
            if isinstance(cfg, SpoilerPair):
                v = min((rank[j] + 1 for j in succ), default=INF)
            elif isinstance(cfg, SpoilerQuint):
                v = min((rank[j] for j in succ), default=INF)
            else:
                v = max((rank[j] for j in succ), default=0)
            if v < rank[i]:
                rank[i] = v
                changed = True
    return {i: rank[i] for i in range(n)}


def fixed_point_failures(game: GameGraph, sol: Solution) -> list[str]:
    """Post-checks of both fixed-point characterisations of the regions.

    The challenger region must contain exactly the attracted
    configurations (some winning move for challenger-owned ones, all
    moves winning, vacuously included, for mimic-owned ones); since the
    safe region is the complement, this simultaneously checks that the
    mimic always keeps a safe move outside the attractor.
    """
    bad = []
    in_ws = sol.spoiler_region
    for i, cfg in enumerate(game.configs):
        succ = game.moves[i]
        if owner(cfg) == SPOILER:
            attracted = any(j in in_ws for j in succ)
        else:
            attracted = all(j in in_ws for j in succ)
        if attracted and i not in in_ws:
            bad.append(f"closure broken: configuration {i} attracted but outside the region")
        if i in in_ws and not attracted:
            bad.append(f"region not closed from below at configuration {i}")
    return bad


def solution_failures(game: GameGraph, sol: Solution) -> list[str]:
    bad = []
    if not check_determinacy(game, sol):
        bad.append("regions do not partition the configurations")
    ref = naive_ranks(game)
    for i in range(len(game.configs)):
        mine = sol.rank.get(i, INF)
        if mine != ref[i]:
            bad.append(f"rank mismatch at configuration {i}: {mine} vs reference {ref[i]}")
    bad.extend(fixed_point_failures(game, sol))
    for i, j in sol.spoiler_strategy.moves.items():
        if j not in game.moves[i] or j not in sol.spoiler_region:
            bad.append(f"challenger strategy leaves the winning region at {i}")
    for i, j in sol.duplicator_strategy.moves.items():
        if j not in game.moves[i] or j in sol.spoiler_region:
            bad.append(f"mimic strategy leaves the safe region at {i}")
    return bad


def instance_failures(lts: Lts, kind: str, max_play_pairs: int | None = None
                      ) -> list[tuple[str, str | None]]:
    """Run the full battery on one system.

    Returns one ``(property, failure-or-None)`` entry per property, so
    callers can both count passes and stop at the first counterexample.
    ``max_play_pairs`` caps how many apart pairs get the full proof and
    play round-trip (None: all of them).
    """
    results: list[tuple[str, str | None]] = []
    n = lts.n_states
    square = frozenset((x, y) for x in range(n) for y in range(n))

    rel = apartness(lts, kind)
    bis = bisimilarity(lts, kind)
    build = build_strong_game if kind == STRONG else build_branching_game
    game = build(lts, all_pairs(lts))
    sol = solve(game)

    def record(prop: str, failure: str | None):
        results.append((prop, failure))

    refl = sorted((x, y) for (x, y) in rel.pairs if x == y)
    record("apartness_irreflexive",
           None if not refl else f"diagonal pair {refl[0]} apart")

    asym = sorted(p for p in rel.pairs if (p[1], p[0]) not in rel.pairs)
    record("apartness_symmetric",
           None if not asym else f"pair {asym[0]} apart without its mirror")
    lvl_asym = sorted(p for p in rel.pairs
                      if rel.level[p] != rel.level[(p[1], p[0])])
    record("levels_symmetric",
           None if not lvl_asym else f"pair {lvl_asym[0]} has asymmetric level")

    record("lfp_sweep_bound",
           None if not rel.level or max(rel.level.values()) <= n * n
           else f"stabilisation took {max(rel.level.values())} sweeps")

    record("duality",
           None if rel.pairs == square - bis.pairs
           else "apartness is not the complement of bisimilarity")

    record("structure", "; ".join(check_structure(game)) or None)

    fails = solution_failures(game, sol)
    record("solution", "; ".join(fails) or None)

    agree = None
    for x, y in square:
        i = game.index_of(SpoilerPair(x, y))
        if ((x, y) in rel.pairs) != (i in sol.spoiler_region):
            agree = f"pair {(x, y)}: apartness and winning region disagree"
            break
        if ((x, y) in bis.pairs) != (i in sol.duplicator_region):
            agree = f"pair {(x, y)}: bisimilarity and safe region disagree"
            break
    record("game_agreement", agree)

    rank_level = None
    for (x, y), lv in rel.level.items():
        i = game.index_of(SpoilerPair(x, y))
        if sol.rank.get(i) != lv:
            rank_level = f"pair {(x, y)}: level {lv} but rank {sol.rank.get(i)}"
            break
    record("rank_equals_level", rank_level)

    if kind == BRANCHING:
        tau_stuck = None
        if lts.tau is not None:
            for i, cfg in enumerate(game.configs):
                if (isinstance(cfg, DuplicatorChallenge) and cfg.label == lts.tau
                        and not game.moves[i]):
                    tau_stuck = f"silent challenge {i} leaves the mimic stuck"
                    break
        record("tau_idling", tau_stuck)

    roundtrip = None
    apart_pairs = sorted(rel.pairs)
    if max_play_pairs is not None:
        apart_pairs = apart_pairs[:max_play_pairs]
    for x, y in apart_pairs:
        i = game.index_of(SpoilerPair(x, y))
        r = sol.rank[i]
        proof = strategy_to_proof(game, sol, i)
        res = check_proof(lts, kind, proof)
        if not res.valid:
            roundtrip = f"strategy proof for {(x, y)} invalid: {res.failures[0]}"
            break
        if depth(proof) != r or r != rel.level[(x, y)]:
            roundtrip = (f"pair {(x, y)}: depth {depth(proof)}, rank {r}, "
                         f"level {rel.level[(x, y)]} differ")
            break
        direct = build_proof(lts, kind, x, y, relation=rel)
        res2 = check_proof(lts, kind, direct)
        if not res2.valid or depth(direct) != rel.level[(x, y)]:
            roundtrip = f"direct proof for {(x, y)} invalid or not minimal"
            break
        strat = proof_to_strategy(proof, game)
        plays = enumerate_plays(game, strat, i, round_bound=r)
        if any(p.winner != SPOILER or p.cut_off for p in plays):
            roundtrip = f"pair {(x, y)}: extracted strategy does not win in {r} rounds"
            break
    record("proof_roundtrip", roundtrip)

    # exhaustive play enumeration against the mimic strategy explodes on
    # dense games (the challenger branches over everything), so the battery
    # samples challenger lines instead; the fixture tests keep the
    # exhaustive version where the game is small
    safety = None
    safe_roots = [i for i in game.roots if i in sol.duplicator_region][:6]
    rng = random.Random(len(game.configs))
    for i in safe_roots:
        for _ in range(20):
            cur, rounds = i, 0
            while rounds <= len(game.configs):
                succ = game.moves[cur]
                if not succ:
                    if owner(game.configs[cur]) == DUPLICATOR:
                        safety = f"mimic strategy got stuck in a play from root {i}"
                    break
                if owner(game.configs[cur]) == DUPLICATOR:
                    cur = sol.duplicator_strategy.moves[cur]
                else:
                    if isinstance(game.configs[cur], SpoilerPair):
                        rounds += 1
                    cur = rng.choice(succ)
            if safety:
                break
        if safety:
            break
    record("mimic_safety", safety)

    record("aut_roundtrip",
           None if parse_aut(write_aut(lts)) == lts else "serialisation round-trip differs")

    return results
