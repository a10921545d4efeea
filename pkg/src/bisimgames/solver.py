"""Winning regions, ranks and positional strategies for bisimulation games.

The challenger's winning region is a least fixed point and is computed by
a worklist attractor over reverse edges with per-reply countdown counters.
One challenger round is a challenge move in the strong game, and a
challenge/reply/split block in the branching game; the rank of a
configuration is the round of the attractor at which it joins the
challenger's region, i.e. the number of challenge rounds still needed to
leave the mimic stuck. Pair configurations therefore carry ranks >= 1
(rank 1: one challenge without any reply), replies carry the maximum rank
of their successors (0 when stuck) and split configurations the minimum.

Infinite plays need no machinery of their own: a configuration on a cycle
the mimic can steer into never enters the attractor, which is exactly the
"infinite plays favour the mimic" winning condition, made finite by the
finiteness of the configuration set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .games import (DUPLICATOR, SPOILER, DuplicatorChallenge, GameGraph,
                    SpoilerPair, SpoilerQuint, owner)


class StrategyError(KeyError):
    """A play reached a configuration the fixed strategy does not cover."""


@dataclass(frozen=True)
class Strategy:
    """A positional strategy: one chosen successor per owned configuration."""
    player: str
    moves: dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class Solution:
    """Regions, ranks and extracted strategies of a solved game.

    ``rank`` is defined exactly on the challenger region; both strategies
    are partial, defined on their owner's configurations inside that
    owner's winning region.
    """
    spoiler_region: frozenset[int]
    duplicator_region: frozenset[int]
    rank: dict[int, int]
    spoiler_strategy: Strategy
    duplicator_strategy: Strategy


def solve(game: GameGraph) -> Solution:
    """Solve the game: attractor rounds with exact per-round ranks.

    Round ``n + 1`` adds every pair with a challenge into the already-good
    reply set; the zero-cost closure inside a round lets split
    configurations and fully-covered replies catch up without consuming a
    round. Stuck replies seed the attractor at round zero.
    """
    n = len(game.configs)
    preds = game.predecessors()
    pending = [0] * n
    rank: dict[int, int] = {}
    in_ws = [False] * n

    newly_good: list[int] = []
    for i, cfg in enumerate(game.configs):
        if isinstance(cfg, DuplicatorChallenge):
            pending[i] = len(game.moves[i])
            if pending[i] == 0:
                in_ws[i] = True
                rank[i] = 0
                newly_good.append(i)

    rounds = 0
    while newly_good:
        rounds += 1
        entered_pairs = []
        for d in newly_good:
            for p in preds[d]:
                if isinstance(game.configs[p], SpoilerPair) and not in_ws[p]:
                    in_ws[p] = True
                    rank[p] = rounds
                    entered_pairs.append(p)
        newly_good = []
        stack = list(entered_pairs)
        while stack:
            c = stack.pop()
            for p in preds[c]:
                cfg = game.configs[p]
                if isinstance(cfg, SpoilerQuint):
                    if not in_ws[p]:
                        in_ws[p] = True
                        rank[p] = rounds
                        stack.append(p)
                elif isinstance(cfg, DuplicatorChallenge):
                    pending[p] -= 1
                    if pending[p] == 0:
                        in_ws[p] = True
                        rank[p] = rounds
                        newly_good.append(p)

    spoiler_region = frozenset(i for i in range(n) if in_ws[i])
    duplicator_region = frozenset(i for i in range(n) if not in_ws[i])

    spoiler_moves: dict[int, int] = {}
    for i in spoiler_region:
        if owner(game.configs[i]) != SPOILER:
            continue
        best = min((rank[j], j) for j in game.moves[i] if in_ws[j])
        spoiler_moves[i] = best[1]

    duplicator_moves: dict[int, int] = {}
    for i in duplicator_region:
        if owner(game.configs[i]) != DUPLICATOR:
            continue
        duplicator_moves[i] = min(j for j in game.moves[i] if not in_ws[j])

    return Solution(
        spoiler_region=spoiler_region,
        duplicator_region=duplicator_region,
        rank=rank,
        spoiler_strategy=Strategy(SPOILER, spoiler_moves),
        duplicator_strategy=Strategy(DUPLICATOR, duplicator_moves),
    )


def check_determinacy(game: GameGraph, sol: Solution) -> bool:
    """True iff the two regions partition the configuration set."""
    if sol.spoiler_region & sol.duplicator_region:
        return False
    return sol.spoiler_region | sol.duplicator_region == frozenset(range(len(game.configs)))


@dataclass(frozen=True)
class Play:
    """A maximal play: its configuration indices, the winner, and whether
    it was cut off at the round bound (counted as a win for the mimic)."""
    configs: tuple[int, ...]
    winner: str
    cut_off: bool = False


def enumerate_plays(game: GameGraph, strategy: Strategy, root: int,
                    round_bound: int) -> list[Play]:
    """All maximal plays from ``root`` consistent with the fixed strategy.

    The strategy owner always follows the strategy; the other player
    branches over every move. A play still running at a pair after
    ``round_bound`` challenge rounds is cut off and classified as won by
    the mimic, which is sound for any positional strategy once the bound
    exceeds the configuration count (a longer play revisits a
    configuration and extends to an infinite play).
    """
    if round_bound < 1:
        raise ValueError("round_bound must be at least 1")
    if not isinstance(game.configs[root], SpoilerPair):
        raise ValueError("plays are enumerated from pair configurations")

    out: list[Play] = []

    def walk(i: int, trail: list[int], rounds: int):
        cfg = game.configs[i]
        succ = game.moves[i]
        if not succ:
            winner = SPOILER if owner(cfg) == DUPLICATOR else DUPLICATOR
            out.append(Play(tuple(trail), winner))
            return
        if isinstance(cfg, SpoilerPair):
            if rounds >= round_bound:
                out.append(Play(tuple(trail), DUPLICATOR, cut_off=True))
                return
            rounds += 1
        if owner(cfg) == strategy.player:
            if i not in strategy.moves:
                raise StrategyError(f"strategy has no move at configuration {i}")
            nxt = (strategy.moves[i],)
        else:
            nxt = succ
        for j in nxt:
            walk(j, trail + [j], rounds)

    walk(root, [root], 0)
    return out
