"""Bisimulation games, apartness proofs and winning strategies.

A workbench for deciding strong and branching bisimilarity of finite
labelled transition systems through two-player games. Challenger winning
strategies convert to machine-checkable apartness proof trees and back,
and a session service lets a human play either role against the optimal
engine.
"""

from .apartness import (Relation, RelationWithLevels, apartness, bisimilarity,
                        branching_apartness, branching_bisimilarity,
                        strong_apartness, strong_bisimilarity)
from .games import (BRANCHING, DUPLICATOR, SPOILER, STRONG, Config,
                    DuplicatorChallenge, GameGraph, SpoilerPair, SpoilerQuint,
                    build_branching_game, build_strong_game, owner)
from .lts import (Lts, LtsError, ParseError, make_lts, parse_aut, validate,
                  write_aut)
from .proofs import (CheckResult, NotApartError, ProofGameMismatchError,
                     RuleNode, Subgoal, SymNode, build_proof, check_proof,
                     depth, proof_from_json, proof_to_json, proof_to_strategy,
                     strategy_to_proof)
from .solver import (Play, Solution, Strategy, StrategyError,
                     check_determinacy, enumerate_plays, solve)

__version__ = "0.1.0"

__all__ = [
    "BRANCHING", "DUPLICATOR", "SPOILER", "STRONG",
    "CheckResult", "Config", "DuplicatorChallenge", "GameGraph", "Lts",
    "LtsError", "NotApartError", "ParseError", "Play",
    "ProofGameMismatchError", "Relation", "RelationWithLevels", "RuleNode",
    "Solution", "SpoilerPair", "SpoilerQuint", "Strategy", "StrategyError",
    "Subgoal", "SymNode",
    "apartness", "bisimilarity", "branching_apartness",
    "branching_bisimilarity", "build_branching_game", "build_proof",
    "build_strong_game", "check_determinacy", "check_proof", "depth",
    "enumerate_plays", "make_lts", "owner", "parse_aut", "proof_from_json",
    "proof_to_json", "proof_to_strategy", "solve", "strategy_to_proof",
    "strong_apartness", "strong_bisimilarity", "validate", "write_aut",
]
