"""Apartness proof trees: construction, checking, and the two-way
conversion between proofs and challenger winning strategies.

A proof is a finite tree. A rule node applies the apartness rule at a
pair ``(x, y)`` with a challenge transition ``x --label--> x_new`` and
one subgoal per possible reply: in the strong system the subgoal proves
``(x_new, y_new)`` apart for each reply target ``y_new``; in the
branching system each reply is a ``(y_mid, y_new)`` answer and the
subgoal proves either ``(x, y_mid)`` or ``(x_new, y_new)`` apart, with
the chosen disjunct recorded. A rule node with no replies is a leaf: the
universally quantified premise holds vacuously. A symmetry node concludes
``(x, y)`` from a proof of ``(y, x)`` and is never stacked directly on
another symmetry node.

The minimal depth of a proof of a pair equals both the level at which the
pair enters the apartness fixed point and the rank of the matching pair
configuration in the solved game; ``build_proof`` and
``strategy_to_proof`` each attain it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .apartness import RelationWithLevels, apartness
from .games import (BRANCHING, SPOILER, STRONG, DuplicatorChallenge,
                    GameGraph, SpoilerPair, SpoilerQuint)
from .lts import Lts, Label, StateId
from .solver import Solution, Strategy


class NotApartError(ValueError):
    """Asked for a difference proof of a pair that is not apart."""


class ProofGameMismatchError(ValueError):
    """A proof refers to configurations the given game does not contain."""


@dataclass(frozen=True)
class Subgoal:
    """One reply obligation of a rule node.

    Strong: ``y_new`` is the reply target, ``y_mid`` and ``disjunct`` are
    ``None`` and ``proof`` concludes ``(x_new, y_new)``. Branching: the
    answer is ``(y_mid, y_new)`` and ``proof`` concludes ``(x, y_mid)``
    when ``disjunct`` is 1, ``(x_new, y_new)`` when it is 2.
    """
    y_new: StateId
    proof: "ProofNode"
    y_mid: StateId | None = None
    disjunct: int | None = None


@dataclass(frozen=True)
class RuleNode:
    x: StateId
    y: StateId
    label: Label
    x_new: StateId
    subgoals: tuple[Subgoal, ...]


@dataclass(frozen=True)
class SymNode:
    x: StateId
    y: StateId
    child: "ProofNode"


ProofNode = Union[RuleNode, SymNode]


def conclusion(node: ProofNode) -> tuple[StateId, StateId]:
    return (node.x, node.y)


def depth(node: ProofNode) -> int:
    """Rule nodes on the longest root-to-leaf path; symmetry nodes are free."""
    if isinstance(node, SymNode):
        return depth(node.child)
    return 1 + max((depth(sg.proof) for sg in node.subgoals), default=0)


@dataclass
class CheckResult:
    valid: bool
    failures: list[tuple[str, str]]


# ---------------------------------------------------------------------------
# proof construction from the fixed point

def _rule_node(lts: Lts, kind: str, x: StateId, y: StateId,
               rel: RelationWithLevels, build) -> RuleNode | None:
    """A rule node for (x, y) using a challenge from x, or None.

    Challenges are tried in (label, target) order; one is usable when
    every reply has a subgoal pair of strictly smaller level, which keeps
    the resulting proof depth equal to the level of (x, y).
    """
    bound = rel.level[(x, y)]
    for lab, x_new in lts.transitions_from(x):
        if kind == STRONG:
            replies = sorted(lts.successors(y, lab))
            if all(rel.level.get((x_new, y_new), bound) < bound for y_new in replies):
                subgoals = tuple(
                    Subgoal(y_new=y_new, proof=build(x_new, y_new))
                    for y_new in replies)
                return RuleNode(x, y, lab, x_new, subgoals)
        else:
            answers = sorted(lts.branching_answers(y, lab))
            choices = []
            for y_mid, y_new in answers:
                first = rel.level.get((x, y_mid))
                second = rel.level.get((x_new, y_new))
                # prefer the smaller level; ties go to the first disjunct
                best = None
                if first is not None and first < bound:
                    best = (first, 1, y_mid, y_new)
                if second is not None and second < bound and (best is None or second < best[0]):
                    best = (second, 2, y_mid, y_new)
                if best is None:
                    break
                choices.append(best)
            else:
                subgoals = tuple(
                    Subgoal(y_new=y_new, y_mid=y_mid, disjunct=d,
                            proof=build(x, y_mid) if d == 1 else build(x_new, y_new))
                    for _, d, y_mid, y_new in choices)
                return RuleNode(x, y, lab, x_new, subgoals)
    return None


def build_proof(lts: Lts, kind: str, x: StateId, y: StateId,
                relation: RelationWithLevels | None = None) -> ProofNode:
    """A minimal-depth proof that ``(x, y)`` are apart.

    Descends the levels of the fixed point; challenges from the first
    component are preferred and a symmetry node is inserted only when the
    usable challenge comes from the second. Raises :class:`NotApartError`
    for pairs outside the relation.
    """
    rel = relation if relation is not None else apartness(lts, kind)

    def build(a: StateId, b: StateId) -> ProofNode:
        if (a, b) not in rel.pairs:
            raise NotApartError(
                f"pair ({lts.state_name(a)}, {lts.state_name(b)}) is not apart")
        node = _rule_node(lts, kind, a, b, rel, build)
        if node is not None:
            return node
        flipped = _rule_node(lts, kind, b, a, rel, build)
        if flipped is None:
            raise AssertionError("level bookkeeping broken: no usable challenge")
        return SymNode(a, b, flipped)

    return build(x, y)


# ---------------------------------------------------------------------------
# proof checking

def check_proof(lts: Lts, kind: str, proof: ProofNode) -> CheckResult:
    """Validate a proof tree against the transition system.

    Every rule node must challenge with a real transition and carry
    exactly one subgoal per reply of the responder (none missing, none
    extra), each subgoal's child must conclude the pair the recorded
    disjunct demands, and symmetry nodes must invert the pair without
    stacking. All failures are collected with their tree path.
    """
    failures: list[tuple[str, str]] = []
    nm = lts.state_name

    def visit(node: ProofNode, path: str, under_sym: bool):
        if isinstance(node, SymNode):
            if under_sym:
                failures.append((path, "symmetry node directly under a symmetry node"))
            if conclusion(node.child) != (node.y, node.x):
                failures.append((path, "symmetry child does not invert the pair"))
            visit(node.child, path + "/sym", True)
            return
        if (node.x, node.label, node.x_new) not in lts.transitions:
            failures.append((path, f"challenge {nm(node.x)} -{node.label}-> "
                                   f"{nm(node.x_new)} is not a transition"))
            return
        if kind == STRONG:
            expected = {y_new for y_new in lts.successors(node.y, node.label)}
            got = [sg.y_new for sg in node.subgoals]
            for sg in node.subgoals:
                if sg.y_mid is not None or sg.disjunct is not None:
                    failures.append((path, "strong subgoal carries branching fields"))
            for y_new in sorted(expected - set(got)):
                failures.append((path, f"missing reply {nm(y_new)}"))
            for y_new in sorted(set(got) - expected):
                failures.append((path, f"extra reply {nm(y_new)}"))
            if len(got) != len(set(got)):
                failures.append((path, "duplicate reply subgoal"))
            for k, sg in enumerate(node.subgoals):
                want = (node.x_new, sg.y_new)
                if conclusion(sg.proof) != want:
                    failures.append((f"{path}/{k}",
                                     f"subgoal must conclude ({nm(want[0])}, {nm(want[1])})"))
                else:
                    visit(sg.proof, f"{path}/{k}", False)
        else:
            expected = set(lts.branching_answers(node.y, node.label))
            got = [(sg.y_mid, sg.y_new) for sg in node.subgoals]
            if any(mid is None for mid, _ in got):
                failures.append((path, "branching subgoal lacks the middle state"))
                got = [(mid, new) for mid, new in got if mid is not None]
            for mid, new in sorted(expected - set(got)):
                failures.append((path, f"missing answer ({nm(mid)}, {nm(new)})"))
            for mid, new in sorted(set(got) - expected):
                failures.append((path, f"extra answer ({nm(mid)}, {nm(new)})"))
            if len(got) != len(set(got)):
                failures.append((path, "duplicate answer subgoal"))
            for k, sg in enumerate(node.subgoals):
                if sg.disjunct not in (1, 2):
                    failures.append((f"{path}/{k}", "branching subgoal must record disjunct 1 or 2"))
                    continue
                if sg.y_mid is None:
                    continue
                want = (node.x, sg.y_mid) if sg.disjunct == 1 else (node.x_new, sg.y_new)
                if conclusion(sg.proof) != want:
                    failures.append((f"{path}/{k}",
                                     f"subgoal must conclude ({nm(want[0])}, {nm(want[1])})"))
                else:
                    visit(sg.proof, f"{path}/{k}", False)

    visit(proof, "", False)
    return CheckResult(valid=not failures, failures=failures)


# ---------------------------------------------------------------------------
# strategy -> proof

def strategy_to_proof(game: GameGraph, sol: Solution, root) -> ProofNode:
    """Unfold the challenger's winning strategy from a winning pair into a
    proof tree; its depth equals the rank of the root.

    The strategy's challenge becomes the rule node (wrapped in a symmetry
    node when it challenges from the second component), every reply
    becomes one subgoal, and in the branching game the strategy's split
    move at the resulting five-state configuration selects the disjunct.
    """
    if isinstance(root, SpoilerPair):
        root_idx = game.index_of(root)
    else:
        root_idx = int(root)
    if root_idx not in sol.spoiler_region:
        cfg = game.configs[root_idx]
        raise NotApartError(
            f"configuration {cfg} is won by the mimic; nothing to prove")

    def build(i: int) -> ProofNode:
        pair = game.configs[i]
        chal_idx = sol.spoiler_strategy.moves[i]
        chal = game.configs[chal_idx]
        subgoals = []
        for j in sorted(game.moves[chal_idx], key=lambda j: _answer_key(game.configs[j])):
            reached = game.configs[j]
            if game.kind == STRONG:
                subgoals.append(Subgoal(y_new=reached.y, proof=build(j)))
            else:
                split_idx = sol.spoiler_strategy.moves[j]
                target = game.configs[split_idx]
                if target == SpoilerPair(reached.x, reached.y_mid):
                    disjunct = 1
                else:
                    disjunct = 2
                subgoals.append(Subgoal(y_new=reached.y_new, y_mid=reached.y_mid,
                                        disjunct=disjunct, proof=build(split_idx)))
        node = RuleNode(chal.x, chal.y, chal.label, chal.x_new, tuple(subgoals))
        if chal.x == pair.x:
            return node
        return SymNode(pair.x, pair.y, node)

    return build(root_idx)


def _answer_key(cfg):
    if isinstance(cfg, SpoilerPair):
        return (cfg.y,)
    return (cfg.y_mid, cfg.y_new)


# ---------------------------------------------------------------------------
# proof -> strategy

def proof_to_strategy(proof: ProofNode, game: GameGraph) -> Strategy:
    """Read a challenger strategy off a valid proof tree.

    Each rule node fixes the challenge move of the pair configuration it
    concludes, and (branching) the split move of every reached five-state
    configuration per the recorded disjunct. When two branches would
    assign different moves to one configuration, the assignment from the
    branch with the smaller remaining proof depth wins, which keeps the
    strategy rank-decreasing and hence winning from the proof's root.
    """
    moves: dict[int, int] = {}
    assigned_depth: dict[int, int] = {}

    def assign(i: int, j: int, d: int):
        if i in moves and assigned_depth[i] <= d:
            return
        moves[i] = j
        assigned_depth[i] = d

    def lookup(cfg) -> int:
        try:
            return game.index_of(cfg)
        except KeyError:
            raise ProofGameMismatchError(
                f"proof configuration {cfg} does not occur in the game") from None

    def visit(node: ProofNode, pair: tuple[StateId, StateId]):
        if isinstance(node, SymNode):
            visit(node.child, pair)
            return
        if (node.x, node.y) != pair and (node.y, node.x) != pair:
            raise ProofGameMismatchError(
                f"rule node for {(node.x, node.y)} reached at pair {pair}")
        d = depth(node)
        pair_idx = lookup(SpoilerPair(*pair))
        chal_idx = lookup(DuplicatorChallenge(node.x, node.label, node.x_new, node.y))
        if chal_idx not in game.moves[pair_idx]:
            raise ProofGameMismatchError(
                f"challenge {game.configs[chal_idx]} is not a move of {game.configs[pair_idx]}")
        assign(pair_idx, chal_idx, d)
        for sg in node.subgoals:
            if game.kind == STRONG:
                visit(sg.proof, (node.x_new, sg.y_new))
            else:
                quint = SpoilerQuint(node.x, node.x_new, node.y, sg.y_mid, sg.y_new)
                quint_idx = lookup(quint)
                nxt = ((node.x, sg.y_mid) if sg.disjunct == 1
                       else (node.x_new, sg.y_new))
                assign(quint_idx, lookup(SpoilerPair(*nxt)), depth(sg.proof))
                visit(sg.proof, nxt)

    visit(proof, conclusion(proof))
    return Strategy(SPOILER, moves)


# ---------------------------------------------------------------------------
# JSON wire format (shared with the web UI)

def proof_to_json(proof: ProofNode, lts: Lts) -> dict:
    nm = lts.state_name
    if isinstance(proof, SymNode):
        return {"kind": "sym", "x": nm(proof.x), "y": nm(proof.y),
                "child": proof_to_json(proof.child, lts)}
    subgoals = []
    for sg in proof.subgoals:
        doc = {"y_new": nm(sg.y_new), "proof": proof_to_json(sg.proof, lts)}
        if sg.y_mid is not None:
            doc["y_mid"] = nm(sg.y_mid)
            doc["disjunct"] = sg.disjunct
        subgoals.append(doc)
    return {"kind": "rule", "x": nm(proof.x), "y": nm(proof.y),
            "label": proof.label, "x_new": nm(proof.x_new), "subgoals": subgoals}


def proof_from_json(doc: dict, lts: Lts) -> ProofNode:
    ix = lts.state_index
    kind = doc.get("kind")
    if kind == "sym":
        return SymNode(ix(doc["x"]), ix(doc["y"]), proof_from_json(doc["child"], lts))
    if kind != "rule":
        raise ValueError(f"unknown proof node kind {kind!r}")
    subgoals = []
    for sg in doc.get("subgoals", []):
        subgoals.append(Subgoal(
            y_new=ix(sg["y_new"]),
            proof=proof_from_json(sg["proof"], lts),
            y_mid=ix(sg["y_mid"]) if "y_mid" in sg else None,
            disjunct=sg.get("disjunct"),
        ))
    return RuleNode(ix(doc["x"]), ix(doc["y"]), doc["label"], ix(doc["x_new"]),
                    tuple(subgoals))
