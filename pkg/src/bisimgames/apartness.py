"""Apartness and bisimilarity as fixed points on state pairs.

Apartness is the least symmetric relation closed under the unmatchable-
challenge rule; it is computed bottom-up with level-synchronous sweeps so
every pair carries the iteration at which it first became derivable.
Bisimilarity is the greatest symmetric relation satisfying the transfer
clause, computed by refining the full square downwards. On any finite
system the two are complements of each other, which the test-suite and
the self-test harness verify pair by pair.
"""

from __future__ import annotations

from dataclasses import dataclass

from .games import BRANCHING, STRONG
from .lts import Lts, StateId


@dataclass(frozen=True)
class Relation:
    """A symmetric set of ordered state pairs."""
    kind: str
    pairs: frozenset[tuple[StateId, StateId]]

    def __contains__(self, pair: tuple[StateId, StateId]) -> bool:
        return pair in self.pairs


@dataclass(frozen=True)
class RelationWithLevels:
    """A least fixed point together with its derivation levels.

    ``level[(x, y)]`` is the first sweep at which the pair entered the
    relation; it is symmetric and equals the minimal depth of a
    derivation of the pair (and the game rank of the matching pair
    configuration).
    """
    kind: str
    pairs: frozenset[tuple[StateId, StateId]]
    level: dict[tuple[StateId, StateId], int]

    def __contains__(self, pair: tuple[StateId, StateId]) -> bool:
        return pair in self.pairs

    def level_of(self, x: StateId, y: StateId) -> int:
        return self.level[(x, y)]


def _strong_rule_fires(lts: Lts, x: StateId, y: StateId, prev) -> bool:
    for lab, x_new in lts.transitions_from(x):
        if all((x_new, y_new) in prev for y_new in lts.successors(y, lab)):
            return True
    return False


def _branching_rule_fires(lts: Lts, x: StateId, y: StateId, prev) -> bool:
    for lab, x_new in lts.transitions_from(x):
        if all((x, y_mid) in prev or (x_new, y_new) in prev
               for y_mid, y_new in lts.branching_answers(y, lab)):
            return True
    return False


def _least_fixed_point(lts: Lts, kind: str, fires) -> RelationWithLevels:
    # Level-synchronous (Jacobi) sweeps: each sweep evaluates the rule
    # against the previous iterate only, so levels match the stratification
    # of the fixed point. Symmetry is baked in by trying both orientations.
    states = range(lts.n_states)
    pairs: set[tuple[int, int]] = set()
    level: dict[tuple[int, int], int] = {}
    sweep = 0
    while True:
        sweep += 1
        prev = frozenset(pairs)
        added = []
        for x in states:
            for y in states:
                if (x, y) in pairs:
                    continue
                if fires(lts, x, y, prev) or fires(lts, y, x, prev):
                    added.append((x, y))
        if not added:
            break
        for p in added:
            pairs.add(p)
            level[p] = sweep
    return RelationWithLevels(kind=kind, pairs=frozenset(pairs), level=level)


def strong_apartness(lts: Lts) -> RelationWithLevels:
    """Least symmetric relation closed under: some transition of one state
    has all equally-labelled replies of the other leading to related
    targets. Stabilises within ``n*n`` sweeps."""
    return _least_fixed_point(lts, STRONG, _strong_rule_fires)


def branching_apartness(lts: Lts) -> RelationWithLevels:
    """Branching variant: replies are silent-prefixed optional steps and
    each reply is beaten by relating either its pre- or post-state."""
    return _least_fixed_point(lts, BRANCHING, _branching_rule_fires)


def _strong_transfer_holds(lts: Lts, x: StateId, y: StateId, rel) -> bool:
    for lab, x_new in lts.transitions_from(x):
        if not any((x_new, y_new) in rel for y_new in lts.successors(y, lab)):
            return False
    return True


def _branching_transfer_holds(lts: Lts, x: StateId, y: StateId, rel) -> bool:
    for lab, x_new in lts.transitions_from(x):
        if not any((x, y_mid) in rel and (x_new, y_new) in rel
                   for y_mid, y_new in lts.branching_answers(y, lab)):
            return False
    return True


def _greatest_fixed_point(lts: Lts, kind: str, holds) -> Relation:
    states = range(lts.n_states)
    rel = {(x, y) for x in states for y in states}
    while True:
        # symmetry: a pair survives only if the clause holds both ways
        doomed = [(x, y) for (x, y) in rel
                  if not (holds(lts, x, y, rel) and holds(lts, y, x, rel))]
        if not doomed:
            return Relation(kind=kind, pairs=frozenset(rel))
        rel.difference_update(doomed)


def strong_bisimilarity(lts: Lts) -> Relation:
    """Greatest symmetric relation whose pairs match every transition with
    an equally-labelled transition into related targets."""
    return _greatest_fixed_point(lts, STRONG, _strong_transfer_holds)


def branching_bisimilarity(lts: Lts) -> Relation:
    """Greatest symmetric relation matching moves up to silent prefixes,
    with both the pre- and post-state of the reply related."""
    return _greatest_fixed_point(lts, BRANCHING, _branching_transfer_holds)


def apartness(lts: Lts, kind: str) -> RelationWithLevels:
    return strong_apartness(lts) if kind == STRONG else branching_apartness(lts)


def bisimilarity(lts: Lts, kind: str) -> Relation:
    return strong_bisimilarity(lts) if kind == STRONG else branching_bisimilarity(lts)
