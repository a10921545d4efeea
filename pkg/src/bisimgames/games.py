"""Construction of strong and branching bisimulation game graphs.

Both games are two-player graph games between a challenger (Spoiler) and
a mimic (Duplicator). A strong game alternates challenge and reply moves
between state pairs and challenge tuples. A branching game inserts a
five-state configuration after each reply, from which the challenger
picks the pre- or post-state of the reply to continue with.

Graphs are built as the reachable closure from a set of root pairs, so
queries about a single pair never pay for the full state-pair square.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .lts import Lts, LtsError, StateId, Label

STRONG = "strong"
BRANCHING = "branching"

SPOILER = "spoiler"
DUPLICATOR = "duplicator"


@dataclass(frozen=True)
class SpoilerPair:
    """A challenger-owned ordered state pair ``[x, y]``."""
    x: StateId
    y: StateId


@dataclass(frozen=True)
class DuplicatorChallenge:
    """A pending challenge ``<x, label, x_new, y>``: the move
    ``x --label--> x_new`` has been played and ``y`` must reply."""
    x: StateId
    label: Label
    x_new: StateId
    y: StateId


@dataclass(frozen=True)
class SpoilerQuint:
    """A branching-game configuration ``[x, x_new, y, y_mid, y_new]``
    recording a full reply; the challenger continues with ``[x, y_mid]``
    or ``[x_new, y_new]``."""
    x: StateId
    x_new: StateId
    y: StateId
    y_mid: StateId
    y_new: StateId


Config = Union[SpoilerPair, DuplicatorChallenge, SpoilerQuint]


def owner(cfg: Config) -> str:
    return DUPLICATOR if isinstance(cfg, DuplicatorChallenge) else SPOILER


class GameGraph:
    """An immutable game graph over an :class:`Lts`.

    ``configs`` is a dense index of configurations; ``moves[i]`` lists the
    successor indices of configuration ``i`` in deterministic order;
    ``roots`` are the pair configurations the closure started from.
    """

    __slots__ = ("lts", "kind", "configs", "moves", "roots", "_index", "_preds")

    def __init__(self, lts: Lts, kind: str, configs, moves, roots):
        self.lts = lts
        self.kind = kind
        self.configs: tuple[Config, ...] = tuple(configs)
        self.moves: tuple[tuple[int, ...], ...] = tuple(tuple(m) for m in moves)
        self.roots: tuple[int, ...] = tuple(roots)
        self._index = {cfg: i for i, cfg in enumerate(self.configs)}
        self._preds = None

    def __len__(self) -> int:
        return len(self.configs)

    def index_of(self, cfg: Config) -> int:
        try:
            return self._index[cfg]
        except KeyError:
            raise KeyError(f"configuration {cfg} not in game") from None

    def __contains__(self, cfg: Config) -> bool:
        return cfg in self._index

    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        if self._preds is None:
            preds = [[] for _ in self.configs]
            for i, succ in enumerate(self.moves):
                for j in succ:
                    preds[j].append(i)
            self._preds = tuple(tuple(p) for p in preds)
        return self._preds

    def edge_kind(self, i: int, j: int) -> str:
        """Move classification: challenge (S/S1), reply (D) or split (S2)."""
        a, b = self.configs[i], self.configs[j]
        if isinstance(a, SpoilerPair) and isinstance(b, DuplicatorChallenge):
            return "S" if self.kind == STRONG else "S1"
        if isinstance(a, DuplicatorChallenge):
            return "D"
        if isinstance(a, SpoilerQuint) and isinstance(b, SpoilerPair):
            return "S2"
        raise ValueError(f"malformed edge {a} -> {b}")


def _normalise_roots(lts: Lts, roots: Iterable[tuple[StateId, StateId]]):
    out = []
    for x, y in sorted(set(roots)):
        for s in (x, y):
            if not (0 <= s < lts.n_states):
                raise LtsError(f"unknown root state index {s}")
        out.append((x, y))
    if not out:
        raise LtsError("at least one root pair is required")
    return out


def _challenges(lts: Lts, pair: SpoilerPair) -> list[DuplicatorChallenge]:
    x, y = pair.x, pair.y
    out = [DuplicatorChallenge(x, lab, t, y) for lab, t in lts.transitions_from(x)]
    out += [DuplicatorChallenge(y, lab, t, x) for lab, t in lts.transitions_from(y)]
    return out


def _build(lts: Lts, kind: str, roots) -> GameGraph:
    root_pairs = [SpoilerPair(x, y) for x, y in _normalise_roots(lts, roots)]
    configs: list[Config] = []
    index: dict[Config, int] = {}
    moves: list[tuple[int, ...]] = []

    def intern(cfg: Config) -> int:
        i = index.get(cfg)
        if i is None:
            i = len(configs)
            index[cfg] = i
            configs.append(cfg)
            moves.append(())
            queue.append(i)
        return i

    queue: list[int] = []
    root_ids = [intern(p) for p in root_pairs]
    head = 0
    while head < len(queue):
        i = queue[head]
        head += 1
        cfg = configs[i]
        if isinstance(cfg, SpoilerPair):
            succ = _challenges(lts, cfg)
        elif isinstance(cfg, DuplicatorChallenge):
            if kind == STRONG:
                succ = [SpoilerPair(cfg.x_new, t) for t in sorted(lts.successors(cfg.y, cfg.label))]
            else:
                succ = [SpoilerQuint(cfg.x, cfg.x_new, cfg.y, mid, new)
                        for mid, new in sorted(lts.branching_answers(cfg.y, cfg.label))]
        else:
            # the two split targets may coincide; keep a single edge then
            succ = list(dict.fromkeys(
                [SpoilerPair(cfg.x, cfg.y_mid), SpoilerPair(cfg.x_new, cfg.y_new)]))
        moves[i] = tuple(intern(s) for s in succ)
    return GameGraph(lts, kind, configs, moves, root_ids)


def build_strong_game(lts: Lts, roots: Iterable[tuple[StateId, StateId]]) -> GameGraph:
    """Reachable closure of the strong game from the given root pairs.

    From ``[x, y]`` the challenger may play any transition of either
    state (challenging from the second component realises symmetry); the
    reply to ``<x, a, x_new, y>`` lands on the pair of targets
    ``[x_new, y_new]`` for each ``y --a--> y_new``.
    """
    return _build(lts, STRONG, roots)


def build_branching_game(lts: Lts, roots: Iterable[tuple[StateId, StateId]]) -> GameGraph:
    """Reachable closure of the branching game from the given root pairs.

    Replies use silent-prefixed answers: for each ``(y_mid, y_new)`` in
    ``branching_answers(y, label)`` the reply reaches the five-state
    configuration, whose two split moves return control to a pair. Works
    on silent-action-free systems too (silent reachability is then the
    identity).
    """
    return _build(lts, BRANCHING, roots)


def all_pairs(lts: Lts) -> list[tuple[StateId, StateId]]:
    n = lts.n_states
    return [(x, y) for x in range(n) for y in range(n)]


def describe_config(cfg: Config, lts: Lts) -> str:
    nm = lts.state_name
    if isinstance(cfg, SpoilerPair):
        return f"[{nm(cfg.x)},{nm(cfg.y)}]"
    if isinstance(cfg, DuplicatorChallenge):
        return f"<{nm(cfg.x)},{cfg.label},{nm(cfg.x_new)},{nm(cfg.y)}>"
    return f"[{nm(cfg.x)},{nm(cfg.x_new)},{nm(cfg.y)},{nm(cfg.y_mid)},{nm(cfg.y_new)}]"


def describe_move(game: GameGraph, i: int, j: int, lts: Lts | None = None) -> str:
    lts = lts or game.lts
    nm = lts.state_name
    src, dst = game.configs[i], game.configs[j]
    kind = game.edge_kind(i, j)
    if kind in ("S", "S1"):
        return f"challenge {nm(dst.x)} -{dst.label}-> {nm(dst.x_new)}"
    if kind == "D":
        if isinstance(dst, SpoilerPair):
            return f"reply {nm(src.y)} -{src.label}-> {nm(dst.y)}"
        return (f"reply {nm(src.y)} =tau=> {nm(dst.y_mid)} "
                f"-({src.label})-> {nm(dst.y_new)}")
    return f"continue with {describe_config(dst, lts)}"


def check_structure(game: GameGraph, lts: Lts | None = None) -> list[str]:
    """Structural sanity of a built graph; returns human-readable failures.

    Checks edge typing and alternation, that every pending challenge is a
    real transition, that reply out-degrees match the transition closure,
    and that split configurations have one or two pair successors.
    """
    lts = lts or game.lts
    bad: list[str] = []
    for r in game.roots:
        if not isinstance(game.configs[r], SpoilerPair):
            bad.append(f"root {r} is not a pair configuration")
    for i, succ in enumerate(game.moves):
        cfg = game.configs[i]
        for j in succ:
            try:
                kind = game.edge_kind(i, j)
            except ValueError as e:
                bad.append(str(e))
                continue
            if game.kind == STRONG and kind not in ("S", "D"):
                bad.append(f"strong game contains a {kind} edge")
            if game.kind == BRANCHING and kind == "S":
                bad.append("branching game contains an untyped challenge edge")
            if kind == "D" and game.kind == BRANCHING and not isinstance(game.configs[j], SpoilerQuint):
                bad.append(f"branching reply from {i} skips the five-state configuration")
        if isinstance(cfg, DuplicatorChallenge):
            if (cfg.x, cfg.label, cfg.x_new) not in lts.transitions:
                bad.append(f"challenge {describe_config(cfg, lts)} is not a real transition")
            expected = (len(lts.successors(cfg.y, cfg.label)) if game.kind == STRONG
                        else len(lts.branching_answers(cfg.y, cfg.label)))
            if len(succ) != expected:
                bad.append(f"challenge {describe_config(cfg, lts)} has out-degree "
                           f"{len(succ)}, expected {expected}")
        if isinstance(cfg, SpoilerQuint):
            if not 1 <= len(succ) <= 2:
                bad.append(f"split configuration {describe_config(cfg, lts)} has "
                           f"{len(succ)} successors")
            targets = {game.configs[j] for j in succ}
            wanted = {SpoilerPair(cfg.x, cfg.y_mid), SpoilerPair(cfg.x_new, cfg.y_new)}
            if targets != wanted:
                bad.append(f"split configuration {describe_config(cfg, lts)} has wrong targets")
    return bad
