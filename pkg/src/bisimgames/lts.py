"""Finite labelled transition systems and the Aldebaran ``.aut`` text format.

States are dense integer indices with unique display names; labels are
interned strings, one of which may be designated as the silent action.
All transition-closure queries (``successors``, ``tau_reach``,
``optional_step``, ``branching_answers``) live on the :class:`Lts` value
itself and are memoised, so a single parsed system can be shared freely
between game builders, solvers and service threads.
"""

from __future__ import annotations

import logging
import re
import threading
from dataclasses import dataclass

logger = logging.getLogger(__name__)

StateId = int
Label = str

DEFAULT_TAU_NAMES = ("tau", "i")


class LtsError(ValueError):
    """A structurally invalid transition system or an unknown state/label."""


class ParseError(LtsError):
    """A malformed ``.aut`` document; the message names the offending line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


_HEADER_RE = re.compile(r"^des\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")
_UNQUOTED_LABEL_RE = re.compile(r"^[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class Lts:
    """An immutable finite labelled transition system.

    ``names[i]`` is the display name of state ``i``; ``labels`` is the
    sorted action alphabet; ``tau``, when set, is the member of ``labels``
    treated as the silent action; ``transitions`` is a set (not a
    multiset) of ``(source, label, target)`` triples.
    """

    names: tuple[str, ...]
    labels: tuple[str, ...]
    transitions: frozenset[tuple[StateId, Label, StateId]]
    tau: Label | None = None
    initial: StateId | None = None

    def __post_init__(self):
        if not self.names:
            raise LtsError("an LTS needs at least one state")
        if len(set(self.names)) != len(self.names):
            raise LtsError("state display names must be unique")
        object.__setattr__(self, "labels", tuple(sorted(set(self.labels))))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        n = len(self.names)
        label_set = set(self.labels)
        for src, lab, dst in self.transitions:
            if not (0 <= src < n and 0 <= dst < n):
                raise LtsError(f"transition ({src}, {lab!r}, {dst}) leaves the state range 0..{n - 1}")
            if lab not in label_set:
                raise LtsError(f"transition label {lab!r} not in the alphabet")
        if self.tau is not None and self.tau not in label_set:
            raise LtsError(f"silent action {self.tau!r} not in the alphabet")
        if self.initial is not None and not (0 <= self.initial < n):
            raise LtsError(f"initial state {self.initial} out of range")
        # Eager successor map; the on-demand caches below are guarded by a lock
        # so a fully constructed Lts is safe to share between threads.
        succ: dict[tuple[StateId, Label], set[StateId]] = {}
        out: dict[StateId, list[tuple[Label, StateId]]] = {i: [] for i in range(n)}
        for src, lab, dst in self.transitions:
            succ.setdefault((src, lab), set()).add(dst)
            out[src].append((lab, dst))
        object.__setattr__(self, "_succ", {k: frozenset(v) for k, v in succ.items()})
        object.__setattr__(self, "_out", tuple(tuple(sorted(out[i])) for i in range(n)))
        object.__setattr__(self, "_name_index", {name: i for i, name in enumerate(self.names)})
        object.__setattr__(self, "_tau_memo", {})
        object.__setattr__(self, "_answers_memo", {})
        object.__setattr__(self, "_memo_lock", threading.Lock())

    @property
    def n_states(self) -> int:
        return len(self.names)

    def state_index(self, name: str) -> StateId:
        try:
            return self._name_index[name]
        except KeyError:
            raise LtsError(f"unknown state {name!r}") from None

    def state_name(self, x: StateId) -> str:
        self._check_state(x)
        return self.names[x]

    def _check_state(self, x: StateId) -> None:
        if not (0 <= x < len(self.names)):
            raise LtsError(f"unknown state index {x}")

    def _check_label(self, label: Label) -> None:
        if label not in set(self.labels):
            raise LtsError(f"unknown label {label!r}")

    def transitions_from(self, x: StateId) -> tuple[tuple[Label, StateId], ...]:
        """Outgoing ``(label, target)`` pairs of ``x``, sorted for determinism."""
        self._check_state(x)
        return self._out[x]

    def successors(self, x: StateId, label: Label) -> frozenset[StateId]:
        """Targets of ``label``-transitions from ``x``; always finite."""
        self._check_state(x)
        self._check_label(label)
        return self._succ.get((x, label), frozenset())

    def tau_reach(self, x: StateId) -> frozenset[StateId]:
        """States reachable from ``x`` by zero or more silent steps.

        Always contains ``x``; equals ``{x}`` when no silent action is
        designated. Computed by breadth-first search and memoised.
        """
        self._check_state(x)
        memo = self._tau_memo
        cached = memo.get(x)
        if cached is not None:
            return cached
        if self.tau is None:
            result = frozenset((x,))
        else:
            seen = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for s in frontier:
                    for t in self._succ.get((s, self.tau), ()):
                        if t not in seen:
                            seen.add(t)
                            nxt.append(t)
                frontier = nxt
            result = frozenset(seen)
        with self._memo_lock:
            memo.setdefault(x, result)
        return result

    def optional_step(self, x: StateId, label: Label) -> frozenset[StateId]:
        """Targets of a ``label`` step that may be skipped when silent.

        The plain successors of ``x``, plus ``x`` itself when ``label`` is
        the silent action (the "stay put" option).
        """
        base = self.successors(x, label)
        if self.tau is not None and label == self.tau:
            return base | {x}
        return base

    def branching_answers(self, y: StateId, label: Label) -> frozenset[tuple[StateId, StateId]]:
        """All ``(y_mid, y_new)`` with ``y`` silently reaching ``y_mid`` and
        ``y_mid`` taking an optional ``label`` step to ``y_new``."""
        self._check_state(y)
        self._check_label(label)
        memo = self._answers_memo
        key = (y, label)
        cached = memo.get(key)
        if cached is not None:
            return cached
        result = frozenset(
            (mid, new)
            for mid in self.tau_reach(y)
            for new in self.optional_step(mid, label)
        )
        with self._memo_lock:
            memo.setdefault(key, result)
        return result


def make_lts(
    transitions,
    n_states: int | None = None,
    names=None,
    tau: Label | None = None,
    initial: StateId | None = 0,
) -> Lts:
    """Build an :class:`Lts` from transition triples, defaulting names to ``s<i>``."""
    transitions = frozenset(transitions)
    if names is None:
        if n_states is None:
            n_states = 1 + max((max(s, d) for s, _, d in transitions), default=0)
        names = tuple(f"s{i}" for i in range(n_states))
    labels = {lab for _, lab, _ in transitions}
    if tau is not None:
        labels.add(tau)
    return Lts(names=tuple(names), labels=tuple(sorted(labels)),
               transitions=transitions, tau=tau, initial=initial)


def _parse_transition_line(text: str, lineno: int) -> tuple[int, str, int]:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError(f"expected a transition '(src, label, dst)', got {text!r}", lineno)
    body = s[1:-1]
    i = 0

    def skip_ws(i):
        while i < len(body) and body[i].isspace():
            i += 1
        return i

    i = skip_ws(i)
    j = i
    while j < len(body) and body[j].isdigit():
        j += 1
    if j == i:
        raise ParseError("missing source state index", lineno)
    src = int(body[i:j])
    i = skip_ws(j)
    if i >= len(body) or body[i] != ",":
        raise ParseError("expected ',' after source state", lineno)
    i = skip_ws(i + 1)
    if i < len(body) and body[i] == '"':
        j = body.find('"', i + 1)
        if j < 0:
            raise ParseError("unterminated quoted label", lineno)
        label = body[i + 1:j]
        i = skip_ws(j + 1)
    else:
        j = body.find(",", i)
        if j < 0:
            raise ParseError("expected ',' after label", lineno)
        label = body[i:j].strip()
        if not _UNQUOTED_LABEL_RE.match(label):
            raise ParseError(f"unquoted label {label!r} must be alphanumeric", lineno)
        i = j
    if i >= len(body) or body[i] != ",":
        raise ParseError("expected ',' after label", lineno)
    i = skip_ws(i + 1)
    j = i
    while j < len(body) and body[j].isdigit():
        j += 1
    if j == i:
        raise ParseError("missing target state index", lineno)
    dst = int(body[i:j])
    if skip_ws(j) != len(body):
        raise ParseError("trailing input after target state", lineno)
    return src, label, dst


def parse_aut(text: str, tau_names: tuple[str, ...] = DEFAULT_TAU_NAMES) -> Lts:
    """Parse an Aldebaran ``.aut`` document.

    The header ``des (initial, m, n)`` declares ``n`` states indexed
    ``0..n-1`` and exactly ``m`` transition lines ``(src, "label", dst)``
    (quotes optional for alphanumeric labels). Any label spelled as one of
    ``tau_names`` is canonicalised to ``tau_names[0]`` and designated as
    the silent action. Lines starting with ``#`` are comments, except
    ``#name <index> <display-name>`` which names a state; duplicate
    transitions are dropped with a log diagnostic.
    """
    if not tau_names:
        raise ValueError("tau_names must name at least one spelling")
    canonical_tau = tau_names[0]
    tau_set = set(tau_names)

    header: tuple[int, int, int] | None = None
    name_lines: list[tuple[int, int, str]] = []
    transitions: list[tuple[int, str, int]] = []
    tau_used = False
    seen: set[tuple[int, str, int]] = set()
    raw_transitions = 0
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line.split(maxsplit=2)
            if parts[0] == "#name":
                if len(parts) != 3 or not parts[1].isdigit():
                    raise ParseError("expected '#name <index> <display-name>'", lineno)
                name_lines.append((lineno, int(parts[1]), parts[2].strip()))
            continue
        if header is None:
            m = _HEADER_RE.match(line)
            if not m:
                raise ParseError(f"malformed header, expected 'des (i, m, n)', got {line!r}", lineno)
            header = (int(m.group(1)), int(m.group(2)), int(m.group(3)))
            if header[2] < 1:
                raise ParseError("state count must be positive", lineno)
            if header[0] >= header[2]:
                raise ParseError(f"initial state {header[0]} out of range 0..{header[2] - 1}", lineno)
            continue
        # duplicates still count towards the declared transition total
        raw_transitions += 1
        if raw_transitions > header[1]:
            raise ParseError(
                f"transition count mismatch: header declares {header[1]} transitions", lineno)
        src, label, dst = _parse_transition_line(line, lineno)
        n = header[2]
        if src >= n or dst >= n:
            raise ParseError(f"state index {max(src, dst)} >= state count {n}", lineno)
        if label in tau_set:
            label = canonical_tau
            tau_used = True
        triple = (src, label, dst)
        if triple in seen:
            logger.warning("line %d: duplicate transition %r ignored", lineno, line)
            continue
        seen.add(triple)
        transitions.append(triple)

    if header is None:
        raise ParseError("missing 'des (i, m, n)' header", last_line or 1)
    if raw_transitions != header[1]:
        raise ParseError(
            f"transition count mismatch: header declares {header[1]}, found {raw_transitions}",
            last_line or 1)

    n = header[2]
    names = [f"s{i}" for i in range(n)]
    for lineno, idx, disp in name_lines:
        if idx >= n:
            raise ParseError(f"#name index {idx} >= state count {n}", lineno)
        if not disp:
            raise ParseError("empty display name", lineno)
        names[idx] = disp
    dupes = {d for d in names if names.count(d) > 1}
    if dupes:
        raise ParseError(f"duplicate display name {sorted(dupes)[0]!r}", name_lines[-1][0] if name_lines else 1)

    labels = tuple(sorted({lab for _, lab, _ in transitions}))
    return Lts(
        names=tuple(names),
        labels=labels,
        transitions=frozenset(transitions),
        tau=canonical_tau if tau_used else None,
        initial=header[0],
    )


def write_aut(lts: Lts) -> str:
    """Serialise back to ``.aut``; ``parse_aut(write_aut(lts))`` reproduces
    ``lts`` exactly (an unset initial state is written as 0)."""
    out = [f"des ({lts.initial if lts.initial is not None else 0},{len(lts.transitions)},{lts.n_states})"]
    for i, name in enumerate(lts.names):
        if name != f"s{i}":
            out.append(f"#name {i} {name}")
    for src, label, dst in sorted(lts.transitions):
        text = label if _UNQUOTED_LABEL_RE.match(label) else f'"{label}"'
        out.append(f"({src},{text},{dst})")
    return "\n".join(out) + "\n"


def validate(lts: Lts) -> dict:
    """Diagnostics confirming the assumptions the games rely on.

    Finiteness and image-finiteness are guaranteed by construction for any
    parsed system; the report exists so callers can assert them explicitly
    before building games.
    """
    return {
        "states": lts.n_states,
        "labels": lts.labels,
        "transitions": len(lts.transitions),
        "tau_used": lts.tau is not None and any(lab == lts.tau for _, lab, _ in lts.transitions),
        "finite": True,
        "image_finite": True,
        "initial": lts.initial,
    }
