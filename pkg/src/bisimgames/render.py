"""Deterministic text and DOT rendering of games and proofs."""

from __future__ import annotations

from .games import (DUPLICATOR, GameGraph, SpoilerPair, describe_config, owner)
from .lts import Lts
from .proofs import ProofNode, RuleNode, SymNode


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def render_game_dot(game: GameGraph) -> str:
    """DOT digraph of a game: boxes for challenger-owned configurations,
    diamonds for mimic-owned ones, edges labelled by move kind."""
    lts = game.lts
    lines = ["digraph game {"]
    roots = set(game.roots)
    for i, cfg in enumerate(game.configs):
        shape = "diamond" if owner(cfg) == DUPLICATOR else "box"
        extra = ", peripheries=2" if i in roots else ""
        lines.append(f'  n{i} [label="{_dot_escape(describe_config(cfg, lts))}", shape={shape}{extra}];')
    for i, succ in enumerate(game.moves):
        for j in succ:
            lines.append(f'  n{i} -> n{j} [label="{game.edge_kind(i, j)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_proof_dot(proof: ProofNode, lts: Lts) -> str:
    """DOT tree of a proof; symmetry nodes are dashed."""
    lines = ["digraph proof {"]
    counter = [0]

    def visit(node: ProofNode) -> int:
        my = counter[0]
        counter[0] += 1
        nm = lts.state_name
        if isinstance(node, SymNode):
            lines.append(f'  n{my} [label="{nm(node.x)} apart {nm(node.y)}\\n(symmetry)", '
                         f'shape=box, style=dashed];')
            child = visit(node.child)
            lines.append(f"  n{my} -> n{child};")
            return my
        label = (f"{nm(node.x)} apart {nm(node.y)}\\n"
                 f"{nm(node.x)} -{node.label}-> {nm(node.x_new)}")
        lines.append(f'  n{my} [label="{_dot_escape(label)}", shape=box];')
        for sg in node.subgoals:
            child = visit(sg.proof)
            badge = "" if sg.disjunct is None else f' [label="{sg.disjunct}"]'
            lines.append(f"  n{my} -> n{child}{badge};")
        return my

    visit(proof)
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_dot(obj, lts: Lts | None = None) -> str:
    """Render a game graph or a proof tree to DOT."""
    if isinstance(obj, GameGraph):
        return render_game_dot(obj)
    if lts is None:
        raise ValueError("rendering a proof needs the transition system for names")
    return render_proof_dot(obj, lts)


def render_proof_text(proof: ProofNode, lts: Lts, indent: str = "") -> str:
    """Indented text rendering of a proof tree."""
    nm = lts.state_name
    if isinstance(proof, SymNode):
        head = f"{indent}{nm(proof.x)} apart {nm(proof.y)}  (by symmetry)"
        return head + "\n" + render_proof_text(proof.child, lts, indent + "  ")
    head = (f"{indent}{nm(proof.x)} apart {nm(proof.y)}  "
            f"via {nm(proof.x)} -{proof.label}-> {nm(proof.x_new)}")
    out = [head]
    if not proof.subgoals:
        out.append(f"{indent}  no reply to {proof.label}: vacuously apart")
    for sg in proof.subgoals:
        if sg.y_mid is None:
            out.append(f"{indent}  reply {nm(proof.y)} -{proof.label}-> {nm(sg.y_new)}:")
        else:
            pick = "left" if sg.disjunct == 1 else "right"
            out.append(f"{indent}  answer {nm(proof.y)} =tau=> {nm(sg.y_mid)} "
                       f"-({proof.label})-> {nm(sg.y_new)}, pick {pick}:")
        out.append(render_proof_text(sg.proof, lts, indent + "    "))
    return "\n".join(out)


def render_relation_text(lts: Lts, apart_levels: dict, bisim_pairs) -> str:
    """Partition report: bisimilarity classes, then apart pairs by level."""
    n = lts.n_states
    seen = set()
    classes = []
    for x in range(n):
        if x in seen:
            continue
        cls = sorted(y for y in range(n) if (x, y) in bisim_pairs)
        seen.update(cls)
        classes.append(cls)
    lines = ["bisimilarity classes:"]
    for cls in classes:
        lines.append("  { " + ", ".join(lts.state_name(s) for s in cls) + " }")
    by_level: dict[int, list] = {}
    for (x, y), lv in apart_levels.items():
        if x < y:
            by_level.setdefault(lv, []).append((x, y))
    lines.append(f"apart pairs: {sum(len(v) for v in by_level.values())} (unordered)")
    for lv in sorted(by_level):
        pretty = ", ".join(f"({lts.state_name(x)},{lts.state_name(y)})"
                           for x, y in sorted(by_level[lv]))
        lines.append(f"  level {lv}: {pretty}")
    return "\n".join(lines)
