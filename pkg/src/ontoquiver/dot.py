"""Deterministic Graphviz DOT output for quivers."""

from __future__ import annotations

from .quiver import Quiver


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def export_dot(q: Quiver, name: str = "kb") -> str:
    """Vertices then arrows, each sorted by id; identical input gives identical bytes."""
    if not q.vertices:
        return f"digraph {name} {{ }}\n"
    lines = [f"digraph {name} {{"]
    for v in q.vertices:
        lines.append(f"  {_q(v.id)} [label={_q(v.label)}];")
    for a in q.arrows:
        lines.append(f"  {_q(a.src)} -> {_q(a.tgt)} [id={_q(a.id)}, label={_q(a.label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
