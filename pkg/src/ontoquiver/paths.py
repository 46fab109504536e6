"""Paths, the free category on a quiver, and its universal property.

A path stores its arrows source-to-target.  ``compose_paths(p, q)`` means
"q first, then p", matching ``compose[(g, f)]`` in :mod:`ontoquiver.fincat`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import CyclicQuiver, InvalidMorphism, NonComposable, PathQuiverMismatch, UnknownVertex
from .fincat import FinCategory, FinFunctor, Morphism, underlying_graph
from .quiver import Arrow, GraphMorphism, Quiver, check_graph_morphism, is_acyclic, longest_path_length


@dataclass(frozen=True, order=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def at(self) -> str:
        return self.source

    @property
    def is_identity(self) -> bool:
        return not self.arrows

    def __len__(self) -> int:
        return len(self.arrows)

    def sort_key(self) -> tuple:
        return (len(self.arrows), self.arrows, self.source)

    @property
    def id(self) -> str:
        """Identifier of the form ``path:<source>:<a|b|...>``."""
        return f"path:{self.source}:" + "|".join(self.arrows)

    def to_dict(self) -> dict:
        if self.is_identity:
            return {"at": self.source}
        return {"arrows": list(self.arrows)}

    def __str__(self):
        if self.is_identity:
            return f"ε[{self.source}]"
        return "[" + ",".join(self.arrows) + "]"


def make_path(q: Quiver, arrows, at: str | None = None) -> Path:
    """Validate an arrow sequence in ``q``; ``at`` is needed only for identity paths."""
    arrows = tuple(arrows)
    if not arrows:
        if at is None:
            raise PathQuiverMismatch("identity path needs a vertex")
        return id_path(q, at)
    for a in arrows:
        if not q.has_arrow(a):
            raise PathQuiverMismatch(f"unknown arrow {a!r}")
    for a, b in zip(arrows, arrows[1:]):
        if q.arrow(a).tgt != q.arrow(b).src:
            raise PathQuiverMismatch(f"arrows {a!r} and {b!r} do not compose")
    first, last = q.arrow(arrows[0]), q.arrow(arrows[-1])
    if at is not None and at != first.src:
        raise PathQuiverMismatch(f"path does not start at {at!r}")
    return Path(first.src, last.tgt, arrows)


def path_from_dict(q: Quiver, data: Mapping) -> Path:
    if "arrows" in data and data["arrows"]:
        return make_path(q, data["arrows"])
    return id_path(q, data["at"])


def path_in_quiver(q: Quiver, p: Path) -> bool:
    try:
        return make_path(q, p.arrows, p.source) == p
    except (PathQuiverMismatch, UnknownVertex):
        return False


def id_path(q: Quiver, v: str) -> Path:
    if not q.has_vertex(v):
        raise UnknownVertex(f"unknown vertex {v!r}")
    return Path(v, v, ())


def compose_paths(p: Path, q: Path) -> Path:
    """``p ∘ q``: follow ``q``, then ``p``."""
    if q.target != p.source:
        raise NonComposable(f"cannot follow {q} (ends at {q.target!r}) by {p} (starts at {p.source!r})")
    return Path(q.source, p.target, q.arrows + p.arrows)


def enumerate_paths(q: Quiver, i: str, j: str, max_len: int) -> list[Path]:
    """All paths ``i -> j`` of length at most ``max_len``, ordered by (length, arrow ids)."""
    q.vertex(i)
    q.vertex(j)
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    found = [Path(i, i, ())] if i == j else []
    frontier: list[tuple[str, tuple[str, ...]]] = [(i, ())]
    for _ in range(max_len):
        nxt = []
        for v, arrows in frontier:
            for a in q.out_arrows(v):
                ext = arrows + (a.id,)
                nxt.append((a.tgt, ext))
                if a.tgt == j:
                    found.append(Path(i, j, ext))
        frontier = nxt
        if not frontier:
            break
    found.sort(key=Path.sort_key)
    return found


def all_paths(q: Quiver, max_len: int) -> list[Path]:
    """Every path of length at most ``max_len``, ordered by (length, arrow ids, source)."""
    out = []
    for i in q.vertex_ids:
        for j in q.vertex_ids:
            out.extend(enumerate_paths(q, i, j, max_len))
    out.sort(key=Path.sort_key)
    return out


def is_complete_bound(q: Quiver, max_len: int) -> bool:
    """Whether paths of length ``<= max_len`` already exhaust every path of ``q``."""
    longest = longest_path_length(q)
    return longest is not None and max_len >= longest


def path_graph(q: Quiver, max_len: int) -> Quiver:
    """The derived graph (V, paths, s, t), truncated at ``max_len``."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    arrows = []
    for p in all_paths(q, max_len):
        label = "id" if p.is_identity else "|".join(q.arrow(a).label for a in p.arrows)
        arrows.append(Arrow(p.id, p.source, p.target, label))
    return Quiver(q.vertices, tuple(arrows))


def path_category(q: Quiver) -> FinCategory:
    """The free category on an acyclic quiver, materialized as a composition table."""
    if not is_acyclic(q):
        raise CyclicQuiver("the path category of a cyclic quiver is infinite")
    paths = all_paths(q, len(q.arrows))
    by_id = {p.id: p for p in paths}
    comp = {}
    for f in paths:
        for g in paths:
            if f.target == g.source:
                comp[g.id, f.id] = compose_paths(g, f).id
    assert all(h in by_id for h in comp.values())
    return FinCategory(
        q.vertex_ids,
        tuple(Morphism(p.id, p.source, p.target) for p in paths),
        {v: Path(v, v, ()).id for v in q.vertex_ids},
        comp,
    )


def extend_to_functor(q: Quiver, c: FinCategory, m: GraphMorphism) -> FinFunctor:
    """The unique functor ``Path(q) -> c`` restricting to ``m`` on vertices and arrows."""
    if not is_acyclic(q):
        raise CyclicQuiver("extend_to_functor needs an acyclic quiver")
    if m.domain != q or m.codomain != underlying_graph(c) or not check_graph_morphism(m):
        raise InvalidMorphism("m is not a graph morphism q -> U(c)")
    pc = path_category(q)
    images = {}
    for p in all_paths(q, len(q.arrows)):
        h = c.identity[m.vertex_map[p.source]]
        for a in p.arrows:
            h = c.compose[m.arrow_map[a], h]
        images[p.id] = h
    return FinFunctor(pc, c, dict(m.vertex_map), images)


def restrict_to_graph(F: FinFunctor, q: Quiver) -> GraphMorphism:
    """Inverse direction of the correspondence: a functor on ``Path(q)`` seen on generators."""
    return GraphMorphism(
        q,
        underlying_graph(F.codomain),
        {v: F.object_map[v] for v in q.vertex_ids},
        {a.id: F.morphism_map[Path(a.src, a.tgt, (a.id,)).id] for a in q.arrows},
    )

