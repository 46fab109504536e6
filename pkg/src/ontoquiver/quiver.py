"""Finite quivers, graph morphisms, structural predicates and pushouts.

A quiver here is a finite directed multigraph: loops and parallel arrows are
allowed.  Values are immutable; every constructor validates its invariants.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import (
    DanglingEndpoint,
    DuplicateId,
    InvalidMorphism,
    InvalidSpan,
    PartialMap,
    UnknownVertex,
)


@dataclass(frozen=True)
class Vertex:
    id: str
    label: str = ""


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    tgt: str
    label: str = ""


@dataclass(frozen=True)
class Quiver:
    """Vertices and arrows, both kept sorted by id."""

    vertices: tuple[Vertex, ...] = ()
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        vertices = tuple(sorted(self.vertices, key=lambda v: v.id))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows, key=lambda a: a.id)))
        seen: set[str] = set()
        for v in vertices:
            if not isinstance(v.id, str) or not v.id:
                raise DuplicateId(f"vertex id must be a nonempty string, got {v.id!r}")
            if v.id in seen:
                raise DuplicateId(f"duplicate vertex id {v.id!r}")
            seen.add(v.id)
        arrow_ids: set[str] = set()
        for a in self.arrows:
            if not isinstance(a.id, str) or not a.id:
                raise DuplicateId(f"arrow id must be a nonempty string, got {a.id!r}")
            if a.id in arrow_ids:
                raise DuplicateId(f"duplicate arrow id {a.id!r}")
            arrow_ids.add(a.id)
            for end in (a.src, a.tgt):
                if end not in seen:
                    raise DanglingEndpoint(f"arrow {a.id!r} references unknown vertex {end!r}")

    @cached_property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @cached_property
    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.arrows)

    @cached_property
    def _vertex_index(self) -> dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def _arrow_index(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    @cached_property
    def _out(self) -> dict[str, tuple[Arrow, ...]]:
        out: dict[str, list[Arrow]] = {v: [] for v in self.vertex_ids}
        for a in self.arrows:
            out[a.src].append(a)
        return {v: tuple(arrs) for v, arrs in out.items()}

    def has_vertex(self, vid: str) -> bool:
        return vid in self._vertex_index

    def has_arrow(self, aid: str) -> bool:
        return aid in self._arrow_index

    def vertex(self, vid: str) -> Vertex:
        try:
            return self._vertex_index[vid]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {vid!r}") from None

    def arrow(self, aid: str) -> Arrow:
        return self._arrow_index[aid]

    def out_arrows(self, vid: str) -> tuple[Arrow, ...]:
        return self._out[vid]

    def __len__(self) -> int:
        return len(self.vertices)


def build_quiver(vertices: Iterable, arrows: Iterable = ()) -> Quiver:
    """Build a quiver from ``(id, label)`` pairs and ``(id, src, tgt, label)`` tuples.

    Bare strings are accepted for vertices and 3-tuples for arrows; the label
    then defaults to the id.
    """
    vs = []
    for v in vertices:
        if isinstance(v, Vertex):
            vs.append(v)
        elif isinstance(v, str):
            vs.append(Vertex(v, v))
        else:
            vid, label = v
            vs.append(Vertex(vid, label))
    arrs = []
    for a in arrows:
        if isinstance(a, Arrow):
            arrs.append(a)
        elif len(a) == 3:
            arrs.append(Arrow(a[0], a[1], a[2], a[0]))
        else:
            arrs.append(Arrow(*a))
    return Quiver(tuple(vs), tuple(arrs))


@dataclass(frozen=True, eq=False)
class GraphMorphism:
    """A pair of maps (on vertices and on arrows) between two quivers."""

    domain: Quiver
    codomain: Quiver
    vertex_map: Mapping[str, str] = field(default_factory=dict)
    arrow_map: Mapping[str, str] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, GraphMorphism):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and dict(self.vertex_map) == dict(other.vertex_map)
            and dict(self.arrow_map) == dict(other.arrow_map)
        )

    def key(self) -> tuple:
        """Hashable summary of the two maps, restricted to the domain."""
        return (
            tuple(self.vertex_map[v] for v in self.domain.vertex_ids),
            tuple(self.arrow_map[a] for a in self.domain.arrow_ids),
        )


def _require_total(m: GraphMorphism) -> None:
    missing_v = [v for v in m.domain.vertex_ids if v not in m.vertex_map]
    missing_a = [a for a in m.domain.arrow_ids if a not in m.arrow_map]
    if missing_v or missing_a:
        raise PartialMap(f"morphism is not total: unmapped vertices {missing_v}, arrows {missing_a}")


def check_graph_morphism(m: GraphMorphism) -> bool:
    """True iff ``s(f(e)) = f(s(e))`` and ``t(f(e)) = f(t(e))`` for all arrows.

    Raises PartialMap when a domain vertex or arrow is unmapped.
    """
    _require_total(m)
    cod = m.codomain
    if not all(cod.has_vertex(m.vertex_map[v]) for v in m.domain.vertex_ids):
        return False
    for a in m.domain.arrows:
        image = m.arrow_map[a.id]
        if not cod.has_arrow(image):
            return False
        b = cod.arrow(image)
        if b.src != m.vertex_map[a.src] or b.tgt != m.vertex_map[a.tgt]:
            return False
    return True


def identity_morphism(q: Quiver) -> GraphMorphism:
    return GraphMorphism(q, q, {v: v for v in q.vertex_ids}, {a: a for a in q.arrow_ids})


def compose_morphisms(second: GraphMorphism, first: GraphMorphism) -> GraphMorphism:
    """``second ∘ first`` (apply ``first``, then ``second``)."""
    if first.codomain != second.domain:
        raise InvalidMorphism("codomain of the first morphism is not the domain of the second")
    return GraphMorphism(
        first.domain,
        second.codomain,
        {v: second.vertex_map[w] for v, w in first.vertex_map.items()},
        {a: second.arrow_map[b] for a, b in first.arrow_map.items()},
    )


def iter_graph_morphisms(g: Quiver, h: Quiver) -> Iterator[GraphMorphism]:
    """Every graph morphism ``g -> h``, in a deterministic order."""
    by_ends: dict[tuple[str, str], list[str]] = defaultdict(list)
    for b in h.arrows:
        by_ends[b.src, b.tgt].append(b.id)
    for images in itertools.product(h.vertex_ids, repeat=len(g.vertices)):
        vmap = dict(zip(g.vertex_ids, images))
        choices = [by_ends.get((vmap[a.src], vmap[a.tgt]), []) for a in g.arrows]
        for arrow_images in itertools.product(*choices):
            yield GraphMorphism(g, h, vmap, dict(zip(g.arrow_ids, arrow_images)))


def is_weakly_connected(q: Quiver) -> bool:
    """One component in the underlying undirected graph; the empty quiver is not connected."""
    if not q.vertices:
        return False
    return len(_components(q)) == 1


def _components(q: Quiver) -> list[set[str]]:
    adj: dict[str, set[str]] = {v: set() for v in q.vertex_ids}
    for a in q.arrows:
        adj[a.src].add(a.tgt)
        adj[a.tgt].add(a.src)
    seen: set[str] = set()
    comps = []
    for start in q.vertex_ids:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def find_oriented_cycle(q: Quiver) -> tuple[str, ...] | None:
    """Arrow ids of some oriented cycle, or None when ``q`` is acyclic.

    Iterative depth-first search; vertices are tried in id order and out-arrows
    in id order, so the witness is deterministic.
    """
    WHITE, GREY, BLACK = 0, 1, 2
    color = {v: WHITE for v in q.vertex_ids}
    for root in q.vertex_ids:
        if color[root] != WHITE:
            continue
        color[root] = GREY
        # stack of (vertex, iterator over out-arrows); trail holds arrows on the DFS path
        stack = [(root, iter(q.out_arrows(root)))]
        trail: list[Arrow] = []
        while stack:
            v, it = stack[-1]
            a = next(it, None)
            if a is None:
                color[v] = BLACK
                stack.pop()
                if trail:
                    trail.pop()
                continue
            if color[a.tgt] == GREY:
                # close the cycle at a.tgt
                cycle = [a]
                for b in reversed(trail):
                    if cycle[0].src == a.tgt:
                        break
                    cycle.insert(0, b)
                return tuple(x.id for x in cycle)
            if color[a.tgt] == WHITE:
                color[a.tgt] = GREY
                trail.append(a)
                stack.append((a.tgt, iter(q.out_arrows(a.tgt))))
    return None


def is_acyclic(q: Quiver) -> bool:
    return find_oriented_cycle(q) is None


def topological_order(q: Quiver) -> list[str] | None:
    """Kahn's algorithm; None when an oriented cycle exists."""
    indeg = {v: 0 for v in q.vertex_ids}
    for a in q.arrows:
        indeg[a.tgt] += 1
    ready = sorted(v for v, d in indeg.items() if d == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for a in q.out_arrows(v):
            indeg[a.tgt] -= 1
            if indeg[a.tgt] == 0:
                ready.append(a.tgt)
        ready.sort()
    return order if len(order) == len(q.vertices) else None


def longest_path_length(q: Quiver) -> int | None:
    """Length of the longest path, or None for cyclic quivers."""
    order = topological_order(q)
    if order is None:
        return None
    best = {v: 0 for v in order}
    for v in order:
        for a in q.out_arrows(v):
            best[a.tgt] = max(best[a.tgt], best[v] + 1)
    return max(best.values(), default=0)


@dataclass(frozen=True)
class CategorificationReport:
    finite: bool
    nonempty: bool
    connected: bool
    acyclic: bool
    witness_cycle: tuple[str, ...] | None = None

    @property
    def accepted(self) -> bool:
        return self.finite and self.nonempty and self.connected

    def as_dict(self) -> dict:
        return {
            "finite": self.finite,
            "nonempty": self.nonempty,
            "connected": self.connected,
            "acyclic": self.acyclic,
            "witness_cycle": list(self.witness_cycle) if self.witness_cycle else None,
            "categorifiable": self.accepted,
        }


def accepts_categorification(q: Quiver) -> CategorificationReport:
    """Finite, nonempty and weakly connected; acyclicity reported alongside."""
    cycle = find_oriented_cycle(q)
    return CategorificationReport(
        finite=True,
        nonempty=bool(q.vertices),
        connected=is_weakly_connected(q),
        acyclic=cycle is None,
        witness_cycle=cycle,
    )


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def classes(self) -> dict:
        out = defaultdict(list)
        for x in self.parent:
            out[self.find(x)].append(x)
        return out


def _canonical_names(classes: list[list[tuple[str, int]]]) -> list[str]:
    """Name each class by its least member id; clashes get an ``@side`` suffix."""
    reps = [min(members) for members in classes]
    counts = defaultdict(int)
    for rid, _ in reps:
        counts[rid] += 1
    names = [rid if counts[rid] == 1 else f"{rid}@{side}" for rid, side in reps]
    if len(set(names)) != len(names):
        names = [f"{rid}@{side}#{i}" for i, (rid, side) in enumerate(reps)]
    return names


def pushout(f: GraphMorphism, g: GraphMorphism) -> tuple[Quiver, GraphMorphism, GraphMorphism]:
    """Glue ``f.codomain`` and ``g.codomain`` along the common domain.

    Returns the pushout quiver and the two injections; ``inj1 ∘ f == inj2 ∘ g``.
    Each equivalence class is named by its lexicographically least member id.
    """
    if f.domain != g.domain:
        raise InvalidSpan("the two legs of the span have different domains")
    for leg in (f, g):
        if not check_graph_morphism(leg):
            raise InvalidMorphism("span leg is not a graph morphism")
    g1, g2 = f.codomain, g.codomain

    vuf = _UnionFind([(v, 1) for v in g1.vertex_ids] + [(v, 2) for v in g2.vertex_ids])
    for v in f.domain.vertex_ids:
        vuf.union((f.vertex_map[v], 1), (g.vertex_map[v], 2))
    auf = _UnionFind([(a, 1) for a in g1.arrow_ids] + [(a, 2) for a in g2.arrow_ids])
    for a in f.domain.arrow_ids:
        auf.union((f.arrow_map[a], 1), (g.arrow_map[a], 2))

    vclasses = sorted((sorted(ms) for ms in vuf.classes().values()), key=min)
    vnames = _canonical_names(vclasses)
    vname_of = {m: name for name, ms in zip(vnames, vclasses) for m in ms}
    label_of = {(v.id, 1): v.label for v in g1.vertices}
    label_of.update({(v.id, 2): v.label for v in g2.vertices})
    vertices = [Vertex(name, label_of[min(ms)]) for name, ms in zip(vnames, vclasses)]

    aclasses = sorted((sorted(ms) for ms in auf.classes().values()), key=min)
    anames = _canonical_names(aclasses)
    aname_of = {m: name for name, ms in zip(anames, aclasses) for m in ms}
    src_of = {(a.id, 1): a for a in g1.arrows}
    src_of.update({(a.id, 2): a for a in g2.arrows})
    arrows = []
    for name, ms in zip(anames, aclasses):
        rep = min(ms)
        a = src_of[rep]
        arrows.append(Arrow(name, vname_of[a.src, rep[1]], vname_of[a.tgt, rep[1]], a.label))

    g3 = Quiver(tuple(vertices), tuple(arrows))
    inj1 = GraphMorphism(
        g1, g3, {v: vname_of[v, 1] for v in g1.vertex_ids}, {a: aname_of[a, 1] for a in g1.arrow_ids}
    )
    inj2 = GraphMorphism(
        g2, g3, {v: vname_of[v, 2] for v in g2.vertex_ids}, {a: aname_of[a, 2] for a in g2.arrow_ids}
    )
    return g3, inj1, inj2


def inclusion(sub: Quiver, q: Quiver) -> GraphMorphism:
    """The id-preserving morphism ``sub -> q``."""
    return GraphMorphism(sub, q, {v: v for v in sub.vertex_ids}, {a: a for a in sub.arrow_ids})


# -- JSON ------------------------------------------------------------------


def quiver_to_dict(q: Quiver) -> dict:
    return {
        "vertices": [{"id": v.id, "label": v.label} for v in sorted(q.vertices, key=lambda v: v.id)],
        "arrows": [
            {"id": a.id, "src": a.src, "tgt": a.tgt, "label": a.label}
            for a in sorted(q.arrows, key=lambda a: a.id)
        ],
    }


def quiver_from_dict(data: Mapping) -> Quiver:
    return Quiver(
        tuple(Vertex(v["id"], v.get("label", v["id"])) for v in data.get("vertices", ())),
        tuple(Arrow(a["id"], a["src"], a["tgt"], a.get("label", a["id"])) for a in data.get("arrows", ())),
    )


def dumps_quiver(q: Quiver) -> str:
    return json.dumps(quiver_to_dict(q), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads_quiver(text: str) -> Quiver:
    return quiver_from_dict(json.loads(text))
