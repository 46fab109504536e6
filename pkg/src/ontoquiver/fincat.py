"""Finite categories given by explicit composition tables.

Convention: ``compose[(g, f)]`` is "f then g", defined exactly when
``target(f) == source(g)``.  Nothing is validated at construction time:
:func:`check_category_axioms` reports violations as data so that corrupted
tables can be inspected.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Mapping

from .errors import IllFormedCategory, MismatchedFunctors, PartialMap
from .quiver import Arrow, Quiver, Vertex


@dataclass(frozen=True)
class Morphism:
    id: str
    src: str
    tgt: str


@dataclass(frozen=True, eq=False)
class FinCategory:
    objects: tuple[str, ...]
    morphisms: tuple[Morphism, ...]
    identity: Mapping[str, str]
    compose: Mapping[tuple[str, str], str]

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", tuple(self.morphisms))
        object.__setattr__(self, "identity", dict(self.identity))
        object.__setattr__(self, "compose", dict(self.compose))

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            set(self.objects) == set(other.objects)
            and set(self.morphisms) == set(other.morphisms)
            and self.identity == other.identity
            and self.compose == other.compose
        )

    def __hash__(self):
        return hash((frozenset(self.objects), frozenset(self.morphisms)))

    @cached_property
    def _index(self) -> dict[str, Morphism]:
        return {m.id: m for m in self.morphisms}

    def morphism(self, mid: str) -> Morphism:
        return self._index[mid]

    def has_morphism(self, mid: str) -> bool:
        return mid in self._index

    def src(self, mid: str) -> str:
        return self._index[mid].src

    def tgt(self, mid: str) -> str:
        return self._index[mid].tgt

    def hom(self, x: str, y: str) -> list[str]:
        return [m.id for m in self.morphisms if m.src == x and m.tgt == y]

    def then(self, f: str, g: str) -> str:
        """``g ∘ f``; KeyError when undefined."""
        return self.compose[g, f]

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        """Pairs ``(g, f)`` with ``target(f) == source(g)``."""
        for f in self.morphisms:
            for g in self.morphisms:
                if f.tgt == g.src:
                    yield g.id, f.id


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    witness: tuple = ()

    def __str__(self):
        return f"{self.kind}: {self.detail}"


def check_category_axioms(c: FinCategory) -> list[Violation]:
    """Exhaustively check well-formedness, identity laws and associativity.

    Returns an empty list iff ``c`` is a category.
    """
    out: list[Violation] = []
    objs = set(c.objects)
    if len(objs) != len(c.objects):
        out.append(Violation("structure", "duplicate object ids"))
    if len(c._index) != len(c.morphisms):
        out.append(Violation("structure", "duplicate morphism ids"))
    for m in c.morphisms:
        if m.src not in objs or m.tgt not in objs:
            out.append(Violation("structure", f"morphism {m.id} has an endpoint outside the objects", (m.id,)))
    if out:
        return out

    for x in c.objects:
        i = c.identity.get(x)
        if i is None:
            out.append(Violation("identity", f"object {x} has no identity", (x,)))
        elif not c.has_morphism(i) or c.src(i) != x or c.tgt(i) != x:
            out.append(Violation("identity", f"identity of {x} is {i}, not an endomorphism of {x}", (x, i)))
    for x in c.identity:
        if x not in objs:
            out.append(Violation("identity", f"identity given for unknown object {x}", (x,)))

    def composite(g, f):
        h = c.compose.get((g, f))
        if h is None or not c.has_morphism(h):
            return None
        return h

    for g, f in c.composable_pairs():
        h = c.compose.get((g, f))
        if h is None:
            out.append(Violation("missing_composite", f"{g}∘{f} is undefined", (g, f)))
        elif not c.has_morphism(h):
            out.append(Violation("composite_endpoints", f"{g}∘{f} = {h} is not a morphism", (g, f, h)))
        elif c.src(h) != c.src(f) or c.tgt(h) != c.tgt(g):
            out.append(Violation("composite_endpoints", f"{g}∘{f} = {h} has the wrong endpoints", (g, f, h)))
    for (g, f), h in c.compose.items():
        if not (c.has_morphism(g) and c.has_morphism(f)) or c.tgt(f) != c.src(g):
            out.append(Violation("spurious_composite", f"{g}∘{f} = {h} defined on a non-composable pair", (g, f)))

    for m in c.morphisms:
        i_src, i_tgt = c.identity.get(m.src), c.identity.get(m.tgt)
        if i_src is not None and composite(m.id, i_src) not in (None, m.id):
            out.append(Violation("right_identity", f"{m.id}∘id_{m.src} != {m.id}", (m.id,)))
        if i_tgt is not None and composite(i_tgt, m.id) not in (None, m.id):
            out.append(Violation("left_identity", f"id_{m.tgt}∘{m.id} != {m.id}", (m.id,)))

    for f in c.morphisms:
        for g in c.morphisms:
            if f.tgt != g.src:
                continue
            gf = composite(g.id, f.id)
            if gf is None:
                continue
            for h in c.morphisms:
                if g.tgt != h.src:
                    continue
                hg = composite(h.id, g.id)
                if hg is None:
                    continue
                left, right = composite(h.id, gf), composite(hg, f.id)
                if left is not None and right is not None and left != right:
                    out.append(
                        Violation(
                            "associativity",
                            f"{h.id}∘({g.id}∘{f.id}) = {left} but ({h.id}∘{g.id})∘{f.id} = {right}",
                            (h.id, g.id, f.id),
                        )
                    )
    return out


def is_category(c: FinCategory) -> bool:
    return not check_category_axioms(c)


def underlying_graph(c: FinCategory) -> Quiver:
    """Forgetful image: objects become vertices, every morphism (identities too) an arrow."""
    violations = check_category_axioms(c)
    if violations:
        raise IllFormedCategory("; ".join(map(str, violations[:3])))
    return Quiver(
        tuple(Vertex(x, x) for x in c.objects),
        tuple(Arrow(m.id, m.src, m.tgt, m.id) for m in c.morphisms),
    )


# -- functors ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FinFunctor:
    domain: FinCategory
    codomain: FinCategory
    object_map: Mapping[str, str] = field(default_factory=dict)
    morphism_map: Mapping[str, str] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and dict(self.object_map) == dict(other.object_map)
            and dict(self.morphism_map) == dict(other.morphism_map)
        )

    def key(self) -> tuple:
        return (
            tuple(self.object_map[x] for x in self.domain.objects),
            tuple(self.morphism_map[m.id] for m in self.domain.morphisms),
        )


def check_functor(F: FinFunctor) -> bool:
    """True iff ``F`` preserves endpoints, identities and every composite."""
    C, D = F.domain, F.codomain
    missing = [x for x in C.objects if x not in F.object_map]
    missing += [m.id for m in C.morphisms if m.id not in F.morphism_map]
    if missing:
        raise PartialMap(f"functor is undefined on {missing}")
    om, mm = F.object_map, F.morphism_map
    if any(om[x] not in D.objects for x in C.objects):
        return False
    for m in C.morphisms:
        img = mm[m.id]
        if not D.has_morphism(img) or D.src(img) != om[m.src] or D.tgt(img) != om[m.tgt]:
            return False
    for x in C.objects:
        if mm[C.identity[x]] != D.identity[om[x]]:
            return False
    for (g, f), h in C.compose.items():
        if D.compose.get((mm[g], mm[f])) != mm[h]:
            return False
    return True


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(c, c, {x: x for x in c.objects}, {m.id: m.id for m in c.morphisms})


def constant_functor(c: FinCategory, d: FinCategory, obj: str) -> FinFunctor:
    return FinFunctor(c, d, {x: obj for x in c.objects}, {m.id: d.identity[obj] for m in c.morphisms})


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    """``G ∘ F``."""
    return FinFunctor(
        F.domain,
        G.codomain,
        {x: G.object_map[y] for x, y in F.object_map.items()},
        {m: G.morphism_map[n] for m, n in F.morphism_map.items()},
    )


def iter_functors(c: FinCategory, d: FinCategory) -> Iterator[FinFunctor]:
    """All functors ``c -> d`` by brute force over object and morphism maps."""
    for images in itertools.product(d.objects, repeat=len(c.objects)):
        om = dict(zip(c.objects, images))
        choices = [d.hom(om[m.src], om[m.tgt]) for m in c.morphisms]
        for mimages in itertools.product(*choices):
            F = FinFunctor(c, d, om, dict(zip((m.id for m in c.morphisms), mimages)))
            if check_functor(F):
                yield F


@dataclass(frozen=True)
class NatTransformation:
    components: Mapping[str, str]


def check_natural_transformation(eta: NatTransformation, F: FinFunctor, G: FinFunctor) -> bool:
    """True iff every component has type F(X) -> G(X) and every square commutes."""
    if F.domain != G.domain or F.codomain != G.codomain:
        raise MismatchedFunctors("functors must share domain and codomain")
    C, D = F.domain, F.codomain
    missing = [x for x in C.objects if x not in eta.components]
    if missing:
        raise PartialMap(f"transformation has no component at {missing}")
    comp = eta.components
    for x in C.objects:
        e = comp[x]
        if not D.has_morphism(e) or D.src(e) != F.object_map[x] or D.tgt(e) != G.object_map[x]:
            return False
    for m in C.morphisms:
        lhs = D.compose.get((G.morphism_map[m.id], comp[m.src]))
        rhs = D.compose.get((comp[m.tgt], F.morphism_map[m.id]))
        if lhs is None or lhs != rhs:
            return False
    return True


def vertical_compose(second: NatTransformation, first: NatTransformation, d: FinCategory) -> NatTransformation:
    """Componentwise ``second_X ∘ first_X`` in the codomain category ``d``."""
    return NatTransformation({x: d.compose[second.components[x], e] for x, e in first.components.items()})


# -- small named categories ---------------------------------------------------


def terminal_category(obj: str = "*") -> FinCategory:
    i = f"id_{obj}"
    return FinCategory((obj,), (Morphism(i, obj, obj),), {obj: i}, {(i, i): i})


def discrete_category(objects) -> FinCategory:
    objects = tuple(objects)
    ids = {x: f"id_{x}" for x in objects}
    return FinCategory(
        objects,
        tuple(Morphism(ids[x], x, x) for x in objects),
        ids,
        {(ids[x], ids[x]): ids[x] for x in objects},
    )


def category_from_generators(objects, morphisms, table=None) -> FinCategory:
    """Add identities and identity composites to explicitly given non-identity data.

    ``morphisms`` are ``(id, src, tgt)``; ``table`` maps ``(g, f)`` to ``g∘f``
    for non-identity composable pairs.
    """
    objects = tuple(objects)
    ids = {x: f"id_{x}" for x in objects}
    morphs = [Morphism(ids[x], x, x) for x in objects] + [Morphism(*m) for m in morphisms]
    comp = {}
    for m in morphs:
        comp[m.id, ids[m.src]] = m.id
        comp[ids[m.tgt], m.id] = m.id
    comp.update(table or {})
    return FinCategory(objects, tuple(morphs), ids, comp)


def monoid_category(elements, table, obj: str = "x") -> FinCategory:
    """One-object category from a monoid; ``elements[0]`` is the unit.

    ``table[(a, b)]`` is the product ``a·b`` read as ``a ∘ b``.
    """
    unit = elements[0]
    return FinCategory(
        (obj,),
        tuple(Morphism(e, obj, obj) for e in elements),
        {obj: unit},
        dict(table),
    )


# -- enumeration of small categories ------------------------------------------


def _composite_lookup(ident_ids, table):
    def comp(g, f):
        if g in ident_ids:
            return f
        if f in ident_ids:
            return g
        return table.get((g, f))

    return comp


def _composition_tables(morphs: list[Morphism], ident_ids: set[str]):
    nonid = [m for m in morphs if m.id not in ident_ids]
    entries = [(g, f) for f in nonid for g in nonid if f.tgt == g.src]
    cands = [[m.id for m in morphs if m.src == f.src and m.tgt == g.tgt] for g, f in entries]
    if any(not c for c in cands):
        return
    triples = [(h, g, f) for f in nonid for g in nonid for h in nonid if f.tgt == g.src and g.tgt == h.src]
    table: dict = {}
    comp = _composite_lookup(ident_ids, table)

    def consistent():
        for h, g, f in triples:
            gf, hg = comp(g.id, f.id), comp(h.id, g.id)
            if gf is None or hg is None:
                continue
            left, right = comp(h.id, gf), comp(hg, f.id)
            if left is not None and right is not None and left != right:
                return False
        return True

    def backtrack(k):
        if k == len(entries):
            yield dict(table)
            return
        g, f = entries[k]
        for value in cands[k]:
            table[g.id, f.id] = value
            if consistent():
                yield from backtrack(k + 1)
            del table[g.id, f.id]

    yield from backtrack(0)


def _canonical_key(objects, morphs, ident_ids, table):
    nonid = [m for m in morphs if m.id not in ident_ids]
    best = None
    for perm in itertools.permutations(range(len(objects))):
        omap = {x: perm[i] for i, x in enumerate(objects)}
        groups: dict = {}
        for m in nonid:
            groups.setdefault((omap[m.src], omap[m.tgt]), []).append(m.id)
        keys = sorted(groups)
        for choice in itertools.product(*(itertools.permutations(groups[k]) for k in keys)):
            names = {}
            n = 0
            for k, ordered in zip(keys, choice):
                for mid in ordered:
                    names[mid] = (k, n)
                    n += 1
            for x in objects:
                names[f"id_{x}"] = ((omap[x], omap[x]), -1)
            enc = tuple(sorted((names[g], names[f], names[h]) for (g, f), h in table.items()))
            key = (tuple(sorted(names[m.id] for m in nonid)), enc)
            if best is None or key < best:
                best = key
    return best


@lru_cache(maxsize=None)
def enumerate_categories(max_objects: int, max_morphisms: int, min_objects: int = 1) -> tuple[FinCategory, ...]:
    """All finite categories up to isomorphism within the given size bounds.

    Brute force with associativity pruning; intended for tiny bounds
    (three objects / six morphisms is already the practical ceiling).
    """
    found = []
    for n in range(min_objects, max_objects + 1):
        objects = tuple(f"X{i}" for i in range(n))
        ident = {x: f"id_{x}" for x in objects}
        ident_ids = set(ident.values())
        pairs = [(x, y) for x in objects for y in objects]
        seen = set()
        for k in range(0, max_morphisms - n + 1):
            for dist in itertools.combinations_with_replacement(pairs, k):
                morphs = [Morphism(ident[x], x, x) for x in objects]
                morphs += [Morphism(f"m{i}", s, t) for i, (s, t) in enumerate(dist)]
                for table in _composition_tables(morphs, ident_ids):
                    key = _canonical_key(objects, morphs, ident_ids, table)
                    if key in seen:
                        continue
                    seen.add(key)
                    full = dict(table)
                    for m in morphs:
                        full[m.id, ident[m.src]] = m.id
                        full[ident[m.tgt], m.id] = m.id
                    found.append(FinCategory(objects, tuple(morphs), ident, full))
    return tuple(found)


# -- JSON ----------------------------------------------------------------------


def category_to_dict(c: FinCategory) -> dict:
    return {
        "objects": sorted(c.objects),
        "morphisms": [{"id": m.id, "src": m.src, "tgt": m.tgt} for m in sorted(c.morphisms, key=lambda m: m.id)],
        "identity": dict(sorted(c.identity.items())),
        "compose": [[g, f, h] for (g, f), h in sorted(c.compose.items())],
    }


def category_from_dict(data: Mapping) -> FinCategory:
    return FinCategory(
        tuple(data["objects"]),
        tuple(Morphism(m["id"], m["src"], m["tgt"]) for m in data["morphisms"]),
        dict(data["identity"]),
        {(g, f): h for g, f, h in data["compose"]},
    )


def dumps_category(c: FinCategory) -> str:
    return json.dumps(category_to_dict(c), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
