"""Marked quivers: a finite category per vertex, a set-valued bifunctor per arrow.

For an arrow ``a: i -> j`` the bifunctor ``E_a`` is contravariant in ``C_i``
and covariant in ``C_j``.  For ``u: x' -> x`` in ``C_i`` and ``v: y -> y'`` in
``C_j`` the table ``maps[(u, v)]`` is a function ``E(x, y) -> E(x', y')``.
Laws are checked exhaustively; violations are returned as data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from .errors import IncompleteMarking
from .fincat import (
    FinCategory,
    Violation,
    category_from_dict,
    category_to_dict,
    check_category_axioms,
    terminal_category,
)
from .quiver import Quiver, quiver_from_dict, quiver_to_dict


@dataclass(frozen=True, eq=False)
class SetValuedBifunctor:
    sets: Mapping[tuple[str, str], tuple[str, ...]] = field(default_factory=dict)
    maps: Mapping[tuple[str, str], Mapping[str, str]] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, SetValuedBifunctor):
            return NotImplemented
        return (
            {k: tuple(v) for k, v in self.sets.items()} == {k: tuple(v) for k, v in other.sets.items()}
            and {k: dict(v) for k, v in self.maps.items()} == {k: dict(v) for k, v in other.maps.items()}
        )


@dataclass(frozen=True, eq=False)
class MarkedQuiver:
    quiver: Quiver
    vertex_cats: Mapping[str, FinCategory]
    arrow_functors: Mapping[str, SetValuedBifunctor]


def check_bifunctor(E: SetValuedBifunctor, ci: FinCategory, cj: FinCategory, name: str = "E") -> list[Violation]:
    """Violations of ``E: ci^op x cj -> Set``: coverage, typing, identities, composition."""
    out: list[Violation] = []
    for x in ci.objects:
        for y in cj.objects:
            if (x, y) not in E.sets:
                out.append(Violation("coverage", f"{name}({x},{y}) has no set", (x, y)))
            elif len(set(E.sets[x, y])) != len(E.sets[x, y]):
                out.append(Violation("coverage", f"{name}({x},{y}) lists an element twice", (x, y)))
    for key in E.sets:
        if key[0] not in ci.objects or key[1] not in cj.objects:
            out.append(Violation("coverage", f"{name}{key} is not an object pair", key))
    for key in E.maps:
        u, v = key
        if not (ci.has_morphism(u) and cj.has_morphism(v)):
            out.append(Violation("coverage", f"{name}({u},{v}) is not a morphism pair", key))
    if out:
        return out

    def elems(x, y):
        return set(E.sets[x, y])

    for u in ci.morphisms:
        for v in cj.morphisms:
            table = E.maps.get((u.id, v.id))
            if table is None:
                out.append(Violation("coverage", f"{name}({u.id},{v.id}) has no function", (u.id, v.id)))
                continue
            dom, cod = elems(u.tgt, v.src), elems(u.src, v.tgt)
            if set(table) != dom:
                out.append(
                    Violation("typing", f"{name}({u.id},{v.id}) is not defined on exactly {name}({u.tgt},{v.src})", (u.id, v.id))
                )
            bad = sorted(e for e, img in table.items() if img not in cod)
            if bad:
                out.append(
                    Violation("typing", f"{name}({u.id},{v.id}) sends {bad} outside {name}({u.src},{v.tgt})", (u.id, v.id))
                )
    if out:
        return out

    for x in ci.objects:
        for y in cj.objects:
            table = E.maps[ci.identity[x], cj.identity[y]]
            if any(table[e] != e for e in E.sets[x, y]):
                out.append(Violation("identity", f"{name}(id_{x},id_{y}) is not the identity", (x, y)))

    # E(u1∘u2, v2∘v1) = E(u2, v2) ∘ E(u1, v1) for u2: x''->x', u1: x'->x, v1: y->y', v2: y'->y''
    for u1 in ci.morphisms:
        for u2 in ci.morphisms:
            if u2.tgt != u1.src:
                continue
            u12 = ci.compose.get((u1.id, u2.id))
            for v1 in cj.morphisms:
                for v2 in cj.morphisms:
                    if v1.tgt != v2.src:
                        continue
                    v21 = cj.compose.get((v2.id, v1.id))
                    if u12 is None or v21 is None:
                        continue
                    whole = E.maps[u12, v21]
                    first, second = E.maps[u1.id, v1.id], E.maps[u2.id, v2.id]
                    for e in E.sets[u1.tgt, v1.src]:
                        if second[first[e]] != whole[e]:
                            out.append(
                                Violation(
                                    "composition",
                                    f"{name}({u1.id}∘{u2.id},{v2.id}∘{v1.id}) disagrees with the composite at {e}",
                                    (u1.id, u2.id, v1.id, v2.id, e),
                                )
                            )
                            break
    return out


def check_marking(mq: MarkedQuiver) -> list[Violation]:
    """Empty iff every vertex category is a category and every arrow bifunctor is lawful."""
    q = mq.quiver
    missing = [v for v in q.vertex_ids if v not in mq.vertex_cats]
    missing += [a for a in q.arrow_ids if a not in mq.arrow_functors]
    if missing:
        raise IncompleteMarking(f"no marking data for {missing}")
    out: list[Violation] = []
    bad_cats = set()
    for v in q.vertex_ids:
        for viol in check_category_axioms(mq.vertex_cats[v]):
            bad_cats.add(v)
            out.append(Violation(viol.kind, f"C_{v}: {viol.detail}", (v,) + viol.witness))
    for a in q.arrows:
        if a.src in bad_cats or a.tgt in bad_cats:
            continue
        out.extend(
            check_bifunctor(mq.arrow_functors[a.id], mq.vertex_cats[a.src], mq.vertex_cats[a.tgt], f"E_{a.id}")
        )
    return out


def constant_bifunctor(ci: FinCategory, cj: FinCategory, element: str = "*") -> SetValuedBifunctor:
    return SetValuedBifunctor(
        {(x, y): (element,) for x in ci.objects for y in cj.objects},
        {(u.id, v.id): {element: element} for u in ci.morphisms for v in cj.morphisms},
    )


def trivial_marking(q: Quiver) -> MarkedQuiver:
    """Terminal category at every vertex, constant singleton bifunctor on every arrow."""
    term = terminal_category()
    return MarkedQuiver(
        q,
        {v: term for v in q.vertex_ids},
        {a: constant_bifunctor(term, term) for a in q.arrow_ids},
    )


def hom_bifunctor(c: FinCategory) -> SetValuedBifunctor:
    """``E(x, y) = Hom(x, y)`` with ``E(u, v)(h) = v ∘ h ∘ u``."""
    sets = {(x, y): tuple(c.hom(x, y)) for x in c.objects for y in c.objects}
    maps = {}
    for u in c.morphisms:
        for v in c.morphisms:
            maps[u.id, v.id] = {h: c.compose[v.id, c.compose[h, u.id]] for h in c.hom(u.tgt, v.src)}
    return SetValuedBifunctor(sets, maps)


def hom_marking(q: Quiver, c: FinCategory) -> MarkedQuiver:
    """Attach ``c`` to every vertex and its hom bifunctor to every arrow."""
    return MarkedQuiver(q, {v: c for v in q.vertex_ids}, {a: hom_bifunctor(c) for a in q.arrow_ids})


# -- JSON ---------------------------------------------------------------------


def bifunctor_to_dict(E: SetValuedBifunctor) -> dict:
    return {
        "sets": [{"x": x, "y": y, "elements": list(els)} for (x, y), els in sorted(E.sets.items())],
        "maps": [{"u": u, "v": v, "table": dict(sorted(t.items()))} for (u, v), t in sorted(E.maps.items())],
    }


def bifunctor_from_dict(data: Mapping) -> SetValuedBifunctor:
    return SetValuedBifunctor(
        {(s["x"], s["y"]): tuple(s["elements"]) for s in data["sets"]},
        {(m["u"], m["v"]): dict(m["table"]) for m in data["maps"]},
    )


def marking_to_dict(mq: MarkedQuiver) -> dict:
    return {
        "quiver": quiver_to_dict(mq.quiver),
        "vertex_cats": {v: category_to_dict(c) for v, c in sorted(mq.vertex_cats.items())},
        "arrow_functors": {a: bifunctor_to_dict(E) for a, E in sorted(mq.arrow_functors.items())},
    }


def marking_from_dict(data: Mapping) -> MarkedQuiver:
    return MarkedQuiver(
        quiver_from_dict(data["quiver"]),
        {v: category_from_dict(c) for v, c in data["vertex_cats"].items()},
        {a: bifunctor_from_dict(E) for a, E in data["arrow_functors"].items()},
    )


def dumps_marking(mq: MarkedQuiver) -> str:
    return json.dumps(marking_to_dict(mq), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
