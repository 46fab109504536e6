"""Ontology documents as labeled quivers, and back."""

from __future__ import annotations

from typing import Mapping, Optional

from ..quiver import Arrow, Quiver, Vertex
from .model import Concept, OntologyDoc, Relation, RelationKind


def relation_arrow_ids(n: int) -> list[str]:
    """Zero-padded ids so that sorting by id keeps declaration order."""
    width = max(3, len(str(max(n - 1, 0))))
    return [f"r{i:0{width}d}" for i in range(n)]


def ontology_to_quiver(doc: OntologyDoc) -> Quiver:
    """One vertex per concept, one arrow per relation (labelled by its kind).

    Parallel relations become parallel arrows and self-relations loops; unit
    declarations and annotations contribute nothing.
    """
    ids = relation_arrow_ids(len(doc.relations))
    return Quiver(
        tuple(Vertex(c.id, c.id) for c in doc.concepts),
        tuple(Arrow(aid, r.src, r.tgt, r.kind.label) for aid, r in zip(ids, doc.relations)),
    )


def quiver_to_ontology(
    q: Quiver, name: str, descriptions: Optional[Mapping[str, Optional[str]]] = None, **extra
) -> OntologyDoc:
    """Read a labeled quiver as an ontology; arrows are taken in id order."""
    descriptions = descriptions or {}
    return OntologyDoc(
        name,
        tuple(Concept(v.id, descriptions.get(v.id)) for v in q.vertices),
        tuple(Relation(RelationKind.from_label(a.label), a.src, a.tgt) for a in q.arrows),
        **extra,
    )
