"""Syntax tree for ontology documents.

Structural equality ignores provenance: two documents are equal when their
names, concepts, relations, unit declarations and annotations agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..errors import UnknownRelationKind

BUILTIN_KINDS = ("is_a", "part_of", "subordinate", "higher", "associative")

# synonyms for the subsumption relation and spelling variants
KIND_ALIASES = {
    "is-a": "is_a",
    "subsumption": "is_a",
    "is_subtype_of": "is_a",
    "is_subclass_of": "is_a",
    "subclass_of": "is_a",
    "part-of": "part_of",
}


@dataclass(frozen=True)
class RelationKind:
    name: str
    custom: bool = False

    def __post_init__(self):
        if not self.name:
            raise UnknownRelationKind("relation kind labels must be nonempty")
        if self.custom and self.name in BUILTIN_KINDS:
            raise UnknownRelationKind(f"custom label {self.name!r} shadows a built-in kind")
        if not self.custom and self.name not in BUILTIN_KINDS:
            raise UnknownRelationKind(f"unknown relation kind {self.name!r}")

    @property
    def label(self) -> str:
        return self.name

    @classmethod
    def builtin(cls, name: str) -> RelationKind:
        name = KIND_ALIASES.get(name, name)
        return cls(name)

    @classmethod
    def from_label(cls, label: str) -> RelationKind:
        """Inverse of :attr:`label`: built-in names map back to built-in kinds."""
        return cls(label, custom=label not in BUILTIN_KINDS)

    def __str__(self):
        return self.name


IS_A = RelationKind("is_a")
PART_OF = RelationKind("part_of")


@dataclass(frozen=True)
class Span:
    file: Optional[str]
    line: int
    col: int

    def __str__(self):
        return f"{self.file or '<text>'}:{self.line}:{self.col}"


@dataclass(frozen=True)
class Concept:
    id: str
    description: Optional[str] = None
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class Relation:
    kind: RelationKind
    src: str
    tgt: str
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class BasicUnit:
    name: str


@dataclass(frozen=True)
class UnitRef:
    name: str


@dataclass(frozen=True)
class UnitProduct:
    factors: tuple


@dataclass(frozen=True)
class UnitPower:
    base: "UnitExpr"
    exponent: int


UnitExpr = Union[BasicUnit, UnitRef, UnitProduct, UnitPower]


@dataclass(frozen=True)
class UnitDecl:
    name: str
    body: UnitExpr
    alias: Optional[str] = None
    span: Optional[Span] = field(default=None, compare=False)


ANNOTATION_KINDS = ("axiom", "postulate", "rule", "confirmation", "induction")


@dataclass(frozen=True)
class Annotation:
    """Uninterpreted axiom / rule / confirmation / induction text."""

    kind: str
    text: str
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class OntologyDoc:
    name: str
    concepts: tuple[Concept, ...] = ()
    relations: tuple[Relation, ...] = ()
    units: tuple[UnitDecl, ...] = ()
    annotations: tuple[Annotation, ...] = ()
    source: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("concepts", "relations", "units", "annotations"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def concept_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.concepts)

    def concept(self, cid: str) -> Concept:
        for c in self.concepts:
            if c.id == cid:
                return c
        raise KeyError(cid)
