"""Ontology DSL: parsing, serialization, compilation to quivers, unit algebra."""

from .compile import ontology_to_quiver, quiver_to_ontology
from .model import (
    Annotation,
    BasicUnit,
    Concept,
    OntologyDoc,
    Relation,
    RelationKind,
    Span,
    UnitDecl,
    UnitPower,
    UnitProduct,
    UnitRef,
)
from .parser import parse_file, parse_ontology, serialize_ontology
from .units import normalize_declaration, normalize_unit, unit_table

__all__ = [
    "Annotation",
    "BasicUnit",
    "Concept",
    "OntologyDoc",
    "Relation",
    "RelationKind",
    "Span",
    "UnitDecl",
    "UnitPower",
    "UnitProduct",
    "UnitRef",
    "normalize_declaration",
    "normalize_unit",
    "ontology_to_quiver",
    "parse_file",
    "parse_ontology",
    "quiver_to_ontology",
    "serialize_ontology",
    "unit_table",
]
