"""Exception hierarchy shared by every ontoquiver module."""

from __future__ import annotations


class OqError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    code = "error"

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


class DuplicateId(OqError):
    code = "duplicate_id"


class DanglingEndpoint(OqError):
    code = "dangling_endpoint"


class PartialMap(OqError):
    code = "partial_map"


class InvalidSpan(OqError):
    code = "invalid_span"


class InvalidMorphism(OqError):
    code = "invalid_morphism"


class IllFormedCategory(OqError):
    code = "ill_formed_category"


class MismatchedFunctors(OqError):
    code = "mismatched_functors"


class UnknownVertex(OqError):
    code = "unknown_vertex"


class NonComposable(OqError):
    code = "non_composable"


class CyclicQuiver(OqError):
    code = "cyclic_quiver"


class PathQuiverMismatch(OqError):
    code = "path_quiver_mismatch"


class MixedEndpoints(OqError):
    code = "mixed_endpoints"


class QuiverMismatch(OqError):
    code = "quiver_mismatch"


class ShapeMismatch(OqError):
    code = "shape_mismatch"


class IncompleteMarking(OqError):
    code = "incomplete_marking"


class OntologyError(OqError):
    """Errors raised while reading ontology documents."""

    code = "ontology_error"

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)

    def to_json(self) -> dict:
        out = super().to_json()
        out.update(line=self.line, col=self.col)
        return out


class DslSyntaxError(OntologyError):
    code = "syntax_error"

    def __init__(self, message: str, line: int, col: int, expected=()):
        self.expected = frozenset(expected)
        if self.expected:
            message += " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(message, line, col)

    def to_json(self) -> dict:
        out = super().to_json()
        out["expected"] = sorted(self.expected)
        return out


class UnknownRelationKind(OntologyError):
    code = "unknown_relation_kind"


class UndeclaredConcept(OntologyError):
    code = "undeclared_concept"


class DuplicateConcept(OntologyError):
    code = "duplicate_concept"


class UnknownUnitName(OntologyError):
    code = "unknown_unit_name"


class AliasCycle(OntologyError):
    code = "alias_cycle"


class KbError(OqError):
    code = "kb_error"


class DuplicateName(KbError):
    code = "duplicate_name"


class UnknownOntology(KbError):
    code = "unknown_ontology"


class SharedConceptMissing(KbError):
    code = "shared_concept_missing"


class DigestMismatch(KbError):
    code = "digest_mismatch"


class IoFailure(KbError):
    code = "io_failure"
