"""Ontologies as quivers: finite categories, path categories, quiver
representations, marked quivers and a small ontology language with a
knowledge-base CLI on top.
"""

from .errors import OqError
from .fincat import (
    FinCategory,
    FinFunctor,
    Morphism,
    NatTransformation,
    check_category_axioms,
    check_functor,
    check_natural_transformation,
    enumerate_categories,
    iter_functors,
    underlying_graph,
)
from .linalg import QQ, Matrix, PrimeField
from .linrep import (
    RepMorphism,
    Representation,
    algebra_action,
    check_rep_morphism,
    eval_path,
    hom_space,
    is_exact_representation,
    path_algebra_basis,
    representation,
)
from .marked import MarkedQuiver, SetValuedBifunctor, check_marking, hom_marking, trivial_marking
from .onto import normalize_unit, ontology_to_quiver, parse_ontology, serialize_ontology
from .paths import Path, compose_paths, enumerate_paths, extend_to_functor, id_path, path_category
from .quiver import (
    Arrow,
    GraphMorphism,
    Quiver,
    Vertex,
    accepts_categorification,
    build_quiver,
    check_graph_morphism,
    pushout,
)

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "Arrow",
    "FinCategory",
    "FinFunctor",
    "GraphMorphism",
    "MarkedQuiver",
    "Matrix",
    "Morphism",
    "NatTransformation",
    "OqError",
    "Path",
    "PrimeField",
    "Quiver",
    "RepMorphism",
    "Representation",
    "SetValuedBifunctor",
    "Vertex",
    "accepts_categorification",
    "algebra_action",
    "build_quiver",
    "check_category_axioms",
    "check_functor",
    "check_graph_morphism",
    "check_marking",
    "check_natural_transformation",
    "check_rep_morphism",
    "compose_paths",
    "enumerate_categories",
    "enumerate_paths",
    "eval_path",
    "extend_to_functor",
    "hom_marking",
    "hom_space",
    "id_path",
    "is_exact_representation",
    "iter_functors",
    "normalize_unit",
    "ontology_to_quiver",
    "parse_ontology",
    "path_algebra_basis",
    "path_category",
    "pushout",
    "representation",
    "serialize_ontology",
    "trivial_marking",
    "underlying_graph",
]
