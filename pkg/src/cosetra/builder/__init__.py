"""Coset relation algebras built from group triples, and their generator."""

from .algebra import (
    CosetAlgebra,
    Discrepancy,
    build_coset_algebra,
    build_group_algebra,
    compare_otimes_composition,
    converse_index,
    coset_atoms,
    otimes,
    relation_atoms,
)
from .generate import (
    GROUP_FAMILIES,
    GeneratedTriple,
    GenerationBounds,
    catalog_frame,
    evaluate_triple,
    generate_catalog,
    generate_triples,
    library_groups,
)
from .relations import (
    CosetAtomIndex,
    Point,
    Relation,
    atomic_relation,
    identity_relation,
    point_label,
    unit_relation,
)

__all__ = [
    "Point",
    "Relation",
    "CosetAtomIndex",
    "point_label",
    "atomic_relation",
    "identity_relation",
    "unit_relation",
    "CosetAlgebra",
    "Discrepancy",
    "coset_atoms",
    "converse_index",
    "otimes",
    "build_coset_algebra",
    "build_group_algebra",
    "relation_atoms",
    "compare_otimes_composition",
    "GROUP_FAMILIES",
    "GenerationBounds",
    "GeneratedTriple",
    "library_groups",
    "generate_triples",
    "evaluate_triple",
    "generate_catalog",
    "catalog_frame",
]
