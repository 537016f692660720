"""Finite relation algebras presented by atoms."""

from .axioms import AxiomReport, LawVerdict, verify_ra_axioms
from .isomorphism import find_isomorphism, is_isomorphic
from .library import (
    complex_algebra,
    compose_pairs,
    converse_pairs,
    direct_product_algebra,
    full_relation_algebra,
    permute_atoms,
    set_relation_algebra,
)
from .operations import (
    atoms_below,
    complement,
    converse_of,
    is_functional,
    is_subidentity,
    join,
    meet,
    rectangle,
    relative_product,
)
from .structure import MAX_ATOMS, AtomStructure, Element, peircean_images

__all__ = [
    "MAX_ATOMS",
    "AtomStructure",
    "Element",
    "peircean_images",
    "relative_product",
    "converse_of",
    "rectangle",
    "atoms_below",
    "join",
    "meet",
    "complement",
    "is_subidentity",
    "is_functional",
    "AxiomReport",
    "LawVerdict",
    "verify_ra_axioms",
    "full_relation_algebra",
    "complex_algebra",
    "set_relation_algebra",
    "direct_product_algebra",
    "permute_atoms",
    "compose_pairs",
    "converse_pairs",
    "find_isomorphism",
    "is_isomorphic",
]
