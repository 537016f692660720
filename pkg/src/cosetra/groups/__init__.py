"""Finite groups as tables, with subgroups, cosets and quotient isomorphisms."""

from .group import FiniteGroup, cyclic, dihedral, direct_product, make_group, symmetric, trivial
from .quotient import (
    IsoVerdict,
    QuotientIso,
    compose,
    identity_iso,
    image_subgroup,
    induce_on_coarser,
    inner_automorphism,
    inverse,
    quotient_iso,
    quotient_isomorphisms,
    same_map,
    verify_quotient_iso,
)
from .subgroups import (
    CosetSystem,
    Side,
    Subgroup,
    all_subgroups,
    coset_system,
    conjugate,
    intersection,
    is_normal,
    normal_subgroups,
    product_subgroup,
    quotient_table,
    set_product,
    subgroup_from,
    trivial_subgroup,
    whole_group,
)

__all__ = [
    "FiniteGroup",
    "make_group",
    "trivial",
    "cyclic",
    "symmetric",
    "dihedral",
    "direct_product",
    "Side",
    "Subgroup",
    "CosetSystem",
    "subgroup_from",
    "trivial_subgroup",
    "whole_group",
    "is_normal",
    "coset_system",
    "set_product",
    "product_subgroup",
    "conjugate",
    "intersection",
    "all_subgroups",
    "normal_subgroups",
    "quotient_table",
    "QuotientIso",
    "IsoVerdict",
    "quotient_iso",
    "verify_quotient_iso",
    "identity_iso",
    "compose",
    "inverse",
    "same_map",
    "image_subgroup",
    "induce_on_coarser",
    "inner_automorphism",
    "quotient_isomorphisms",
]
