from __future__ import annotations

import pytest

from cosetra.builder import (
    CosetAlgebra,
    CosetAtomIndex,
    Relation,
    atomic_relation,
    build_coset_algebra,
    build_group_algebra,
    compare_otimes_composition,
    converse_index,
    coset_atoms,
    identity_relation,
    otimes,
    relation_atoms,
    unit_relation,
)
from cosetra.core.errors import DomainError, PreconditionError
from cosetra.frames import frame_record
from cosetra.groups import cyclic
from cosetra.kernel import (
    AtomStructure,
    complex_algebra,
    full_relation_algebra,
    is_isomorphic,
    verify_ra_axioms,
)
from cosetra.parsing import parse_gtr

TWO_Z2_SHIFTED = """\
indices 2
group 0 cyclic 2
group 1 cyclic 2
H 0 1 0
K 0 1 0
C 0 0 1 1
"""

Z3_TWISTED = """\
indices 1
group 0 cyclic 3
H 0 0 0
K 0 0 0
phi 0 0 0:0 1:2 2:1
"""


def _tables(a: AtomStructure) -> tuple:
    return a.atom_names, a.converse_map, a.identity_atoms, a.composition


def _make_half(load_fixture) -> CosetAlgebra:
    return build_coset_algebra(load_fixture("z4_half.gtr"))


def test_single_group_gives_its_complex_algebra(load_fixture):
    algebra = build_coset_algebra(load_fixture("z2_single.gtr"))
    assert algebra.structure.label == "C[F]"
    assert algebra.structure.atom_names == ("R0_0_0", "R0_0_1")
    assert is_isomorphic(algebra.structure, complex_algebra(cyclic(2)))


def test_two_trivial_groups_give_full_relation_algebra(load_fixture):
    algebra = build_coset_algebra(load_fixture("trivial_two.gtr"))
    assert is_isomorphic(algebra.structure, full_relation_algebra(2))


def test_atom_order_and_identity(load_fixture):
    F = load_fixture("z4_half.gtr")
    index = coset_atoms(F)
    assert len(index) == 10
    assert index[:5] == [
        CosetAtomIndex(0, 0, 0),
        CosetAtomIndex(0, 0, 1),
        CosetAtomIndex(0, 0, 2),
        CosetAtomIndex(0, 0, 3),
        CosetAtomIndex(0, 1, 0),
    ]
    algebra = build_coset_algebra(F)
    assert algebra.structure.identity_atoms == (0, 8)
    assert algebra.atom_of(CosetAtomIndex(1, 1, 1)) == 9


def test_unknown_atom_index(load_fixture):
    with pytest.raises(DomainError):
        _make_half(load_fixture).atom_of(CosetAtomIndex(0, 1, 5))


def test_converse_index_on_cyclic_group(load_fixture):
    F = load_fixture("z4_half.gtr")
    # inverse of the coset {1} in Z4 is {3}
    assert converse_index(F, CosetAtomIndex(0, 0, 1)) == CosetAtomIndex(0, 0, 3)
    assert converse_index(F, CosetAtomIndex(0, 1, 1)) == CosetAtomIndex(1, 0, 1)
    assert converse_index(F, CosetAtomIndex(1, 0, 0)) == CosetAtomIndex(0, 1, 0)


def test_otimes_adds_cosets(load_fixture):
    F = load_fixture("z4_half.gtr")
    assert otimes(F, CosetAtomIndex(0, 0, 1), CosetAtomIndex(0, 0, 2)) == (CosetAtomIndex(0, 0, 3),)
    assert otimes(F, CosetAtomIndex(0, 1, 1), CosetAtomIndex(1, 1, 1)) == (CosetAtomIndex(0, 1, 0),)
    assert otimes(F, CosetAtomIndex(0, 1, 0), CosetAtomIndex(0, 0, 0)) == ()


def test_otimes_through_a_larger_group(load_fixture):
    F = load_fixture("z4_half.gtr")
    assert otimes(F, CosetAtomIndex(1, 0, 0), CosetAtomIndex(0, 1, 0)) == (CosetAtomIndex(1, 1, 0),)
    assert otimes(F, CosetAtomIndex(0, 1, 0), CosetAtomIndex(1, 0, 0)) == (
        CosetAtomIndex(0, 0, 0),
        CosetAtomIndex(0, 0, 2),
    )


def test_built_frame_is_a_relation_algebra(load_fixture):
    algebra = _make_half(load_fixture)
    report = verify_ra_axioms(algebra.structure, "element_level", exhaustive=False, sample_pairs=200)
    assert report.passed, [v.detail for v in report.failures]


def test_atomic_relations(load_fixture):
    F = load_fixture("z4_half.gtr")
    r = atomic_relation(F, CosetAtomIndex(0, 1, 1))
    # g in Z4 goes to the Z2 element g mod 2 shifted by one
    assert set(r) == {((0, g), (1, (g + 1) % 2)) for g in range(4)}
    assert atomic_relation(F, CosetAtomIndex(0, 0, 0)) <= identity_relation(F)


def test_relations_of_a_frame_compose_like_otimes(load_fixture):
    algebra = _make_half(load_fixture)
    assert compare_otimes_composition(algebra) == []


def test_identity_and_unit_are_unions_of_atoms(load_fixture):
    algebra = _make_half(load_fixture)
    F = algebra.triple
    assert relation_atoms(identity_relation(F), algebra) == algebra.structure.identity_mask
    assert relation_atoms(unit_relation(F), algebra) == algebra.structure.full_mask


def test_partial_atom_is_not_a_union(load_fixture):
    algebra = _make_half(load_fixture)
    some = next(iter(algebra.relations[4]))
    assert relation_atoms(Relation.of([some]), algebra) is None


def test_group_algebra_matches_coset_algebra_for_frames(load_fixture):
    for name in ("z2_single.gtr", "trivial_two.gtr", "z4_half.gtr"):
        F = load_fixture(name)
        coset = build_coset_algebra(F).structure
        group = build_group_algebra(frame_record(F)).structure
        assert group.label == "G[F]"
        assert _tables(group) == _tables(coset), name


def test_group_algebra_needs_a_frame():
    F = parse_gtr(TWO_Z2_SHIFTED)
    with pytest.raises(PreconditionError, match="frame"):
        build_group_algebra(frame_record(F))


def test_shifted_semi_frame_composes_differently():
    algebra = build_coset_algebra(parse_gtr(TWO_Z2_SHIFTED))
    found = compare_otimes_composition(algebra)
    assert found
    assert "but composition gives" in found[0].describe(algebra)


def test_coset_algebra_needs_a_semi_frame():
    with pytest.raises(PreconditionError, match="identity"):
        build_coset_algebra(parse_gtr(Z3_TWISTED))
