from __future__ import annotations

import pytest

from cosetra.core.errors import DomainError, GroupError
from cosetra.groups import (
    Subgroup,
    all_subgroups,
    conjugate,
    coset_system,
    cyclic,
    dihedral,
    direct_product,
    intersection,
    is_normal,
    make_group,
    normal_subgroups,
    product_subgroup,
    quotient_table,
    subgroup_from,
    symmetric,
    trivial,
    trivial_subgroup,
    whole_group,
)


def _make_transposition_subgroup() -> Subgroup:
    # {012, 021} in S3
    return Subgroup(symmetric(3), frozenset({0, 1}))


def test_library_groups_have_expected_orders():
    assert trivial().order == 1
    assert cyclic(5).order == 5
    assert symmetric(3).order == 6
    assert symmetric(4).order == 24
    assert dihedral(4).order == 8
    assert direct_product(cyclic(2), cyclic(3)).order == 6


def test_names_and_labels():
    assert str(cyclic(4)) == "Z4"
    assert str(direct_product(cyclic(2), cyclic(2))) == "Z2xZ2"
    assert symmetric(3).label(0) == "012"
    assert dihedral(3).label(4) == "r1s"


def test_abelian_flags():
    assert cyclic(6).is_abelian
    assert direct_product(cyclic(2), cyclic(2)).is_abelian
    assert not symmetric(3).is_abelian
    assert not dihedral(4).is_abelian


def test_klein_group_elements_square_to_identity():
    g = direct_product(cyclic(2), cyclic(2))
    assert all(g.mul(a, a) == g.identity for a in g.elements)


def test_subgroups_of_s3():
    g = symmetric(3)
    subs = all_subgroups(g)
    assert [s.order for s in subs] == [1, 2, 2, 2, 3, 6]
    normal = normal_subgroups(g)
    assert [s.sorted_members for s in normal] == [(0,), (0, 3, 4), tuple(range(6))]


def test_dihedral_subgroups_include_rotations():
    g = dihedral(4)
    rotations = subgroup_from(g, [1])
    assert rotations.sorted_members == (0, 1, 2, 3)
    assert is_normal(rotations)
    assert len(all_subgroups(g)) == 10


def test_cosets_of_z4():
    g = cyclic(4)
    system = coset_system(subgroup_from(g, [2]))
    assert system.cosets == (frozenset({0, 2}), frozenset({1, 3}))
    assert system.representatives == (0, 1)
    assert system.index_of(3) == 1
    assert system.index_of_set({1, 3}) == 1
    assert quotient_table(system) == ((0, 1), (1, 0))


def test_left_and_right_cosets_differ_for_non_normal_subgroup():
    h = _make_transposition_subgroup()
    left = coset_system(h, "left")
    right = coset_system(h, "right")
    assert left.count == right.count == 3
    assert set(left.cosets) != set(right.cosets)


def test_reindexed_system_keeps_subgroup_first():
    system = coset_system(subgroup_from(cyclic(6), [3]))
    moved = system.reindexed([0, 2, 1])
    assert moved.cosets[1] == frozenset({2, 5})
    with pytest.raises(GroupError):
        system.reindexed([1, 0, 2])


def test_index_of_set_rejects_non_coset():
    system = coset_system(subgroup_from(cyclic(6), [3]))
    with pytest.raises(GroupError, match="not a coset"):
        system.index_of_set({1, 2})


def test_conjugate_of_non_normal_subgroup_moves():
    h = _make_transposition_subgroup()
    assert not is_normal(h)
    moved = conjugate(h, 2)
    assert moved.order == 2
    assert moved != h


def test_products_and_intersections():
    g = symmetric(3)
    a3 = subgroup_from(g, [3])
    h = _make_transposition_subgroup()
    assert product_subgroup(a3, h) == whole_group(g)
    assert intersection(a3, h) == trivial_subgroup(g)
    with pytest.raises(GroupError, match="not a subgroup"):
        product_subgroup(h, conjugate(h, 2))


def test_make_group_rejects_non_square_table():
    with pytest.raises(GroupError, match="square"):
        make_group([[0, 1]])


def test_make_group_rejects_missing_identity():
    with pytest.raises(GroupError, match="identity"):
        make_group([[0, 0], [0, 0]])


def test_make_group_rejects_non_associative_table():
    with pytest.raises(GroupError, match="not associative"):
        make_group([[0, 1, 2], [1, 0, 2], [2, 2, 0]])


def test_subgroup_must_be_closed():
    with pytest.raises(GroupError, match="not closed"):
        Subgroup(cyclic(4), frozenset({0, 1, 3}))


def test_subgroup_must_contain_identity():
    with pytest.raises(GroupError, match="identity"):
        Subgroup(cyclic(4), frozenset({2}))


def test_constructor_bounds():
    with pytest.raises(DomainError):
        cyclic(0)
    with pytest.raises(DomainError):
        symmetric(5)
    with pytest.raises(DomainError):
        dihedral(0)


def test_quotient_table_requires_normal_subgroup():
    with pytest.raises(GroupError, match="not normal"):
        quotient_table(coset_system(_make_transposition_subgroup()))
