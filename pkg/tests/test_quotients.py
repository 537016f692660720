from __future__ import annotations

import pytest

from cosetra.core.errors import GroupError, PreconditionError
from cosetra.groups import (
    CosetSystem,
    QuotientIso,
    Subgroup,
    compose,
    coset_system,
    cyclic,
    direct_product,
    identity_iso,
    image_subgroup,
    induce_on_coarser,
    inner_automorphism,
    inverse,
    quotient_iso,
    quotient_isomorphisms,
    same_map,
    subgroup_from,
    symmetric,
    trivial_subgroup,
    verify_quotient_iso,
)


def _make_regular_system(n: int) -> CosetSystem:
    return coset_system(trivial_subgroup(cyclic(n)))


def test_automorphisms_of_small_cyclic_groups():
    assert len(quotient_isomorphisms(_make_regular_system(3), _make_regular_system(3))) == 2
    isos = quotient_isomorphisms(_make_regular_system(4), _make_regular_system(4))
    assert [phi.mapping for phi in isos] == [(0, 1, 2, 3), (0, 3, 2, 1)]


def test_automorphisms_of_klein_group():
    system = coset_system(trivial_subgroup(direct_product(cyclic(2), cyclic(2))))
    assert len(quotient_isomorphisms(system, system)) == 6


def test_isomorphisms_between_different_groups():
    z6 = coset_system(subgroup_from(cyclic(6), [2]))
    s3 = coset_system(subgroup_from(symmetric(3), [3]))
    isos = quotient_isomorphisms(z6, s3)
    assert len(isos) == 1
    assert isos[0].apply(1) == frozenset({1, 2, 5})


def test_quotients_of_different_size_have_no_isomorphism():
    assert quotient_isomorphisms(_make_regular_system(2), _make_regular_system(3)) == []


def test_compose_with_inverse_is_identity():
    system = _make_regular_system(5)
    for phi in quotient_isomorphisms(system, system):
        assert same_map(compose(phi, inverse(phi)), identity_iso(system))
        assert same_map(compose(inverse(phi), phi), identity_iso(system))


def test_compose_runs_left_to_right():
    system = _make_regular_system(5)
    double = quotient_iso(system, system, {g: 2 * g % 5 for g in range(5)})
    triple = quotient_iso(system, system, {g: 3 * g % 5 for g in range(5)})
    assert compose(double, triple).apply(1) == frozenset({1})
    assert compose(double, double).apply(1) == frozenset({4})


def test_rep_map_may_use_any_coset_member():
    system = coset_system(subgroup_from(cyclic(4), [2]))
    phi = quotient_iso(system, system, {2: 0, 3: 1})
    assert phi.mapping == (0, 1)
    assert phi.image(frozenset({1, 3})) == frozenset({1, 3})


def test_non_homomorphism_is_rejected():
    system = _make_regular_system(4)
    with pytest.raises(GroupError, match="not a quotient isomorphism"):
        quotient_iso(system, system, {0: 0, 1: 2, 2: 1, 3: 3})


def test_identity_coset_must_be_fixed():
    system = _make_regular_system(2)
    verdict = verify_quotient_iso(QuotientIso(system, system, (1, 0)))
    assert not verdict
    assert "identity coset" in verdict.detail


def test_conflicting_and_missing_assignments():
    system = coset_system(subgroup_from(cyclic(4), [2]))
    with pytest.raises(GroupError, match="sent to both"):
        quotient_iso(system, system, {0: 0, 2: 1})
    with pytest.raises(GroupError, match="no image"):
        quotient_iso(system, system, {0: 0})


def test_non_bijective_mapping_is_rejected():
    system = _make_regular_system(3)
    with pytest.raises(GroupError, match="bijection"):
        QuotientIso(system, system, (0, 1, 1))


def test_non_normal_subgroup_is_a_precondition_error():
    system = coset_system(Subgroup(symmetric(3), frozenset({0, 1})))
    with pytest.raises(PreconditionError):
        QuotientIso(system, system, (0, 1, 2))


def test_inner_automorphisms():
    abelian = _make_regular_system(4)
    assert inner_automorphism(abelian, 1).mapping == (0, 1, 2, 3)
    s3 = coset_system(trivial_subgroup(symmetric(3)))
    swap = inner_automorphism(s3, 1)
    assert swap.mapping != tuple(range(6))
    assert same_map(compose(swap, swap), identity_iso(s3))
    assert verify_quotient_iso(swap)


def test_induced_isomorphism_on_coarser_subgroup():
    system = _make_regular_system(4)
    negate = quotient_iso(system, system, {g: -g % 4 for g in range(4)})
    m = subgroup_from(cyclic(4), [2])
    assert image_subgroup(negate, m).members == frozenset({0, 2})
    coarse = induce_on_coarser(negate, m)
    assert coarse.source.subgroup.members == frozenset({0, 2})
    assert coarse.mapping == (0, 1)


def test_image_subgroup_requires_containment():
    system = coset_system(subgroup_from(cyclic(4), [2]))
    with pytest.raises(GroupError, match="does not contain"):
        image_subgroup(identity_iso(system), trivial_subgroup(cyclic(4)))


def test_compose_rejects_mismatched_quotients():
    a = _make_regular_system(2)
    b = coset_system(subgroup_from(cyclic(4), [2]))
    with pytest.raises(GroupError, match="cannot compose"):
        compose(identity_iso(a), identity_iso(b))
