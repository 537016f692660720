from __future__ import annotations

from dataclasses import replace

import pytest

from cosetra.builder import build_coset_algebra
from cosetra.core.errors import DomainError, PreconditionError
from cosetra.frames import (
    FRAME_SUITES,
    ExtractedFrame,
    GroupTriple,
    SemiScaffold,
    abelian_quotients,
    build_semi_scaffold,
    extract_semi_frame,
    find_scaffold,
    forward_pairs,
    frame_record,
    qualifying_shifts,
    run_frame_suites,
    shifting_coset_well_defined,
    verify_semi_frame,
)
from cosetra.groups import cyclic
from cosetra.kernel import AtomStructure, complex_algebra, full_relation_algebra
from cosetra.measure import measure_algebra
from cosetra.parsing import parse_gtr

TWO_Z3_SWAPPED = """\
indices 2
group 0 cyclic 3
group 1 cyclic 3
H 0 1 0
K 0 1 0
phi 0 1 0:0 1:1 2:2
H 1 0 0
K 1 0 0
phi 1 0 0:0 1:2 2:1
"""

Z3_TWISTED = """\
indices 1
group 0 cyclic 3
H 0 0 0
K 0 0 0
phi 0 0 0:0 1:2 2:1
"""

TWO_Z2_SHIFTED = """\
indices 2
group 0 cyclic 2
group 1 cyclic 2
H 0 1 0
K 0 1 0
C 0 0 1 1
"""


def _extract(A: AtomStructure) -> ExtractedFrame:
    m = measure_algebra(A)
    search = find_scaffold(m)
    assert search.found
    return extract_semi_frame(m, search.scaffold)


# -----------------------------------------------------------------------------
# Scaffolds
# -----------------------------------------------------------------------------
def test_full_relation_algebra_has_a_scaffold():
    m = measure_algebra(full_relation_algebra(3))
    assert forward_pairs(m, m.indices) == [(0, 1), (0, 2), (1, 2)]
    search = find_scaffold(m)
    assert search.found
    assert search.space == 1
    assert search.nodes == 3
    s = search.scaffold
    assert s.is_scaffold
    assert s[(0, 1)] == 3
    assert s[(1, 0)] == m.structure.converse_map[3]
    assert s[(2, 2)] == 2


def test_semi_scaffold_takes_least_atoms():
    m = measure_algebra(full_relation_algebra(3))
    s = build_semi_scaffold(m)
    assert s.order == (0, 1, 2)
    assert s.is_scaffold
    assert s.before(0, 2)


def test_explicit_order_reverses_forward_pairs():
    m = measure_algebra(full_relation_algebra(3))
    s = find_scaffold(m, (2, 1, 0)).scaffold
    assert s.order == (2, 1, 0)
    assert s.position(2) == 0
    assert forward_pairs(m, s.order)[0] == (2, 1)


def test_order_must_permute_measurable_atoms():
    m = measure_algebra(full_relation_algebra(3))
    with pytest.raises(DomainError):
        build_semi_scaffold(m, (0, 1))


def test_scaffold_needs_a_measurable_algebra():
    A = AtomStructure.from_cycles(
        [(0, 0, 0), (0, 1, 1), (1, 1, 0), (1, 1, 1)], converse=[0, 1], identity=[0]
    )
    with pytest.raises(PreconditionError):
        find_scaffold(measure_algebra(A))


def test_separate_classes_need_no_forward_pairs(load_fixture):
    m = measure_algebra(load_fixture("cm_z2_pair.ra"))
    search = find_scaffold(m)
    assert search.found
    assert search.nodes == 0
    assert search.space == 1


# -----------------------------------------------------------------------------
# Extraction
# -----------------------------------------------------------------------------
def test_extract_from_full_relation_algebra():
    ef = _extract(full_relation_algebra(3))
    F = ef.triple
    assert F.indices == (0, 1, 2)
    assert all(F.kappa(x, y) == 1 for x, y in F.pairs())
    assert sorted(ef.atoms.values()) == list(range(9))
    assert frame_record(F).frame
    assert abelian_quotients(F)


def test_extract_from_group_complex_algebra():
    ef = _extract(complex_algebra(cyclic(4)))
    F = ef.triple
    assert F.groups[0].order == 4
    assert F.kappa(0, 0) == 4
    assert F.C[(0, 0, 0)] == frozenset({0})
    assert ef.zeta[(0, 0, 0)] == 0
    assert frame_record(F).frame


def test_extract_recovers_a_built_triple(load_fixture):
    built = build_coset_algebra(load_fixture("z4_half.gtr"))
    ef = _extract(built.structure)
    F = ef.triple
    # identity atoms R0_0_0 and R1_1_0
    assert F.indices == (0, 8)
    assert [F.groups[x].order for x in F.indices] == [4, 2]
    assert F.kappa(0, 8) == 2
    assert F.kappa(8, 0) == 2
    assert F.H_sub(0, 8).order == 2
    assert F.K_sub(0, 8).order == 1
    assert frame_record(F).frame


def test_extraction_rejects_invalid_semi_scaffold():
    m = measure_algebra(full_relation_algebra(2))
    bogus = SemiScaffold(order=(0, 1), entries={(0, 0): 0, (1, 1): 1, (0, 1): 2, (1, 0): 2})
    with pytest.raises(PreconditionError, match="semi-scaffold"):
        extract_semi_frame(m, bogus)


def test_shifting_coset_along_a_scaffold():
    m = measure_algebra(full_relation_algebra(3))
    s = find_scaffold(m).scaffold
    assert qualifying_shifts(m, s, 0, 1, 2) == [0]
    assert shifting_coset_well_defined(m, s, 0, 1, 2)


@pytest.mark.parametrize("A", [full_relation_algebra(3), complex_algebra(cyclic(4))], ids=["re3", "cm_z4"])
def test_frame_suites_hold(A):
    report = run_frame_suites(_extract(A))
    assert report.passed, [(r.name, r.witness) for r in report.failures]
    assert [r.name for r in report.results] == list(FRAME_SUITES)


def test_frame_suites_on_built_triple(load_fixture):
    ef = _extract(build_coset_algebra(load_fixture("z4_half.gtr")).structure)
    assert run_frame_suites(ef).passed


def test_frame_suite_selection_rejects_unknown_names():
    with pytest.raises(KeyError):
        run_frame_suites(_extract(full_relation_algebra(2)), ["nope"])


# -----------------------------------------------------------------------------
# Semi-frame conditions
# -----------------------------------------------------------------------------
@pytest.mark.parametrize("name", ["z2_single.gtr", "trivial_two.gtr", "z4_half.gtr"])
def test_fixture_triples_are_frames(load_fixture, name):
    F = load_fixture(name)
    report = verify_semi_frame(F)
    assert report.passed, [(c.name, c.witness) for c in report.failures]
    assert [c.name for c in report.conditions] == ["structure", "identity", "inverse", "image", "composition"]
    assert frame_record(F, report).frame


def test_non_trivial_diagonal_map_fails_identity():
    report = verify_semi_frame(parse_gtr(Z3_TWISTED))
    assert not report.passed
    assert not report.condition("identity").passed
    assert report.condition("identity").witness == "phi_00"


def test_reverse_map_must_be_inverse():
    report = verify_semi_frame(parse_gtr(TWO_Z3_SWAPPED))
    verdict = report.condition("inverse")
    assert not verdict.passed
    assert verdict.witness is not None
    assert not frame_record(parse_gtr(TWO_Z3_SWAPPED)).frame


def test_missing_shifting_coset_is_a_structure_failure(load_fixture):
    F: GroupTriple = load_fixture("trivial_two.gtr")
    broken = replace(F, C={})
    report = verify_semi_frame(broken)
    assert [c.name for c in report.conditions] == ["structure"]
    assert "missing data" in report.condition("structure").witness


def test_shifted_semi_frame_is_not_a_frame():
    F = parse_gtr(TWO_Z2_SHIFTED)
    assert F.C[(0, 0, 1)] == frozenset({1})
    report = verify_semi_frame(F)
    assert report.passed
    assert not frame_record(F, report).frame
    assert abelian_quotients(F)


def test_condition_lookup_raises_for_unknown_name(load_fixture):
    with pytest.raises(KeyError):
        verify_semi_frame(load_fixture("z2_single.gtr")).condition("nope")
