from __future__ import annotations

import pytest

from cosetra.builder import build_coset_algebra
from cosetra.frames import FRAME_SUITES, extract_semi_frame, find_scaffold, run_frame_suites
from cosetra.groups import cyclic, direct_product, symmetric
from cosetra.kernel import complex_algebra, full_relation_algebra
from cosetra.measure import MEASURE_SUITES, LemmaReport, measure_algebra, run_lemma_suites
from cosetra.parsing import parse_gtr

TWO_Z3_INVERTED = """\
indices 2
group 0 cyclic 3
group 1 cyclic 3
H 0 1 0
K 0 1 0
phi 0 1 0:0 1:2 2:1
"""

THREE_Z2 = """\
indices 3
group 0 cyclic 2
group 1 cyclic 2
group 2 cyclic 2
H 0 1 0
K 0 1 0
phi 0 1 0:0 1:1
H 0 2 0
K 0 2 0
phi 0 2 0:0 1:1
H 1 2 0
K 1 2 0
phi 1 2 0:0 1:1
"""


def _assert_clean(report: LemmaReport) -> None:
    assert report.passed, [(r.name, r.witness) for r in report.failures]
    assert {r.name for r in report.results} == set(MEASURE_SUITES)


@pytest.mark.parametrize("name", ["re2.ra", "cm_z2.ra", "cm_z3.ra", "cm_z4.ra", "cm_z2_pair.ra"])
def test_suites_hold_on_small_fixtures(load_fixture, name):
    _assert_clean(run_lemma_suites(measure_algebra(load_fixture(name))))


def test_suites_hold_on_full_relation_algebra_of_three_points():
    _assert_clean(run_lemma_suites(measure_algebra(full_relation_algebra(3))))


@pytest.mark.slow
def test_suites_hold_on_non_abelian_group():
    _assert_clean(run_lemma_suites(measure_algebra(complex_algebra(symmetric(3)))))


@pytest.mark.slow
def test_suites_hold_on_klein_group():
    _assert_clean(run_lemma_suites(measure_algebra(complex_algebra(direct_product(cyclic(2), cyclic(2))))))


def test_suites_count_their_instances():
    report = run_lemma_suites(measure_algebra(complex_algebra(cyclic(4))), ["identity", "stabilizer_bounds"])
    assert [r.name for r in report.results] == ["identity", "stabilizer_bounds"]
    assert report.result("identity").checked == 1
    assert report.result("stabilizer_bounds").checked > 0


def test_suite_selection_rejects_unknown_names():
    with pytest.raises(KeyError, match="unknown suites"):
        run_lemma_suites(measure_algebra(full_relation_algebra(2)), ["nope"])


def test_limit_skips_large_rectangles():
    report = run_lemma_suites(measure_algebra(complex_algebra(cyclic(4))), ["stabilizer_bounds"], limit=2)
    assert report.result("stabilizer_bounds").checked == 0


def test_suites_run_in_parallel():
    m = measure_algebra(complex_algebra(cyclic(3)))
    serial = run_lemma_suites(m, workers=1)
    threaded = run_lemma_suites(measure_algebra(complex_algebra(cyclic(3))), workers=4)
    assert serial == threaded


@pytest.mark.parametrize(
    "source", ["z4_half.gtr", TWO_Z3_INVERTED, THREE_Z2], ids=["z4_half", "z3_inverted", "three_z2"]
)
def test_every_suite_holds_on_multi_index_frames(load_fixture, source):
    F = load_fixture(source) if source.endswith(".gtr") else parse_gtr(source)
    m = measure_algebra(build_coset_algebra(F).structure)
    assert len(m.indices) == len(F.indices)
    report = run_lemma_suites(m)
    _assert_clean(report)
    assert report.result("relative_product").checked > 0
    assert report.result("atomic_product").checked > 0

    search = find_scaffold(m)
    assert search.found
    framed = run_frame_suites(extract_semi_frame(m, search.scaffold))
    assert framed.passed, [(r.name, r.witness) for r in framed.failures]
    assert [r.name for r in framed.results] == list(FRAME_SUITES)
    assert all(r.checked > 0 for r in framed.results if r.name in ("atom_partition", "derived_converse"))
