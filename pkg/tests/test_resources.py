from __future__ import annotations

import pytest

from cosetra.core import fixture_names, load_pkg_text, render_template
from cosetra.kernel import verify_ra_axioms
from cosetra.parsing import load_gtr, load_ra
from cosetra.reports import header


def test_fixture_library_lists_every_format():
    assert "re2.ra" in fixture_names(".ra")
    assert fixture_names(".gtr") == ["trivial_two.gtr", "z2_single.gtr", "z4_half.gtr"]


@pytest.mark.parametrize("name", [n for n in fixture_names(".ra") if not n.startswith("mut_")])
def test_every_library_fixture_is_a_relation_algebra(fixture_path, name):
    assert verify_ra_axioms(load_ra(fixture_path(name))).passed


@pytest.mark.parametrize("name", [n for n in fixture_names(".ra") if n.startswith("mut_")])
def test_every_mutation_fixture_fails_an_atom_law(fixture_path, name):
    report = verify_ra_axioms(load_ra(fixture_path(name)))
    assert not report.passed


@pytest.mark.parametrize("name", fixture_names(".gtr"))
def test_every_triple_fixture_loads(fixture_path, name):
    assert load_gtr(fixture_path(name)).indices


def test_render_template_fills_in_one_pass():
    assert render_template("{a}-{ab}", a="{ab}", ab=2) == "{ab}-2"
    assert render_template("x={x}", x=None) == "x="
    with pytest.raises(KeyError, match="placeholder"):
        render_template("{missing}")


def test_report_header_echoes_run_settings(fixture_path):
    text = header("check", [fixture_path("re2.ra")], version="0.1.0", seed=42, threshold=12)
    assert text.splitlines()[0] == "# cosetra 0.1.0"
    assert "input: re2.ra" in text
    assert "seed: 42" in text
    assert "threshold: 12" in text
    assert "{" not in text
    assert load_pkg_text("templates/report_header.txt").startswith("# cosetra {version}")
