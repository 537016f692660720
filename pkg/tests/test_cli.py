from __future__ import annotations

import os
import subprocess
import sys
from pathlib import Path

import pandas as pd
import pytest

from cosetra.cli import main
from cosetra.parsing import load_gtr, load_ra, load_rel

SRC = Path(__file__).resolve().parents[1] / "src"
FIXTURES = SRC / "cosetra" / "fixtures"


@pytest.fixture(autouse=True)
def _isolated(monkeypatch, tmp_path):
    # keep a developer's .env and COSETRA_* variables out of the run
    monkeypatch.chdir(tmp_path)
    for key in list(os.environ):
        if key.startswith("COSETRA_"):
            monkeypatch.delenv(key)


def _run(capsys, *argv: str) -> tuple[int, str, str]:
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def _fx(name: str) -> str:
    return str(FIXTURES / name)


def test_check_report_marks_sampled_laws(capsys) -> None:
    status, out, _ = _run(capsys, "check", _fx("re2.ra"), "--threshold", "1", "--sample-pairs", "50")
    assert status == 0
    assert "element.R4: pass (sampled seed=42, 50 checked)" in out
    assert "atom.R4: pass (exhaustive" in out


def test_check_passes_on_re2(capsys) -> None:
    status, out, err = _run(capsys, "check", _fx("re2.ra"))
    assert status == 0
    assert out.startswith("# cosetra ")
    assert "command: check" in out
    assert "input: re2.ra" in out
    assert "verdict: relation algebra" in out


def test_check_fails_on_a_mutated_table(capsys) -> None:
    status, out, _ = _run(capsys, "check", _fx("mut_tarski.ra"))
    assert status == 1
    assert "not a relation algebra" in out


def test_malformed_file_is_an_input_error(capsys, tmp_path) -> None:
    bad = tmp_path / "bad.ra"
    bad.write_text("atoms 2\nconverse 0\nidentity 0 1\n", encoding="utf-8")
    status, out, err = _run(capsys, "check", str(bad))
    assert status == 2
    assert out == ""
    assert err.startswith("error: ")
    assert "bad.ra:2" in err


def test_missing_file_is_an_input_error(capsys, tmp_path) -> None:
    status, _, err = _run(capsys, "check", str(tmp_path / "nope.ra"))
    assert status == 2
    assert "cannot read input" in err


def test_invalid_flag_value_is_an_input_error(capsys) -> None:
    status, _, err = _run(capsys, "check", _fx("re2.ra"), "--threshold", "0")
    assert status == 2
    assert err.startswith("error: ")


def test_usage_errors_exit_2() -> None:
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def test_measure_reports_groups(capsys) -> None:
    status, out, _ = _run(capsys, "measure", _fx("cm_z3.ra"))
    assert status == 0
    assert "measurable: yes" in out
    assert "[measure]" in out


def test_represent_cm_z3_is_group_representable(capsys) -> None:
    status, out, _ = _run(capsys, "represent", _fx("cm_z3.ra"))
    assert status == 0
    assert "verdict: group_representable" in out
    assert "isomorphism: pass" in out


def test_represent_writes_report_and_witnesses(capsys, tmp_path) -> None:
    out_dir = tmp_path / "out"
    status, out, _ = _run(capsys, "represent", _fx("re3.ra"), "--out", str(out_dir))
    assert status == 0
    report = out_dir / "re3.represent.txt"
    assert report.read_text(encoding="utf-8") == out
    witnesses = load_rel(out_dir / "re3.group_representable.rel")
    assert len(witnesses) == 9
    assert "witnesses: re3.group_representable.rel" in out


def test_represent_on_a_non_relation_algebra(capsys) -> None:
    status, out, err = _run(capsys, "represent", _fx("mut_cycle.ra"))
    assert status == 2
    assert "not a relation algebra" in err


def test_roundtrip_stage_failure_names_the_stage(capsys) -> None:
    status, _, err = _run(capsys, "roundtrip", _fx("mut_tarski.ra"))
    assert status == 2
    assert "[axioms]" in err


def test_roundtrip_reruns_are_byte_identical(capsys, tmp_path) -> None:
    for name in ("a", "b"):
        assert _run(capsys, "roundtrip", _fx("cm_z4.ra"), "--out", str(tmp_path / name))[0] == 0
    first = (tmp_path / "a" / "cm_z4.roundtrip.txt").read_bytes()
    second = (tmp_path / "b" / "cm_z4.roundtrip.txt").read_bytes()
    assert first == second


def test_extract_writes_a_loadable_triple(capsys, tmp_path) -> None:
    status, out, _ = _run(capsys, "extract", _fx("re3.ra"), "--out", str(tmp_path))
    assert status == 0
    assert "written: re3.gtr" in out
    F = load_gtr(tmp_path / "re3.gtr")
    assert F.indices == (0, 1, 2)


def test_build_writes_structure_and_relations(capsys, tmp_path) -> None:
    status, out, _ = _run(capsys, "build", _fx("z4_half.gtr"), "--out", str(tmp_path))
    assert status == 0
    assert load_ra(tmp_path / "z4_half.ra").atom_count == 10
    assert len(load_rel(tmp_path / "z4_half.rel")) == 10
    assert (tmp_path / "z4_half.build.txt").exists()
    assert "semi-frame: yes" in out


def test_scaffold_search_and_order_option(capsys) -> None:
    status, out, _ = _run(capsys, "scaffold", _fx("re3.ra"), "--order", "e2,e1,e0")
    assert status == 0
    assert "found: yes" in out

    status, _, err = _run(capsys, "scaffold", _fx("re3.ra"), "--order", "e9")
    assert status == 2
    assert "unknown atom 'e9'" in err


def test_lemmas_pass_on_re2(capsys) -> None:
    status, out, _ = _run(capsys, "lemmas", _fx("re2.ra"))
    assert status == 0
    assert "[measurability lemmas]" in out
    assert "[frame lemmas]" in out
    assert "FAIL" not in out


def test_gen_writes_a_catalog(capsys, tmp_path) -> None:
    status, out, _ = _run(capsys, "gen", "--indices", "1", "--max-order", "2", "--out", str(tmp_path))
    assert status == 0
    assert "catalog: catalog.csv" in out
    frame = pd.read_csv(tmp_path / "catalog.csv")
    assert len(frame) >= 2
    assert (tmp_path / "gen.gen.txt").read_text(encoding="utf-8") == out


def test_gen_rejects_unknown_families(capsys) -> None:
    status, _, err = _run(capsys, "gen", "--groups", "free")
    assert status == 2
    assert "unknown group family" in err


@pytest.mark.slow
def test_gen_three_indices_finds_scaffolds(capsys) -> None:
    status, out, _ = _run(capsys, "gen", "--indices", "3", "--max-order", "1", "--no-axioms")
    assert status == 0
    assert "scaffold found:" in out


def test_environment_supplies_defaults(capsys, monkeypatch) -> None:
    monkeypatch.setenv("COSETRA_SEED", "7")
    status, out, _ = _run(capsys, "check", _fx("re2.ra"))
    assert status == 0
    assert "seed: 7" in out

    _, out, _ = _run(capsys, "check", _fx("re2.ra"), "--seed", "9")
    assert "seed: 9" in out


@pytest.mark.integration
def test_module_entry_point_writes_identical_reports(tmp_path) -> None:
    env = {k: v for k, v in os.environ.items() if not k.startswith("COSETRA_")}
    env["PYTHONPATH"] = str(SRC)
    reports = []
    for name in ("first", "second"):
        result = subprocess.run(
            [sys.executable, "-m", "cosetra", "represent", _fx("cm_z3.ra"), "--out", str(tmp_path / name)],
            capture_output=True,
            text=True,
            cwd=tmp_path,
            env=env,
            check=False,
        )
        assert result.returncode == 0, result.stderr
        assert "verdict: group_representable" in result.stdout
        reports.append((tmp_path / name / "cm_z3.represent.txt").read_bytes())
    assert reports[0] == reports[1]
