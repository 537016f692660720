from __future__ import annotations

import os
from pathlib import Path

import pytest
from pydantic import ValidationError

from cosetra.config import RunConfig, load_config
from cosetra.kernel.axioms import DEFAULT_SAMPLE, DEFAULT_SEED, DEFAULT_THRESHOLD


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    for key in list(os.environ):
        if key.startswith("COSETRA_"):
            monkeypatch.delenv(key)


def test_defaults() -> None:
    cfg = load_config()
    assert cfg.threshold == DEFAULT_THRESHOLD
    assert cfg.seed == DEFAULT_SEED
    assert cfg.sample_pairs == DEFAULT_SAMPLE
    assert cfg.out is None
    assert cfg.exhaustive is None
    assert cfg.max_order == 3


def test_environment_and_overrides(monkeypatch) -> None:
    monkeypatch.setenv("COSETRA_THRESHOLD", "8")
    monkeypatch.setenv("COSETRA_GROUPS", '["cyclic", "dihedral"]')
    cfg = load_config({"seed": 5, "threshold": None})
    assert cfg.threshold == 8
    assert cfg.seed == 5
    assert cfg.groups == ["cyclic", "dihedral"]

    assert load_config({"threshold": 3}).threshold == 3


def test_dotenv_file_is_read(tmp_path) -> None:
    (tmp_path / ".env").write_text("COSETRA_SEED=11\nCOSETRA_OUT=reports\n", encoding="utf-8")
    cfg = load_config()
    assert cfg.seed == 11
    assert cfg.out == Path("reports")


@pytest.mark.parametrize(
    "overrides",
    [{"threshold": 0}, {"threads": 0}, {"sample_pairs": 0}, {"groups": ["free"]}],
)
def test_invalid_values_are_rejected(overrides) -> None:
    with pytest.raises(ValidationError):
        load_config(overrides)


def test_bounds_and_check_options() -> None:
    cfg = RunConfig(indices=2, max_order=4, groups=["cyclic"], shifted=True, threads=2, exhaustive=False)
    bounds = cfg.bounds()
    assert (bounds.indices, bounds.min_order, bounds.max_order) == (2, 1, 4)
    assert bounds.groups == ("cyclic",)
    assert bounds.shifted
    options = cfg.check_options()
    assert options.workers == 2
    assert options.exhaustive is False
    assert options.threshold == DEFAULT_THRESHOLD
