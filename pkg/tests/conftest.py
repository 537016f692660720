from __future__ import annotations

import sys
from pathlib import Path
from typing import Callable

import pytest

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

FIXTURES = SRC / "cosetra" / "fixtures"


@pytest.fixture
def fixture_path() -> Callable[[str], Path]:
    def _path(name: str) -> Path:
        return FIXTURES / name

    return _path


@pytest.fixture
def load_fixture():
    from cosetra.parsing import load_gtr, load_ra

    def _load(name: str):
        path = FIXTURES / name
        return load_gtr(path) if path.suffix == ".gtr" else load_ra(path)

    return _load
