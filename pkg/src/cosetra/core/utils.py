"""Packaged resources: report templates and the fixture library."""

from __future__ import annotations

import re
from importlib import resources

_PLACEHOLDER = re.compile(r"\{([a-z_]+)\}")


def load_pkg_text(rel_path: str) -> str:
    """Read a text resource shipped with the package (e.g. 'templates/report_header.txt')."""
    with resources.files("cosetra").joinpath(rel_path).open("r", encoding="utf-8") as f:
        return f.read()


def render_template(template: str, **values: object) -> str:
    """Fill ``{key}`` placeholders in one pass; every placeholder must have a value."""

    def fill(m: re.Match[str]) -> str:
        key = m.group(1)
        if key not in values:
            raise KeyError(f"template placeholder {{{key}}} has no value")
        v = values[key]
        return "" if v is None else str(v)

    return _PLACEHOLDER.sub(fill, template)


def fixture_names(suffix: str = "") -> list[str]:
    """Names of packaged fixture files, sorted, optionally filtered by suffix."""
    root = resources.files("cosetra").joinpath("fixtures")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(suffix))
