"""The ``.rel`` witness format: ``rel x y alpha:`` headers followed by ``pair x.g y.h`` lines."""

from __future__ import annotations

import re
from pathlib import Path
from typing import Mapping

from ..builder.relations import CosetAtomIndex, Point, Relation, point_label
from .line_parser import Directive, LineParser

__all__ = ["RelParser", "parse_rel", "load_rel", "dump_rel", "write_rel"]

_POINT = re.compile(r"(\d+)\.(\d+)")


class RelParser(LineParser[dict[CosetAtomIndex, Relation]]):
    def _point(self, d: Directive, token: str) -> Point:
        m = _POINT.fullmatch(token)
        if m is None:
            raise self.error(f"expected a point x.g, got {token!r}", d.line)
        return int(m.group(1)), int(m.group(2))

    def to_model(self, directives: list[Directive]) -> dict[CosetAtomIndex, Relation]:
        out: dict[CosetAtomIndex, set] = {}
        current: CosetAtomIndex | None = None
        for d in directives:
            if d.keyword == "rel":
                if len(d.args) != 3 or not d.args[2].endswith(":"):
                    raise self.error("expected 'rel <x> <y> <alpha>:'", d.line)
                x, y, alpha = self.ints(d, (d.args[0], d.args[1], d.args[2][:-1]))
                current = CosetAtomIndex(x, y, alpha)
                if current in out:
                    raise self.error(f"duplicate block for {current.name()}", d.line)
                out[current] = set()
            elif d.keyword == "pair":
                if current is None:
                    raise self.error("'pair' before any 'rel' header", d.line)
                if len(d.args) != 2:
                    raise self.error("'pair' expects two points", d.line)
                u, v = self._point(d, d.args[0]), self._point(d, d.args[1])
                if u[0] != current.x or v[0] != current.y:
                    raise self.error(f"pair {d.args[0]} {d.args[1]} lies outside block {current.name()}", d.line)
                out[current].add((u, v))
            else:
                raise self.error(f"unknown directive {d.keyword!r}", d.line)
        return {idx: Relation(frozenset(pairs)) for idx, pairs in out.items()}


def parse_rel(text: str, source: str = "<string>") -> dict[CosetAtomIndex, Relation]:
    return RelParser(source).parse(text)


def load_rel(path: str | Path) -> dict[CosetAtomIndex, Relation]:
    return RelParser.load(path)


def dump_rel(relations: Mapping[CosetAtomIndex, Relation], notes: Mapping[CosetAtomIndex, str] | None = None) -> str:
    """Blocks in index order; ``notes`` become comments after the header."""
    lines: list[str] = []
    for idx in sorted(relations):
        header = f"rel {idx.x} {idx.y} {idx.alpha}:"
        if notes and idx in notes:
            header += f"  # {notes[idx]}"
        lines.append(header)
        lines += [f"pair {point_label(u)} {point_label(v)}" for u, v in relations[idx]]
    return "\n".join(lines) + "\n"


def write_rel(
    relations: Mapping[CosetAtomIndex, Relation],
    path: str | Path,
    notes: Mapping[CosetAtomIndex, str] | None = None,
) -> Path:
    p = Path(path)
    p.write_text(dump_rel(relations, notes), encoding="utf-8")
    return p
