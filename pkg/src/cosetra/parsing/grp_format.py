"""The ``.grp`` group-table format: ``order m``, optional ``labels``/``name``, then m table rows."""

from __future__ import annotations

from pathlib import Path

from ..core.errors import GroupError
from ..groups.group import FiniteGroup, make_group
from .line_parser import Directive, LineParser

__all__ = ["GrpParser", "parse_grp", "load_grp", "dump_grp", "write_grp"]


class GrpParser(LineParser[FiniteGroup]):
    def to_model(self, directives: list[Directive]) -> FiniteGroup:
        order: int | None = None
        labels: list[str] | None = None
        name = ""
        rows: list[list[int]] = []
        first_row: int | None = None
        for d in directives:
            if d.keyword == "order":
                (order,) = self.ints(d, count=1)
                if order < 1:
                    raise self.error(f"group order must be positive, got {order}", d.line)
            elif d.keyword == "labels":
                labels = list(d.args)
            elif d.keyword == "name":
                name = " ".join(d.args)
            elif d.keyword.lstrip("-").isdigit():
                if order is None:
                    raise self.error("table rows must follow 'order <m>'", d.line)
                row = self.ints(d, (d.keyword, *d.args), count=order)
                for v in row:
                    if not 0 <= v < order:
                        raise self.error(f"entry {v} outside 0..{order - 1}", d.line)
                first_row = first_row or d.line
                rows.append(row)
            else:
                raise self.error(f"unknown directive {d.keyword!r}", d.line)
        if order is None:
            raise self.error("missing 'order <m>' line")
        if len(rows) != order:
            raise self.error(f"expected {order} table rows, got {len(rows)}", first_row)
        if labels is not None and len(labels) != order:
            raise self.error(f"{len(labels)} labels for a group of order {order}")
        try:
            return make_group(rows, labels=labels, name=name)
        except GroupError as exc:
            raise self.error(f"not a group: {exc}", first_row) from exc


def parse_grp(text: str, source: str = "<string>") -> FiniteGroup:
    return GrpParser(source).parse(text)


def load_grp(path: str | Path) -> FiniteGroup:
    return GrpParser.load(path)


def dump_grp(group: FiniteGroup) -> str:
    lines = [f"order {group.order}"]
    if group.name:
        lines.append(f"name {group.name}")
    if group.labels is not None:
        lines.append("labels " + " ".join(group.labels))
    lines += [" ".join(map(str, row)) for row in group.table]
    return "\n".join(lines) + "\n"


def write_grp(group: FiniteGroup, path: str | Path) -> Path:
    p = Path(path)
    p.write_text(dump_grp(group), encoding="utf-8")
    return p
