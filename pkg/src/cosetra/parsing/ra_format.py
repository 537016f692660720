"""The ``.ra`` atom-structure format.

::

    atoms 4
    names e0 e1 s t
    converse 0 1 3 2
    identity 0 1
    cycles closed
    cycle 0 2 2

``cycle i j k`` means atom k lies below i;j. With ``cycles closed`` (the
default) every listed cycle is completed by its Peircean rotations, so the
loaded table is normalized. ``cycles literal`` is the mode of ``dump_ra``
output and of the mutation fixtures: the table is taken as written, neither
normalized nor rejected, and a table that is not closed under rotation is
logged as a WARNING and left for the axiom verifier to report.
"""

from __future__ import annotations

import logging
from pathlib import Path

from pydantic import ValidationError

from ..kernel.structure import AtomStructure, peircean_images
from .line_parser import Directive, LineParser

logger = logging.getLogger(__name__)

__all__ = ["RaParser", "parse_ra", "load_ra", "dump_ra", "write_ra"]

_KEYWORDS = ("atoms", "names", "converse", "identity", "cycles", "cycle", "label")


class RaParser(LineParser[AtomStructure]):
    def to_model(self, directives: list[Directive]) -> AtomStructure:
        seen: dict[str, Directive] = {}
        cycles: list[tuple[int, int, int]] = []
        n: int | None = None
        for d in directives:
            if d.keyword not in _KEYWORDS:
                raise self.error(f"unknown directive {d.keyword!r}", d.line)
            if d.keyword != "cycle" and d.keyword in seen:
                raise self.error(f"duplicate '{d.keyword}' line (first on line {seen[d.keyword].line})", d.line)
            if d.keyword not in ("atoms", "label") and n is None:
                raise self.error("the first directive must be 'atoms <n>'", d.line)
            if d.keyword == "atoms":
                (n,) = self.ints(d, count=1)
                if n < 1:
                    raise self.error(f"atom count must be positive, got {n}", d.line)
            elif d.keyword == "cycle":
                i, j, k = self.ints(d, count=3)
                for t in (i, j, k):
                    if not 0 <= t < n:
                        raise self.error(f"atom {t} outside 0..{n - 1}", d.line)
                cycles.append((i, j, k))
                continue
            seen[d.keyword] = d
        if n is None:
            raise self.error("missing 'atoms <n>' line")
        for required in ("converse", "identity"):
            if required not in seen:
                raise self.error(f"missing '{required}' line")

        converse_line = seen["converse"]
        converse = self.ints(converse_line)
        if len(converse) != n:
            raise self.error(f"converse lists {len(converse)} atoms, expected {n}", converse_line.line)
        identity = self.ints(seen["identity"])
        names = list(seen["names"].args) if "names" in seen else None
        if names is not None and len(names) != n:
            raise self.error(f"names lists {len(names)} atoms, expected {n}", seen["names"].line)
        mode = seen["cycles"].args if "cycles" in seen else ("closed",)
        if mode not in (("closed",), ("literal",)):
            raise self.error("'cycles' must be 'closed' or 'literal'", seen["cycles"].line)
        label = " ".join(seen["label"].args) if "label" in seen else ""

        try:
            A = AtomStructure.from_cycles(
                cycles,
                converse=converse,
                identity=identity,
                names=names,
                close=mode == ("closed",),
                label=label,
            )
        except ValidationError as exc:
            message = exc.errors()[0]["msg"].removeprefix("Value error, ")
            raise self.error(message, self._blame(message, seen)) from exc
        if mode == ("literal",):
            present = set(A.cycles)
            missing = {r for c in present for r in peircean_images(*c, A.converse_map)} - present
            if missing:
                i, j, k = min(missing)
                logger.warning(
                    "%s: literal cycle table is not closed under rotation (%d missing, first %d %d %d)",
                    self.source,
                    len(missing),
                    i,
                    j,
                    k,
                )
        return A

    @staticmethod
    def _blame(message: str, seen: dict[str, Directive]) -> int | None:
        for key, marker in (("converse", "convers"), ("identity", "identity"), ("names", "name")):
            if marker in message and key in seen:
                return seen[key].line
        return seen["atoms"].line


def parse_ra(text: str, source: str = "<string>") -> AtomStructure:
    return RaParser(source).parse(text)


def load_ra(path: str | Path) -> AtomStructure:
    return RaParser.load(path)


def dump_ra(A: AtomStructure) -> str:
    """Canonical literal form: cycles sorted, one per line."""
    lines = []
    if A.label:
        lines.append(f"label {A.label}")
    lines += [
        f"atoms {A.atom_count}",
        "names " + " ".join(A.atom_names),
        "converse " + " ".join(map(str, A.converse_map)),
        "identity " + " ".join(map(str, A.identity_atoms)),
        "cycles literal",
    ]
    lines += [f"cycle {i} {j} {k}" for i, j, k in A.cycles]
    return "\n".join(lines) + "\n"


def write_ra(A: AtomStructure, path: str | Path) -> Path:
    p = Path(path)
    p.write_text(dump_ra(A), encoding="utf-8")
    return p
