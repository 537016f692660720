"""Shared machinery for the line-oriented text formats."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Generic, Iterator, TypeVar

from .exceptions import FormatError

T = TypeVar("T")


@dataclass(frozen=True)
class Directive:
    keyword: str
    args: tuple[str, ...]
    line: int


class LineParser(Generic[T]):
    """Split text into keyword directives; subclasses turn them into a model.

    ``#`` starts a comment; blank lines are skipped.
    """

    def __init__(self, source: str = "<string>", base: Path | None = None) -> None:
        self.source = source
        self.base = base

    def error(self, message: str, line: int | None = None) -> FormatError:
        return FormatError(message, source=self.source, line=line)

    def directives(self, text: str) -> Iterator[Directive]:
        for number, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].strip()
            if not body:
                continue
            keyword, *args = body.split()
            yield Directive(keyword, tuple(args), number)

    def ints(self, d: Directive, args: tuple[str, ...] | None = None, count: int | None = None) -> list[int]:
        values = d.args if args is None else args
        if count is not None and len(values) != count:
            raise self.error(f"'{d.keyword}' expects {count} values, got {len(values)}", d.line)
        try:
            return [int(v) for v in values]
        except ValueError:
            raise self.error(f"'{d.keyword}' expects integers, got {' '.join(values)!r}", d.line) from None

    def to_model(self, directives: list[Directive]) -> T:
        raise NotImplementedError

    def parse(self, text: str) -> T:
        return self.to_model(list(self.directives(text)))

    @classmethod
    def load(cls, path: str | Path) -> T:
        p = Path(path)
        try:
            text = p.read_text(encoding="utf-8")
        except OSError as exc:
            raise FormatError(f"cannot read file: {exc.strerror or exc}", source=str(p)) from exc
        return cls(source=str(p), base=p.parent).parse(text)
