"""Parsing-specific exception types."""

from __future__ import annotations

from ..core.errors import CosetraError


class FormatError(CosetraError, ValueError):
    """Raised when a text file cannot be parsed into the expected structure."""

    def __init__(self, message: str, *, source: str = "<string>", line: int | None = None) -> None:
        self.message = message
        self.source = source
        self.line = line
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
