from __future__ import annotations

import hashlib
import logging
from contextvars import ContextVar

_run_id_var: ContextVar[str | None] = ContextVar("cosetra_run_id", default=None)

LOG_FORMAT = "%(levelname)s [%(run_id)s] %(name)s: %(message)s"


def set_run_id(run_id: str | None) -> None:
    _run_id_var.set(run_id)


def get_run_id(default: str | None = None) -> str | None:
    return _run_id_var.get(default)


def derive_run_id(*parts: object) -> str:
    """Stable short id for a run; identical inputs give identical ids."""
    h = hashlib.sha256("\x1f".join(str(p) for p in parts).encode("utf-8"))
    return h.hexdigest()[:10]


class RunContextFilter(logging.Filter):
    """Populate logging records with run_id from context vars."""

    def __init__(self, default: str = "-") -> None:
        super().__init__()
        self.default = default

    def filter(self, record: logging.LogRecord) -> bool:  # pragma: no cover - simple filter
        record.run_id = get_run_id(self.default) or self.default  # type: ignore[attr-defined]
        return True


def configure_logging(verbosity: int = 0) -> logging.Handler:
    """Attach a stderr handler with run context to the package logger."""
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler.addFilter(RunContextFilter())
    pkg_logger = logging.getLogger("cosetra")
    pkg_logger.addHandler(handler)
    pkg_logger.setLevel(level)
    return handler
