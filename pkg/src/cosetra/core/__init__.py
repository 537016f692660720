from .errors import (
    CosetraError,
    DomainError,
    GroupError,
    InternalConsistencyError,
    PreconditionError,
    StageError,
    StructureMismatchError,
)
from .utils import fixture_names, load_pkg_text, render_template

__all__ = [
    "CosetraError",
    "DomainError",
    "GroupError",
    "InternalConsistencyError",
    "PreconditionError",
    "StageError",
    "StructureMismatchError",
    "fixture_names",
    "load_pkg_text",
    "render_template",
]
