"""Exception hierarchy shared by all cosetra subpackages."""

from __future__ import annotations

__all__ = [
    "CosetraError",
    "StructureMismatchError",
    "DomainError",
    "PreconditionError",
    "InternalConsistencyError",
    "GroupError",
    "StageError",
]


class CosetraError(Exception):
    """Root of every error raised on purpose by cosetra."""


class StructureMismatchError(CosetraError, ValueError):
    """Raised when elements of two different atom structures are combined."""


class DomainError(CosetraError, ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class PreconditionError(CosetraError, ValueError):
    """Raised when a documented precondition of an operation does not hold."""


class InternalConsistencyError(CosetraError, RuntimeError):
    """A property guaranteed for relation algebras failed on the given input."""


class GroupError(CosetraError, ValueError):
    """Subgroup, coset or quotient misuse; the message carries a witness."""


class StageError(CosetraError):
    """Failure inside a multi-stage pipeline, tagged with the stage name."""

    def __init__(self, stage: str, cause: BaseException) -> None:
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause
