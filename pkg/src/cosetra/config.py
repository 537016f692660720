"""Run configuration: CLI flags over ``COSETRA_*`` environment variables and ``.env``, over defaults."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Mapping

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .builder.generate import GROUP_FAMILIES, GenerationBounds
from .kernel.axioms import DEFAULT_SAMPLE, DEFAULT_SEED, DEFAULT_THRESHOLD
from .represent.pipeline import CheckOptions

__all__ = ["RunConfig", "load_config"]


class RunConfig(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="COSETRA_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    command: str = ""
    inputs: list[Path] = Field(default_factory=list)
    order: list[int] | None = None
    threshold: int = Field(default=DEFAULT_THRESHOLD, ge=1)
    seed: int = DEFAULT_SEED
    out: Path | None = None
    exhaustive: bool | None = None
    threads: int | None = Field(default=None, ge=1)
    sample_pairs: int = Field(default=DEFAULT_SAMPLE, ge=1)

    indices: int = Field(default=1, ge=1)
    min_order: int = Field(default=1, ge=1)
    max_order: int = Field(default=3, ge=1)
    groups: list[str] | None = None
    shifted: bool = False
    check_axioms: bool = True
    max_triples: int = Field(default=10_000, ge=1)

    @field_validator("groups")
    @classmethod
    def _known_families(cls, v: list[str] | None) -> list[str] | None:
        for name in v or ():
            if name not in GROUP_FAMILIES:
                raise ValueError(f"unknown group family {name!r}")
        return v

    def bounds(self) -> GenerationBounds:
        return GenerationBounds(
            indices=self.indices,
            min_order=self.min_order,
            max_order=self.max_order,
            groups=tuple(self.groups) if self.groups is not None else None,
            shifted=self.shifted,
            check_axioms=self.check_axioms,
            max_triples=self.max_triples,
        )

    def check_options(self) -> CheckOptions:
        return CheckOptions(
            threshold=self.threshold,
            seed=self.seed,
            sample_pairs=self.sample_pairs,
            exhaustive=self.exhaustive,
            workers=self.threads,
        )


def load_config(overrides: Mapping[str, Any] | None = None) -> RunConfig:
    """Explicit values win; ``None`` overrides fall through to environment and defaults."""
    given = {k: v for k, v in (overrides or {}).items() if v is not None}
    return RunConfig(**given)
