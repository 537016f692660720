"""Atom structures (finite relation algebras presented by atoms) and their elements."""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..core.errors import DomainError, StructureMismatchError
from .bitsets import bits, iter_bits, mask_of

__all__ = ["MAX_ATOMS", "AtomStructure", "Element", "peircean_images"]

MAX_ATOMS = 64
COMPOSE_CACHE_SIZE = 1 << 16


def peircean_images(i: int, j: int, k: int, converse: Sequence[int]) -> tuple[tuple[int, int, int], ...]:
    """The six rotations of a cycle (i, j, k) meaning k <= i;j."""
    ci, cj, ck = converse[i], converse[j], converse[k]
    return (
        (i, j, k),
        (ci, k, j),
        (k, cj, i),
        (ck, i, cj),
        (j, ck, ci),
        (cj, ci, ck),
    )


class AtomStructure(BaseModel):
    """A finite relation algebra given by atoms, converse, identity atoms and cycles.

    ``composition[i][j]`` is the bitmask of atoms below ``i;j``. Instances are
    immutable; derived tables are computed lazily and cached on the instance.
    Peircean symmetry of the table is not enforced here: the loaders close
    tables under rotation and the axiom verifier reports asymmetric ones.
    """

    model_config = ConfigDict(frozen=True)

    atom_names: tuple[str, ...]
    converse_map: tuple[int, ...]
    identity_atoms: tuple[int, ...]
    composition: tuple[tuple[int, ...], ...]
    label: str = ""

    @field_validator("identity_atoms")
    @classmethod
    def _normalize_identity(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sorted(set(v)))

    @model_validator(mode="after")
    def _check_invariants(self) -> "AtomStructure":
        n = len(self.atom_names)
        if n == 0:
            raise ValueError("an atom structure needs at least one atom")
        if n > MAX_ATOMS:
            raise ValueError(f"{n} atoms exceed the supported maximum of {MAX_ATOMS}")
        dups = sorted(name for name, count in Counter(self.atom_names).items() if count > 1)
        if dups:
            raise ValueError(f"duplicate atom name {dups[0]!r}")
        for name in self.atom_names:
            if not name or any(ch.isspace() for ch in name):
                raise ValueError(f"atom name {name!r} must be non-empty without whitespace")
        if len(self.converse_map) != n:
            raise ValueError(f"converse_map has {len(self.converse_map)} entries, expected {n}")
        for i, c in enumerate(self.converse_map):
            if not 0 <= c < n:
                raise ValueError(f"converse of atom {i} is {c}, outside 0..{n - 1}")
        for i, c in enumerate(self.converse_map):
            if self.converse_map[c] != i:
                raise ValueError(
                    f"converse_map is not an involution at atom {i} ({i} -> {c} -> {self.converse_map[c]})"
                )
        if not self.identity_atoms:
            raise ValueError("identity_atoms must be nonempty")
        for e in self.identity_atoms:
            if not 0 <= e < n:
                raise ValueError(f"identity atom {e} outside 0..{n - 1}")
            if self.converse_map[e] != e:
                raise ValueError(f"identity atom {e} is not its own converse")
        if len(self.composition) != n or any(len(row) != n for row in self.composition):
            raise ValueError(f"composition must be a {n}x{n} table of atom masks")
        full = (1 << n) - 1
        for i, row in enumerate(self.composition):
            for j, m in enumerate(row):
                if m < 0 or m & ~full:
                    raise ValueError(f"composition({i},{j}) mentions atoms outside 0..{n - 1}")
        return self

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------
    @classmethod
    def from_cycles(
        cls,
        cycles: Iterable[tuple[int, int, int]],
        *,
        converse: Sequence[int],
        identity: Iterable[int],
        names: Sequence[str] | None = None,
        close: bool = True,
        label: str = "",
    ) -> "AtomStructure":
        """Build a structure from cycle triples (i, j, k) meaning k <= i;j.

        With ``close`` every triple is completed by its Peircean rotations.
        """
        n = len(converse)
        if names is None:
            names = [f"a{i}" for i in range(n)]
        table = [[0] * n for _ in range(n)]
        # a malformed converse is reported by model validation below
        close = close and all(0 <= c < n for c in converse)
        for i, j, k in cycles:
            for t in (i, j, k):
                if not 0 <= t < n:
                    raise DomainError(f"cycle ({i}, {j}, {k}) mentions atom {t} outside 0..{n - 1}")
            images = peircean_images(i, j, k, converse) if close else ((i, j, k),)
            for a, b, c in images:
                table[a][b] |= 1 << c
        return cls(
            atom_names=tuple(names),
            converse_map=tuple(converse),
            identity_atoms=tuple(identity),
            composition=tuple(tuple(row) for row in table),
            label=label,
        )

    # ------------------------------------------------------------------
    # Derived data
    # ------------------------------------------------------------------
    @cached_property
    def atom_count(self) -> int:
        return len(self.atom_names)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.atom_count) - 1

    @cached_property
    def identity_mask(self) -> int:
        return mask_of(self.identity_atoms)

    @cached_property
    def digest(self) -> str:
        payload = json.dumps(
            [self.atom_names, self.converse_map, self.identity_atoms, self.composition],
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    @cached_property
    def structure_id(self) -> str:
        return self.digest[:16]

    @cached_property
    def cycles(self) -> tuple[tuple[int, int, int], ...]:
        """All triples (i, j, k) with k <= i;j, ascending."""
        return tuple(
            (i, j, k)
            for i, row in enumerate(self.composition)
            for j, m in enumerate(row)
            for k in iter_bits(m)
        )

    @cached_property
    def cycle_tensor(self) -> np.ndarray:
        """Boolean tensor C with C[i, j, k] iff k <= i;j."""
        n = self.atom_count
        t = np.zeros((n, n, n), dtype=bool)
        for i, j, k in self.cycles:
            t[i, j, k] = True
        return t

    @cached_property
    def compose_cache(self) -> Callable[[int, int], int]:
        """Bounded, thread-safe memo of mask products; ``cache_info()`` reports its use."""
        return lru_cache(maxsize=COMPOSE_CACHE_SIZE)(self._compose_masks)

    # ------------------------------------------------------------------
    # Mask-level algebra
    # ------------------------------------------------------------------
    def compose(self, left: int, right: int) -> int:
        """Relative product of two element masks, by complete distributivity."""
        return self.compose_cache(left, right)

    def _compose_masks(self, left: int, right: int) -> int:
        out = 0
        comp = self.composition
        right_bits = bits(right)
        for i in iter_bits(left):
            row = comp[i]
            for j in right_bits:
                out |= row[j]
        return out

    def converse_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= 1 << self.converse_map[i]
        return out

    def complement_mask(self, mask: int) -> int:
        return self.full_mask & ~mask

    def rectangle_mask(self, x: int, y: int) -> int:
        return self.compose(self.compose(x, self.full_mask), y)

    # ------------------------------------------------------------------
    # Element factories
    # ------------------------------------------------------------------
    def from_mask(self, mask: int) -> "Element":
        if mask < 0 or mask & ~self.full_mask:
            raise DomainError(f"mask {mask:#x} mentions atoms outside 0..{self.atom_count - 1}")
        return Element(self.structure_id, mask, self)

    def element(self, atoms: Iterable[int]) -> "Element":
        return self.from_mask(mask_of(atoms))

    def atom(self, i: int) -> "Element":
        if not 0 <= i < self.atom_count:
            raise DomainError(f"atom {i} outside 0..{self.atom_count - 1}")
        return self.from_mask(1 << i)

    @property
    def zero(self) -> "Element":
        return self.from_mask(0)

    @property
    def unit(self) -> "Element":
        return self.from_mask(self.full_mask)

    @property
    def identity(self) -> "Element":
        return self.from_mask(self.identity_mask)

    def index_of(self, name: str) -> int:
        try:
            return self.atom_names.index(name)
        except ValueError:
            raise KeyError(f"unknown atom name {name!r}") from None

    def describe(self, mask: int) -> str:
        return "{" + ",".join(self.atom_names[i] for i in iter_bits(mask)) + "}"


@dataclass(frozen=True, slots=True)
class Element:
    """A set of atoms of one structure; compared by structure id and mask."""

    structure_id: str
    mask: int
    structure: AtomStructure = field(compare=False, repr=False)

    @property
    def atoms(self) -> tuple[int, ...]:
        return bits(self.mask)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def _same(self, other: "Element") -> None:
        if self.structure_id != other.structure_id:
            raise StructureMismatchError(
                f"elements belong to different structures ({self.structure_id} vs {other.structure_id})"
            )

    def __or__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.structure_id, self.mask | other.mask, self.structure)

    def __and__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.structure_id, self.mask & other.mask, self.structure)

    def __invert__(self) -> "Element":
        return Element(self.structure_id, self.structure.complement_mask(self.mask), self.structure)

    def __le__(self, other: "Element") -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    def __ge__(self, other: "Element") -> bool:
        return other.__le__(self)

    def __str__(self) -> str:
        return self.structure.describe(self.mask)
