"""Measurable atoms, their permutation groups and the equivalence E on them."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from ..core.errors import DomainError, GroupError, InternalConsistencyError, PreconditionError
from ..groups.group import FiniteGroup, make_group
from ..kernel.bitsets import bits, iter_bits
from ..kernel.structure import AtomStructure, Element
from ..utils.cache import LockedLRUCache

logger = logging.getLogger(__name__)

__all__ = [
    "MeasurableAtomRecord",
    "EquivalenceE",
    "MeasuredAlgebra",
    "as_mask",
    "submasks",
    "functional_atoms",
    "measurable_atoms",
    "is_measurable_algebra",
    "equivalence_E",
    "measure_algebra",
]


def as_mask(a: Element | int) -> int:
    return a.mask if isinstance(a, Element) else a


def submasks(mask: int) -> Iterator[int]:
    """Nonzero sub-masks of ``mask`` in ascending numeric order."""
    atoms = bits(mask)
    for code in range(1, 1 << len(atoms)):
        out = 0
        for pos in iter_bits(code):
            out |= 1 << atoms[pos]
        yield out


@dataclass(frozen=True)
class MeasurableAtomRecord:
    """A measurable subidentity atom x with its group G_x.

    Group element ``i`` is the atom ``group_atoms[i]``; element 0 is x itself
    and the rest follow in ascending atom order.
    """

    atom: int
    square: Element
    group: FiniteGroup
    group_atoms: tuple[int, ...]

    @property
    def measure(self) -> int:
        return self.group.order

    @cached_property
    def element_of_atom(self) -> dict[int, int]:
        return {a: i for i, a in enumerate(self.group_atoms)}

    def atom_of(self, g: int) -> int:
        return self.group_atoms[g]

    def group_element(self, atom: int) -> int:
        try:
            return self.element_of_atom[atom]
        except KeyError:
            raise DomainError(f"atom {atom} is not a function below the square of {self.atom}") from None

    def elements_of_mask(self, mask: int) -> frozenset[int]:
        """Group elements whose atoms lie below ``mask``; every atom must belong to G_x."""
        return frozenset(self.group_element(a) for a in iter_bits(mask))


def functional_atoms(structure: AtomStructure) -> frozenset[int]:
    """Atoms f with f˘;f below the identity."""
    idm = structure.identity_mask
    return frozenset(
        f
        for f in range(structure.atom_count)
        if structure.compose(structure.converse_mask(1 << f), 1 << f) & ~idm == 0
    )


def _group_of(structure: AtomStructure, x: int, members: list[int]) -> FiniteGroup:
    index = {a: i for i, a in enumerate(members)}
    table: list[list[int]] = []
    for f in members:
        row = []
        for g in members:
            prod = structure.compose(1 << f, 1 << g)
            if prod.bit_count() != 1 or (prod.bit_length() - 1) not in index:
                raise InternalConsistencyError(
                    f"{structure.atom_names[f]};{structure.atom_names[g]} = {structure.describe(prod)} "
                    f"is not a single function below the square of {structure.atom_names[x]}"
                )
            row.append(index[prod.bit_length() - 1])
        table.append(row)
    name = structure.atom_names[x]
    try:
        group = make_group(table, labels=[structure.atom_names[a] for a in members], name=f"G_{name}")
    except GroupError as exc:
        raise InternalConsistencyError(f"functions below the square of {name} do not form a group: {exc}") from exc
    if group.identity != 0:
        raise InternalConsistencyError(f"{structure.atom_names[x]} is not the identity of its group")
    for i, f in enumerate(members):
        if members[group.inv(i)] != structure.converse_map[f]:
            raise InternalConsistencyError(f"group inverse of {structure.atom_names[f]} is not its converse")
    return group


def measurable_atoms(structure: AtomStructure) -> list[MeasurableAtomRecord]:
    """Subidentity atoms whose square consists of functions, with their groups."""
    functional = functional_atoms(structure)
    records: list[MeasurableAtomRecord] = []
    for x in structure.identity_atoms:
        sq = structure.rectangle_mask(1 << x, 1 << x)
        below = bits(sq)
        if not all(a in functional for a in below):
            logger.debug("atom %s is not measurable", structure.atom_names[x])
            continue
        members = [x] + [a for a in below if a != x]
        group = _group_of(structure, x, members)
        records.append(
            MeasurableAtomRecord(atom=x, square=structure.from_mask(sq), group=group, group_atoms=tuple(members))
        )
    return records


def is_measurable_algebra(structure: AtomStructure) -> bool:
    return {r.atom for r in measurable_atoms(structure)} == set(structure.identity_atoms)


@dataclass(frozen=True)
class EquivalenceE:
    """The relation x E y iff x;1;y is nonzero, over the measurable atoms."""

    indices: tuple[int, ...]
    pairs: frozenset[tuple[int, int]]
    classes: tuple[tuple[int, ...], ...]

    def related(self, x: int, y: int) -> bool:
        return (x, y) in self.pairs

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def triples(self) -> list[tuple[int, int, int]]:
        """E_3: all (x, y, z) with x E y and y E z, ascending."""
        return [
            (x, y, z)
            for x in self.indices
            for y in self.indices
            for z in self.indices
            if (x, y) in self.pairs and (y, z) in self.pairs
        ]

    def class_of(self, x: int) -> tuple[int, ...]:
        for c in self.classes:
            if x in c:
                return c
        raise DomainError(f"{x} is not a measurable atom")


def equivalence_E(structure: AtomStructure, records: list[MeasurableAtomRecord]) -> EquivalenceE:
    indices = tuple(sorted(r.atom for r in records))
    pairs = frozenset(
        (x, y) for x in indices for y in indices if structure.rectangle_mask(1 << x, 1 << y)
    )
    for x in indices:
        if (x, x) not in pairs:
            raise InternalConsistencyError(f"{structure.atom_names[x]};1;{structure.atom_names[x]} is zero")
    for x, y in pairs:
        if (y, x) not in pairs:
            raise InternalConsistencyError(f"E is not symmetric at ({x}, {y})")
        for z in indices:
            if (y, z) in pairs and (x, z) not in pairs:
                raise InternalConsistencyError(f"E is not transitive at ({x}, {y}, {z})")
    classes: list[tuple[int, ...]] = []
    seen: set[int] = set()
    for x in indices:
        if x not in seen:
            cls = tuple(y for y in indices if (x, y) in pairs)
            classes.append(cls)
            seen.update(cls)
    return EquivalenceE(indices=indices, pairs=pairs, classes=tuple(classes))


@dataclass
class MeasuredAlgebra:
    """An atom structure with its measurable atoms, E, and per-element caches."""

    structure: AtomStructure
    records: dict[int, MeasurableAtomRecord]
    E: EquivalenceE
    cache: LockedLRUCache = field(default_factory=LockedLRUCache, repr=False, compare=False)

    @property
    def indices(self) -> tuple[int, ...]:
        return self.E.indices

    @property
    def measurable(self) -> bool:
        return set(self.records) == set(self.structure.identity_atoms)

    def record(self, x: int) -> MeasurableAtomRecord:
        try:
            return self.records[x]
        except KeyError:
            raise PreconditionError(f"atom {x} is not a measurable atom") from None

    def group(self, x: int) -> FiniteGroup:
        return self.record(x).group

    def rectangle(self, x: int, y: int) -> int:
        return self.structure.rectangle_mask(1 << x, 1 << y)

    def atoms_in(self, x: int, y: int) -> tuple[int, ...]:
        return bits(self.rectangle(x, y))

    def left_translate(self, g: int, x: int, mask: int) -> int:
        return self.structure.compose(1 << self.record(x).atom_of(g), mask)

    def right_translate(self, mask: int, g: int, y: int) -> int:
        return self.structure.compose(mask, 1 << self.record(y).atom_of(g))

    def name(self, atom: int) -> str:
        return self.structure.atom_names[atom]


def measure_algebra(structure: AtomStructure) -> MeasuredAlgebra:
    records = measurable_atoms(structure)
    E = equivalence_E(structure, records)
    m = MeasuredAlgebra(structure=structure, records={r.atom: r for r in records}, E=E)
    logger.info(
        "measured %s: %d measurable atoms, %d E-classes",
        structure.label or structure.structure_id,
        len(records),
        len(E.classes),
    )
    return m
