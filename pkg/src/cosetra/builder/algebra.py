"""The coset relation algebra C[F] and, for frames, the group relation algebra G[F]."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..core.errors import DomainError, InternalConsistencyError, PreconditionError
from ..frames.models import FrameRecord, GroupTriple
from ..frames.verify import verify_semi_frame
from ..kernel.bitsets import iter_bits
from ..kernel.library import set_relation_algebra
from ..kernel.structure import AtomStructure
from .relations import CosetAtomIndex, Point, Relation, atomic_relation

logger = logging.getLogger(__name__)

__all__ = [
    "CosetAlgebra",
    "Discrepancy",
    "coset_atoms",
    "converse_index",
    "otimes",
    "build_coset_algebra",
    "build_group_algebra",
    "relation_atoms",
    "compare_otimes_composition",
]


@dataclass(frozen=True)
class CosetAlgebra:
    """An atom structure whose atom i is R_{index[i]}, realized by ``relations[i]``."""

    structure: AtomStructure
    triple: GroupTriple
    index: tuple[CosetAtomIndex, ...]
    relations: tuple[Relation, ...]
    _position: dict[CosetAtomIndex, int] = field(init=False, repr=False, compare=False)
    _owner: dict[tuple[Point, Point], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_position", {idx: i for i, idx in enumerate(self.index)})
        owner = {p: i for i, r in enumerate(self.relations) for p in r.pairs}
        object.__setattr__(self, "_owner", owner)

    def atom_of(self, idx: CosetAtomIndex) -> int:
        try:
            return self._position[idx]
        except KeyError:
            raise DomainError(f"{idx.name()} is not an atom of this algebra") from None

    def owner(self, pair: tuple[Point, Point]) -> int | None:
        return self._owner.get(pair)


def coset_atoms(F: GroupTriple) -> list[CosetAtomIndex]:
    """All R_{xy,alpha}, by pair and then coset index."""
    return [CosetAtomIndex(x, y, a) for x, y in F.pairs() for a in range(F.kappa(x, y))]


def converse_index(F: GroupTriple, idx: CosetAtomIndex) -> CosetAtomIndex:
    """(y, x, beta) with H_{yx,beta} = phi_xy of the inverse of H_{xy,alpha}."""
    x, y = idx.x, idx.y
    g = F.groups[x]
    coset = F.H(x, y).cosets[idx.alpha]
    inv = frozenset(g.inv(k) for k in coset)
    beta = F.H(y, x).index_of_set(F.phi[(x, y)].image(inv))
    return CosetAtomIndex(y, x, beta)


def otimes(F: GroupTriple, left: CosetAtomIndex, right: CosetAtomIndex) -> tuple[CosetAtomIndex, ...]:
    """The shifted composition R_left (x) R_right; empty when the middle indices differ."""
    if left.y != right.x:
        return ()
    x, y, z = left.x, left.y, right.y
    return tuple(CosetAtomIndex(x, z, g) for g in F.otimes(x, y, left.alpha, z, right.alpha))


def build_coset_algebra(F: GroupTriple) -> CosetAlgebra:
    """C[F] with composition computed on cosets; the result may fail the axioms."""
    report = verify_semi_frame(F)
    if not report.passed:
        first = report.failures[0]
        raise PreconditionError(f"not a coset semi-frame: condition {first.name} fails at {first.witness}")
    index = coset_atoms(F)
    position = {idx: i for i, idx in enumerate(index)}
    table = []
    for left in index:
        row = []
        for right in index:
            mask = 0
            for c in otimes(F, left, right):
                mask |= 1 << position[c]
            row.append(mask)
        table.append(tuple(row))
    identity = tuple(position[CosetAtomIndex(x, x, 0)] for x in F.indices)
    structure = AtomStructure(
        atom_names=tuple(idx.name() for idx in index),
        converse_map=tuple(position[converse_index(F, idx)] for idx in index),
        identity_atoms=identity,
        composition=tuple(table),
        label="C[F]",
    )
    relations = tuple(atomic_relation(F, idx) for idx in index)
    logger.info("built coset algebra: %d atoms over %d indices", len(index), len(F.indices))
    return CosetAlgebra(structure=structure, triple=F, index=tuple(index), relations=relations)


def build_group_algebra(record: FrameRecord) -> CosetAlgebra:
    """G[F]: the atomic relations composed set-theoretically."""
    if not record.frame:
        raise PreconditionError("the group relation algebra needs a frame")
    F = record.triple
    index = coset_atoms(F)
    relations = tuple(atomic_relation(F, idx) for idx in index)
    try:
        structure = set_relation_algebra(
            [r.pairs for r in relations],
            [idx.name() for idx in index],
            label="G[F]",
        )
    except DomainError as exc:
        raise InternalConsistencyError(f"atomic relations of a frame are not closed: {exc}") from exc
    logger.info("built group relation algebra: %d atoms", len(index))
    return CosetAlgebra(structure=structure, triple=F, index=tuple(index), relations=relations)


def relation_atoms(relation: Relation, algebra: CosetAlgebra) -> int | None:
    """Mask of the atoms whose relations union to ``relation``, or None."""
    mask = 0
    for p in relation.pairs:
        i = algebra.owner(p)
        if i is None:
            return None
        mask |= 1 << i
    if sum(len(algebra.relations[i]) for i in iter_bits(mask)) != len(relation):
        return None
    return mask


@dataclass(frozen=True)
class Discrepancy:
    left: int
    right: int
    otimes: int
    composed: int | None

    def describe(self, algebra: CosetAlgebra) -> str:
        s = algebra.structure
        composed = "not a union of atoms" if self.composed is None else s.describe(self.composed)
        return (
            f"{s.atom_names[self.left]} (x) {s.atom_names[self.right]} = {s.describe(self.otimes)}"
            f" but composition gives {composed}"
        )


def compare_otimes_composition(algebra: CosetAlgebra) -> list[Discrepancy]:
    """Atom pairs where the shifted composition differs from relational composition."""
    n = algebra.structure.atom_count
    found: list[Discrepancy] = []
    for i in range(n):
        for j in range(n):
            composed = relation_atoms(algebra.relations[i].compose(algebra.relations[j]), algebra)
            expected = algebra.structure.composition[i][j]
            if composed != expected:
                found.append(Discrepancy(i, j, expected, composed))
    logger.info("otimes vs composition: %d discrepancies", len(found))
    return found
