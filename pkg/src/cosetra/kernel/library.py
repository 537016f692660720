"""Standard atom structures: full relation algebras, complex algebras, products."""

from __future__ import annotations

import logging
from collections import defaultdict
from typing import Hashable, Iterable, Sequence

from ..core.errors import DomainError
from ..groups.group import FiniteGroup
from .bitsets import iter_bits
from .structure import AtomStructure

logger = logging.getLogger(__name__)

__all__ = [
    "MAX_POINTS",
    "Pair",
    "compose_pairs",
    "converse_pairs",
    "full_relation_algebra",
    "complex_algebra",
    "set_relation_algebra",
    "direct_product_algebra",
    "permute_atoms",
]

# Re(n) has n*n atoms
MAX_POINTS = 8

Pair = tuple[Hashable, Hashable]


def compose_pairs(left: Iterable[Pair], right: Iterable[Pair]) -> frozenset[Pair]:
    """Set-theoretic relational composition: (u, w) with (u, v) in left and (v, w) in right."""
    by_source: dict[Hashable, list[Hashable]] = defaultdict(list)
    for v, w in right:
        by_source[v].append(w)
    return frozenset((u, w) for u, v in left for w in by_source.get(v, ()))


def converse_pairs(pairs: Iterable[Pair]) -> frozenset[Pair]:
    return frozenset((v, u) for u, v in pairs)


def set_relation_algebra(
    relations: Sequence[Iterable[Pair]],
    names: Sequence[str] | None = None,
    *,
    label: str = "",
) -> AtomStructure:
    """The atom structure whose atoms are the given concrete relations.

    The relations must be nonempty and pairwise disjoint, closed under
    converse, and every composite must be a union of them; identity atoms are
    the relations made of diagonal pairs.
    """
    rels = [frozenset(r) for r in relations]
    n = len(rels)
    if names is None:
        names = [f"a{i}" for i in range(n)]
    owner: dict[Pair, int] = {}
    for i, r in enumerate(rels):
        if not r:
            raise DomainError(f"relation {names[i]} is empty")
        for p in r:
            if p in owner:
                raise DomainError(f"relations {names[owner[p]]} and {names[i]} share the pair {p}")
            owner[p] = i

    identity: list[int] = []
    for i, r in enumerate(rels):
        diagonal = sum(1 for u, v in r if u == v)
        if diagonal == len(r):
            identity.append(i)
        elif diagonal:
            raise DomainError(f"relation {names[i]} meets the diagonal without lying inside it")

    index = {r: i for i, r in enumerate(rels)}
    converse: list[int] = []
    for i, r in enumerate(rels):
        c = index.get(converse_pairs(r))
        if c is None:
            raise DomainError(f"the converse of relation {names[i]} is not one of the atoms")
        converse.append(c)

    table: list[list[int]] = []
    for i, r in enumerate(rels):
        row = []
        for j, s in enumerate(rels):
            composite = compose_pairs(r, s)
            mask = 0
            for p in composite:
                if p not in owner:
                    raise DomainError(f"{names[i]};{names[j]} contains {p}, outside every atom")
                mask |= 1 << owner[p]
            if sum(len(rels[k]) for k in iter_bits(mask)) != len(composite):
                raise DomainError(f"{names[i]};{names[j]} is not a union of atoms")
            row.append(mask)
        table.append(row)

    return AtomStructure(
        atom_names=tuple(names),
        converse_map=tuple(converse),
        identity_atoms=tuple(identity),
        composition=tuple(tuple(row) for row in table),
        label=label,
    )


def full_relation_algebra(n: int) -> AtomStructure:
    """Re(n): all relations on n points; atom e{i} is (i, i), atom r{i}_{j} is (i, j)."""
    if not 1 <= n <= MAX_POINTS:
        raise DomainError(f"Re(n) is supported for 1 <= n <= {MAX_POINTS}, got {n}")
    pairs = [(i, i) for i in range(n)] + [(i, j) for i in range(n) for j in range(n) if i != j]
    names = [f"e{i}" if i == j else f"r{i}_{j}" for i, j in pairs]
    return set_relation_algebra([[p] for p in pairs], names, label=f"Re({n})")


def complex_algebra(group: FiniteGroup) -> AtomStructure:
    """Cm(G): one atom per group element, g;h = {g*h}."""
    m = group.order
    return AtomStructure(
        atom_names=tuple(group.label(g) for g in range(m)),
        converse_map=group.inverse,
        identity_atoms=(group.identity,),
        composition=tuple(tuple(1 << group.mul(g, h) for h in range(m)) for g in range(m)),
        label=f"Cm({group})",
    )


def direct_product_algebra(left: AtomStructure, right: AtomStructure) -> AtomStructure:
    """Atoms of ``left`` followed by atoms of ``right``; cross products are zero."""
    n = left.atom_count
    names = list(left.atom_names) + list(right.atom_names)
    if len(set(names)) != len(names):
        names = [f"A.{s}" for s in left.atom_names] + [f"B.{s}" for s in right.atom_names]
    table = [list(row) + [0] * right.atom_count for row in left.composition]
    table += [[0] * n + [m << n for m in row] for row in right.composition]
    return AtomStructure(
        atom_names=tuple(names),
        converse_map=left.converse_map + tuple(c + n for c in right.converse_map),
        identity_atoms=left.identity_atoms + tuple(e + n for e in right.identity_atoms),
        composition=tuple(tuple(row) for row in table),
        label=f"{left.label or 'A'}x{right.label or 'B'}",
    )


def permute_atoms(structure: AtomStructure, perm: Sequence[int]) -> AtomStructure:
    """Relabel atom i as perm[i]."""
    n = structure.atom_count
    if sorted(perm) != list(range(n)):
        raise DomainError(f"{list(perm)} is not a permutation of 0..{n - 1}")

    def remap(mask: int) -> int:
        out = 0
        for k in iter_bits(mask):
            out |= 1 << perm[k]
        return out

    names = [""] * n
    converse = [0] * n
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        names[perm[i]] = structure.atom_names[i]
        converse[perm[i]] = perm[structure.converse_map[i]]
        for j in range(n):
            table[perm[i]][perm[j]] = remap(structure.composition[i][j])
    return AtomStructure(
        atom_names=tuple(names),
        converse_map=tuple(converse),
        identity_atoms=tuple(perm[e] for e in structure.identity_atoms),
        composition=tuple(tuple(row) for row in table),
        label=structure.label,
    )
