"""Concrete binary relations over the disjoint union of the groups G_x."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from ..frames.models import GroupTriple
from ..kernel.library import compose_pairs, converse_pairs

__all__ = [
    "Point",
    "Relation",
    "CosetAtomIndex",
    "point_label",
    "atomic_relation",
    "identity_relation",
    "unit_relation",
]

# (x, g): group element g of G_x
Point = tuple[int, int]


def point_label(p: Point) -> str:
    return f"{p[0]}.{p[1]}"


@dataclass(frozen=True)
class Relation:
    """A finite set of ordered pairs of base points."""

    pairs: frozenset[tuple[Point, Point]]

    @classmethod
    def of(cls, pairs: Iterable[tuple[Point, Point]]) -> "Relation":
        return cls(frozenset(pairs))

    def compose(self, other: "Relation") -> "Relation":
        return Relation(compose_pairs(self.pairs, other.pairs))

    def converse(self) -> "Relation":
        return Relation(converse_pairs(self.pairs))

    def __or__(self, other: "Relation") -> "Relation":
        return Relation(self.pairs | other.pairs)

    def __le__(self, other: "Relation") -> bool:
        return self.pairs <= other.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[Point, Point]]:
        return iter(sorted(self.pairs))


@dataclass(frozen=True, order=True)
class CosetAtomIndex:
    """The atom R_{xy,alpha}: an E-pair and a coset index of H_xy."""

    x: int
    y: int
    alpha: int

    def name(self) -> str:
        return f"R{self.x}_{self.y}_{self.alpha}"


def atomic_relation(F: GroupTriple, idx: CosetAtomIndex) -> Relation:
    """R_{xy,alpha}: (g, h) with the K_xy-coset of h equal to phi_xy of the H_xy-coset of g*g_alpha."""
    x, y = idx.x, idx.y
    phi = F.phi[(x, y)]
    gx = F.groups[x]
    rep = phi.source.representatives[idx.alpha]
    return Relation(
        frozenset(((x, g), (y, h)) for g in gx.elements for h in phi.apply(gx.mul(g, rep)))
    )


def identity_relation(F: GroupTriple) -> Relation:
    return Relation(frozenset(((x, g), (x, g)) for x in F.indices for g in F.groups[x].elements))


def unit_relation(F: GroupTriple) -> Relation:
    return Relation(
        frozenset(
            ((x, g), (y, h))
            for x, y in F.pairs()
            for g in F.groups[x].elements
            for h in F.groups[y].elements
        )
    )
