"""Data types for semi-scaffolds, group triples and extracted frames."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from pydantic import BaseModel, Field

from ..groups.group import FiniteGroup
from ..groups.quotient import QuotientIso
from ..groups.subgroups import CosetSystem, Subgroup, product_subgroup, set_product
from ..measure.records import EquivalenceE, MeasuredAlgebra

__all__ = [
    "Pair",
    "Triple",
    "SemiScaffold",
    "ScaffoldSearch",
    "GroupTriple",
    "ConditionVerdict",
    "SemiFrameReport",
    "FrameRecord",
    "ExtractedFrame",
]

Pair = tuple[int, int]
Triple = tuple[int, int, int]


@dataclass(frozen=True)
class SemiScaffold:
    """Atoms a_xy for every E-pair, with a_xx = x and a_yx = a_xy˘."""

    order: tuple[int, ...]
    entries: Mapping[Pair, int]
    is_scaffold: bool = False

    def __getitem__(self, pair: Pair) -> int:
        return self.entries[pair]

    def position(self, x: int) -> int:
        return self.order.index(x)

    def before(self, x: int, y: int) -> bool:
        return self.position(x) < self.position(y)


@dataclass(frozen=True)
class ScaffoldSearch:
    """Outcome of an exhaustive scaffold search with its certificate."""

    scaffold: SemiScaffold | None
    nodes: int
    space: int

    @property
    def found(self) -> bool:
        return self.scaffold is not None


@dataclass(frozen=True)
class GroupTriple:
    """Groups G_x, quotient isomorphisms phi_xy and shifting cosets C_xyz.

    ``phi[(x, y)].source`` lists the cosets H_{xy,i} of H_xy and
    ``phi[(x, y)].target`` the cosets of K_xy; the coset K_{xy,i} is the image
    of H_{xy,i}. ``C[(x, y, z)]`` is a coset of H_xy;H_xz in G_x.
    """

    groups: Mapping[int, FiniteGroup]
    E: EquivalenceE
    phi: Mapping[Pair, QuotientIso]
    C: Mapping[Triple, frozenset[int]]
    labels: Mapping[int, str] = field(default_factory=dict)

    @property
    def indices(self) -> tuple[int, ...]:
        return self.E.indices

    def pairs(self) -> list[Pair]:
        return self.E.sorted_pairs()

    def triples(self) -> list[Triple]:
        return self.E.triples()

    def H(self, x: int, y: int) -> CosetSystem:
        return self.phi[(x, y)].source

    def K(self, x: int, y: int) -> CosetSystem:
        return self.phi[(x, y)].target

    def H_sub(self, x: int, y: int) -> Subgroup:
        return self.H(x, y).subgroup

    def K_sub(self, x: int, y: int) -> Subgroup:
        return self.K(x, y).subgroup

    def kappa(self, x: int, y: int) -> int:
        return self.H(x, y).count

    def K_coset(self, x: int, y: int, alpha: int) -> frozenset[int]:
        """K_{xy,alpha}, the image of H_{xy,alpha}."""
        phi = self.phi[(x, y)]
        return phi.target.cosets[phi.mapping[alpha]]

    def identity_coset(self, x: int, y: int, z: int) -> frozenset[int]:
        return product_subgroup(self.H_sub(x, y), self.H_sub(x, z)).members

    def otimes(self, x: int, y: int, alpha: int, z: int, beta: int) -> tuple[int, ...]:
        """Indices gamma with H_{xz,gamma} inside phi_xy^-1[K_{xy,alpha};H_{yz,beta}];C_xyz."""
        phi = self.phi[(x, y)]
        middle = set_product(self.groups[y], self.K_coset(x, y, alpha), self.H(y, z).cosets[beta])
        pre: set[int] = set()
        for i, coset in enumerate(phi.source.cosets):
            if phi.target.cosets[phi.mapping[i]] <= middle:
                pre |= coset
        shifted = set_product(self.groups[x], pre, self.C[(x, y, z)])
        return tuple(g for g, coset in enumerate(self.H(x, z).cosets) if coset <= shifted)

    def label(self, x: int) -> str:
        return self.labels.get(x, str(x))


class ConditionVerdict(BaseModel):
    name: str
    passed: bool
    checked: int = 0
    witness: str | None = None


class SemiFrameReport(BaseModel):
    conditions: list[ConditionVerdict] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def condition(self, name: str) -> ConditionVerdict:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(f"no condition named {name!r}")

    @property
    def failures(self) -> list[ConditionVerdict]:
        return [c for c in self.conditions if not c.passed]


@dataclass(frozen=True)
class FrameRecord:
    triple: GroupTriple
    frame: bool
    report: SemiFrameReport


@dataclass(frozen=True)
class ExtractedFrame:
    """A semi-frame extracted from a measured algebra along a semi-scaffold.

    ``atoms[(x, y, i)]`` is the atom H_{xy,i};a_xy and ``zeta[(x, y, z)]`` the
    least coset index of H_xz whose translate of a_xz lies below a_xy;a_yz.
    """

    measured: MeasuredAlgebra
    scaffold: SemiScaffold
    triple: GroupTriple
    zeta: Mapping[Triple, int]
    atoms: Mapping[tuple[int, int, int], int]
