"""Subgroups, normality and canonical coset systems."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Sequence

from ..core.errors import GroupError
from .group import FiniteGroup

logger = logging.getLogger(__name__)

__all__ = [
    "Side",
    "Subgroup",
    "CosetSystem",
    "subgroup_from",
    "trivial_subgroup",
    "whole_group",
    "is_normal",
    "coset_system",
    "set_product",
    "product_subgroup",
    "conjugate",
    "intersection",
    "all_subgroups",
    "normal_subgroups",
    "quotient_table",
]

Side = Literal["left", "right"]


@dataclass(frozen=True)
class Subgroup:
    """A subset of ``parent`` closed under multiplication and inverses."""

    parent: FiniteGroup = field(compare=False, repr=False)
    members: frozenset[int]

    def __post_init__(self) -> None:
        g = self.parent
        if g.identity not in self.members:
            raise GroupError(f"{self.sorted_members} does not contain the identity {g.identity}")
        for a in self.members:
            if not 0 <= a < g.order:
                raise GroupError(f"element {a} is outside {g}")
            if g.inv(a) not in self.members:
                raise GroupError(f"{self.sorted_members} lacks the inverse of {a}")
            for b in self.members:
                if g.mul(a, b) not in self.members:
                    raise GroupError(f"{self.sorted_members} is not closed: {a}*{b}={g.mul(a, b)}")

    @property
    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, g: object) -> bool:
        return g in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted_members)

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def __str__(self) -> str:
        return "{" + ",".join(self.parent.label(g) for g in self.sorted_members) + "}"


@dataclass(frozen=True)
class CosetSystem:
    """An indexed listing of the left or right cosets of a subgroup.

    Coset 0 is the subgroup itself; ``representatives[i]`` lies in ``cosets[i]``.
    """

    subgroup: Subgroup
    side: Side
    cosets: tuple[frozenset[int], ...]
    representatives: tuple[int, ...]
    _lookup: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        g = self.subgroup.parent
        h = self.subgroup.members
        if not self.cosets or self.cosets[0] != h:
            raise GroupError("coset 0 must be the subgroup itself")
        if len(self.representatives) != len(self.cosets):
            raise GroupError("one representative per coset is required")
        lookup: dict[int, int] = {}
        for i, (coset, rep) in enumerate(zip(self.cosets, self.representatives)):
            if rep not in coset:
                raise GroupError(f"representative {rep} is not in coset {i}")
            expected = {g.mul(rep, k) for k in h} if self.side == "left" else {g.mul(k, rep) for k in h}
            if coset != expected:
                raise GroupError(f"coset {i} is not the {self.side} coset of {rep}")
            for a in coset:
                if a in lookup:
                    raise GroupError(f"element {a} lies in cosets {lookup[a]} and {i}")
                lookup[a] = i
        if len(lookup) != g.order:
            raise GroupError(f"cosets of {self.subgroup} do not cover {g}")
        object.__setattr__(self, "_lookup", lookup)

    @property
    def parent(self) -> FiniteGroup:
        return self.subgroup.parent

    @property
    def count(self) -> int:
        return len(self.cosets)

    def index_of(self, g: int) -> int:
        try:
            return self._lookup[g]
        except KeyError:
            raise GroupError(f"element {g} is not in {self.parent}") from None

    def index_of_set(self, members: Iterable[int]) -> int:
        s = frozenset(members)
        i = self.index_of(min(s)) if s else -1
        if i < 0 or self.cosets[i] != s:
            raise GroupError(f"{sorted(s)} is not a coset of {self.subgroup}")
        return i

    def reindexed(self, order: Sequence[int]) -> "CosetSystem":
        """The same cosets listed as ``cosets[order[0]], cosets[order[1]], ...``."""
        if sorted(order) != list(range(self.count)) or order[0] != 0:
            raise GroupError(f"{list(order)} is not a reindexing that keeps coset 0 first")
        return CosetSystem(
            subgroup=self.subgroup,
            side=self.side,
            cosets=tuple(self.cosets[i] for i in order),
            representatives=tuple(self.representatives[i] for i in order),
        )


def subgroup_from(parent: FiniteGroup, generators: Iterable[int]) -> Subgroup:
    """Closure of the generators and the identity under multiplication."""
    members = {parent.identity}
    frontier = list(members)
    gens = sorted(set(generators))
    for a in gens:
        if not 0 <= a < parent.order:
            raise GroupError(f"generator {a} is outside {parent}")
    frontier.extend(gens)
    members.update(gens)
    while frontier:
        a = frontier.pop()
        for b in gens:
            for c in (parent.mul(a, b), parent.mul(b, a)):
                if c not in members:
                    members.add(c)
                    frontier.append(c)
    return Subgroup(parent, frozenset(members))


def trivial_subgroup(parent: FiniteGroup) -> Subgroup:
    return Subgroup(parent, frozenset({parent.identity}))


def whole_group(parent: FiniteGroup) -> Subgroup:
    return Subgroup(parent, frozenset(parent.elements))


def conjugate(h: Subgroup, g: int) -> Subgroup:
    """g*H*g^-1."""
    p = h.parent
    gi = p.inv(g)
    return Subgroup(p, frozenset(p.mul(p.mul(g, k), gi) for k in h.members))


def is_normal(h: Subgroup) -> bool:
    p = h.parent
    return all(
        p.mul(p.mul(g, k), p.inv(g)) in h.members for g in p.elements for k in h.members
    )


def coset_system(h: Subgroup, side: Side = "left") -> CosetSystem:
    """Canonical system: the subgroup first, then cosets ordered by least member."""
    p = h.parent
    cosets = [h.members]
    reps = [min(h.members)]
    seen = set(h.members)
    for g in p.elements:
        if g in seen:
            continue
        coset = frozenset(p.mul(g, k) for k in h.members) if side == "left" else frozenset(
            p.mul(k, g) for k in h.members
        )
        cosets.append(coset)
        reps.append(g)
        seen |= coset
    return CosetSystem(subgroup=h, side=side, cosets=tuple(cosets), representatives=tuple(reps))


def set_product(parent: FiniteGroup, left: Iterable[int], right: Iterable[int]) -> frozenset[int]:
    rs = list(right)
    return frozenset(parent.mul(a, b) for a in left for b in rs)


def product_subgroup(h: Subgroup, k: Subgroup) -> Subgroup:
    """H*K, which must itself be a subgroup (always the case if one factor is normal)."""
    if h.parent is not k.parent and h.parent != k.parent:
        raise GroupError("product_subgroup needs subgroups of the same group")
    members = set_product(h.parent, h.members, k.members)
    try:
        return Subgroup(h.parent, members)
    except GroupError as exc:
        raise GroupError(f"{h}*{k} is not a subgroup: {exc}") from exc


def intersection(h: Subgroup, k: Subgroup) -> Subgroup:
    return Subgroup(h.parent, h.members & k.members)


def all_subgroups(parent: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, joined up from the cyclic ones; sorted by (order, members)."""
    found: dict[frozenset[int], Subgroup] = {}
    for g in parent.elements:
        s = subgroup_from(parent, [g])
        found.setdefault(s.members, s)
    frontier = list(found)
    while frontier:
        fresh: list[frozenset[int]] = []
        for a in frontier:
            for b in list(found):
                joined = subgroup_from(parent, a | b)
                if joined.members not in found:
                    found[joined.members] = joined
                    fresh.append(joined.members)
        frontier = fresh
    return sorted(found.values(), key=lambda s: (s.order, s.sorted_members))


def normal_subgroups(parent: FiniteGroup) -> list[Subgroup]:
    return [s for s in all_subgroups(parent) if is_normal(s)]


def quotient_table(system: CosetSystem) -> tuple[tuple[int, ...], ...]:
    """Multiplication table of G/H over coset indices; H must be normal."""
    if not is_normal(system.subgroup):
        raise GroupError(f"{system.subgroup} is not normal in {system.parent}")
    p = system.parent
    reps = system.representatives
    return tuple(tuple(system.index_of(p.mul(a, b)) for b in reps) for a in reps)
