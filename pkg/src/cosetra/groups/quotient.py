"""Isomorphisms between quotient groups, their coarsenings and inner automorphisms."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Mapping

from ..core.errors import GroupError, PreconditionError
from .subgroups import CosetSystem, Subgroup, coset_system, is_normal, quotient_table

logger = logging.getLogger(__name__)

__all__ = [
    "QuotientIso",
    "IsoVerdict",
    "quotient_iso",
    "verify_quotient_iso",
    "identity_iso",
    "compose",
    "inverse",
    "same_map",
    "image_subgroup",
    "induce_on_coarser",
    "inner_automorphism",
    "quotient_isomorphisms",
]


@dataclass(frozen=True)
class QuotientIso:
    """A bijection from the cosets of ``source`` to the cosets of ``target``.

    ``mapping[i]`` is the target coset index of source coset ``i``. Both
    subgroups must be normal; the homomorphism property is checked by
    :func:`verify_quotient_iso`.
    """

    source: CosetSystem
    target: CosetSystem
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        for side, system in (("source", self.source), ("target", self.target)):
            if not is_normal(system.subgroup):
                raise PreconditionError(f"{side} subgroup {system.subgroup} is not normal in {system.parent}")
        if len(self.mapping) != self.source.count or sorted(self.mapping) != list(range(self.target.count)):
            raise GroupError(
                f"coset map {list(self.mapping)} is not a bijection "
                f"between {self.source.count} and {self.target.count} cosets"
            )

    def __call__(self, index: int) -> int:
        return self.mapping[index]

    def image(self, members: frozenset[int]) -> frozenset[int]:
        """Image of a source coset given by its members."""
        return self.target.cosets[self.mapping[self.source.index_of_set(members)]]

    def apply(self, g: int) -> frozenset[int]:
        """The target coset assigned to the source coset of g."""
        return self.target.cosets[self.mapping[self.source.index_of(g)]]

    def as_sets(self) -> dict[frozenset[int], frozenset[int]]:
        return {c: self.target.cosets[self.mapping[i]] for i, c in enumerate(self.source.cosets)}

    def describe(self) -> str:
        src, tgt = self.source, self.target
        return ", ".join(
            f"{src.parent.label(src.representatives[i])}->{tgt.parent.label(tgt.representatives[j])}"
            for i, j in enumerate(self.mapping)
        )


@dataclass(frozen=True)
class IsoVerdict:
    ok: bool
    witness: tuple[int, int] | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_quotient_iso(phi: QuotientIso) -> IsoVerdict:
    """Check phi(0) = 0 and phi(a*b) = phi(a)*phi(b) over all coset pairs."""
    if phi.mapping[0] != 0:
        return IsoVerdict(False, (0, 0), f"identity coset maps to coset {phi.mapping[0]}")
    qs = quotient_table(phi.source)
    qt = quotient_table(phi.target)
    m = phi.mapping
    for a in range(phi.source.count):
        for b in range(phi.source.count):
            if m[qs[a][b]] != qt[m[a]][m[b]]:
                return IsoVerdict(
                    False,
                    (a, b),
                    f"phi({a}*{b})={m[qs[a][b]]} but phi({a})*phi({b})={qt[m[a]][m[b]]}",
                )
    return IsoVerdict(True)


def quotient_iso(
    source: CosetSystem,
    target: CosetSystem,
    rep_map: Mapping[int, int],
    *,
    check: bool = True,
) -> QuotientIso:
    """Build a quotient isomorphism from a map on coset representatives.

    Each key is any element of a source coset and each value any element of
    the image coset. Conflicting or missing assignments raise GroupError, as
    does a failed homomorphism check when ``check`` is set.
    """
    mapping: dict[int, int] = {}
    for g, h in rep_map.items():
        i, j = source.index_of(g), target.index_of(h)
        if mapping.setdefault(i, j) != j:
            raise GroupError(f"source coset {i} is sent to both {mapping[i]} and {j}")
    missing = [i for i in range(source.count) if i not in mapping]
    if missing:
        raise GroupError(f"no image given for source cosets {missing}")
    phi = QuotientIso(source, target, tuple(mapping[i] for i in range(source.count)))
    if check:
        verdict = verify_quotient_iso(phi)
        if not verdict:
            raise GroupError(f"not a quotient isomorphism: {verdict.detail}")
    return phi


def identity_iso(system: CosetSystem) -> QuotientIso:
    return QuotientIso(system, system, tuple(range(system.count)))


def _same_cosets(a: CosetSystem, b: CosetSystem) -> bool:
    return a.subgroup.members == b.subgroup.members and a.parent == b.parent


def compose(phi: QuotientIso, psi: QuotientIso) -> QuotientIso:
    """phi followed by psi."""
    if not _same_cosets(phi.target, psi.source):
        raise GroupError(
            f"cannot compose: target {phi.target.subgroup} differs from source {psi.source.subgroup}"
        )
    mapping = tuple(
        psi.mapping[psi.source.index_of(phi.target.representatives[j])] for j in phi.mapping
    )
    return QuotientIso(phi.source, psi.target, mapping)


def inverse(phi: QuotientIso) -> QuotientIso:
    back = [0] * phi.target.count
    for i, j in enumerate(phi.mapping):
        back[j] = i
    return QuotientIso(phi.target, phi.source, tuple(back))


def same_map(phi: QuotientIso, psi: QuotientIso) -> bool:
    """Equality as maps of coset sets, regardless of coset indexing."""
    return (
        phi.source.parent == psi.source.parent
        and phi.target.parent == psi.target.parent
        and phi.as_sets() == psi.as_sets()
    )


def image_subgroup(phi: QuotientIso, m: Subgroup) -> Subgroup:
    """Union of the images of the source cosets inside M, which must contain the source subgroup."""
    if not phi.source.subgroup.members <= m.members:
        raise GroupError(f"{m} does not contain {phi.source.subgroup}")
    members: set[int] = set()
    for i, coset in enumerate(phi.source.cosets):
        if coset <= m.members:
            members |= phi.target.cosets[phi.mapping[i]]
        elif coset & m.members:
            raise GroupError(f"{m} is not a union of cosets of {phi.source.subgroup}")
    try:
        return Subgroup(phi.target.parent, frozenset(members))
    except GroupError as exc:
        raise GroupError(f"image of {m} is not a subgroup: {exc}") from exc


def induce_on_coarser(phi: QuotientIso, m: Subgroup) -> QuotientIso:
    """The isomorphism G/M -> G'/N induced by phi, with N the image of M.

    Each M-coset is a union of source cosets and is sent to the union of
    their images, which must be a single N-coset.
    """
    n = image_subgroup(phi, m)
    if not is_normal(m):
        raise GroupError(f"{m} is not normal in {m.parent}")
    coarse_src = coset_system(m)
    coarse_tgt = coset_system(n)
    mapping: list[int] = []
    for i, block in enumerate(coarse_src.cosets):
        image: set[int] = set()
        for j, coset in enumerate(phi.source.cosets):
            if coset <= block:
                image |= phi.target.cosets[phi.mapping[j]]
        try:
            mapping.append(coarse_tgt.index_of_set(image))
        except GroupError as exc:
            raise GroupError(f"coarsening to {m}: image of block {i} is not a coset of {n}") from exc
    return QuotientIso(coarse_src, coarse_tgt, tuple(mapping))


def inner_automorphism(system: CosetSystem, index: int) -> QuotientIso:
    """The automorphism X -> Y^-1 X Y of G/H, with Y the coset at ``index``."""
    p = system.parent
    y = system.representatives[index]
    yi = p.inv(y)
    mapping = tuple(system.index_of(p.mul(p.mul(yi, r), y)) for r in system.representatives)
    return QuotientIso(system, system, mapping)


def _generators(table: tuple[tuple[int, ...], ...]) -> list[int]:
    """Greedy generating set of a quotient table, smallest indices first."""
    q = len(table)
    reached = {0}
    gens: list[int] = []
    for a in range(1, q):
        if a in reached:
            continue
        gens.append(a)
        frontier = list(reached)
        reached.add(a)
        frontier.append(a)
        while frontier:
            x = frontier.pop()
            for g in gens:
                for y in (table[x][g], table[g][x]):
                    if y not in reached:
                        reached.add(y)
                        frontier.append(y)
        if len(reached) == q:
            break
    return gens


def quotient_isomorphisms(source: CosetSystem, target: CosetSystem) -> list[QuotientIso]:
    """All isomorphisms G/H -> G'/K, in lexicographic order of generator images."""
    if source.count != target.count:
        return []
    qs = quotient_table(source)
    qt = quotient_table(target)
    q = source.count
    gens = _generators(qs)
    found: list[QuotientIso] = []
    for images in itertools.product(range(1, q) if q > 1 else range(1), repeat=len(gens)):
        mapping = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for g, img in zip(gens, images):
                y, fy = qs[x][g], qt[mapping[x]][img]
                if y in mapping:
                    if mapping[y] != fy:
                        ok = False
                        break
                else:
                    mapping[y] = fy
                    frontier.append(y)
        if not ok or len(mapping) != q or len(set(mapping.values())) != q:
            continue
        phi = QuotientIso(source, target, tuple(mapping[i] for i in range(q)))
        if verify_quotient_iso(phi):
            found.append(phi)
    logger.debug("found %d isomorphisms between quotients of order %d", len(found), q)
    return found
