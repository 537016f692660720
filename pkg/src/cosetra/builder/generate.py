"""Enumeration of group triples within bounds, filtered to semi-frames.

Candidates are built from the library groups: per ordered pair x < y a normal
subgroup H_xy of G_x, a normal subgroup K_xy of G_y with the same index and
every isomorphism between the quotients; reverse pairs use the inverse map
and (x, x) the identity on the trivial quotient. Shifting cosets are the
identity cosets or, with ``shifted``, every coset of H_xy;H_xz on triples of
three distinct indices; triples that repeat an index keep the identity coset,
since C[F] is not a relation algebra otherwise (``all_shifts`` lifts this).
The enumeration order is deterministic.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import pandas as pd

from ..core.errors import CosetraError, DomainError
from ..frames.models import FrameRecord, GroupTriple, Pair, Triple
from ..frames.scaffold import find_scaffold
from ..frames.verify import frame_record, verify_semi_frame
from ..groups.group import FiniteGroup, cyclic, dihedral, direct_product, symmetric, trivial
from ..groups.quotient import QuotientIso, identity_iso, inverse, quotient_isomorphisms
from ..groups.subgroups import coset_system, normal_subgroups, product_subgroup, trivial_subgroup
from ..kernel.axioms import verify_ra_axioms
from ..measure.records import EquivalenceE, measure_algebra
from ..utils.parallel import parallel_map
from .algebra import build_coset_algebra

logger = logging.getLogger(__name__)

__all__ = [
    "GROUP_FAMILIES",
    "GenerationBounds",
    "GeneratedTriple",
    "library_groups",
    "generate_triples",
    "evaluate_triple",
    "generate_catalog",
    "catalog_frame",
]

GROUP_FAMILIES = ("trivial", "cyclic", "product", "symmetric", "dihedral")


@dataclass(frozen=True)
class GenerationBounds:
    indices: int = 1
    min_order: int = 1
    max_order: int = 3
    groups: tuple[str, ...] | None = None
    shifted: bool = False
    # also shift triples that repeat an index; such C[F] always fail the axioms
    all_shifts: bool = False
    check_axioms: bool = True
    max_triples: int = 10_000

    def __post_init__(self) -> None:
        if self.indices < 1:
            raise DomainError(f"need at least one index, got {self.indices}")
        if not 1 <= self.min_order <= self.max_order:
            raise DomainError(f"bad order range {self.min_order}..{self.max_order}")
        if self.max_triples < 1:
            raise DomainError("max_triples must be positive")
        for name in self.groups or ():
            if name not in GROUP_FAMILIES:
                raise DomainError(f"unknown group family {name!r}; expected one of {', '.join(GROUP_FAMILIES)}")


def _library() -> list[tuple[str, Callable[[], FiniteGroup]]]:
    def z2() -> FiniteGroup:
        return cyclic(2)

    return [
        ("trivial", trivial),
        *(("cyclic", (lambda n=n: cyclic(n))) for n in range(2, 13)),
        ("product", lambda: direct_product(z2(), z2())),
        ("product", lambda: direct_product(z2(), cyclic(4))),
        ("product", lambda: direct_product(direct_product(z2(), z2()), z2())),
        ("product", lambda: direct_product(cyclic(3), cyclic(3))),
        ("product", lambda: direct_product(z2(), cyclic(6))),
        ("symmetric", lambda: symmetric(3)),
        ("symmetric", lambda: symmetric(4)),
        *(("dihedral", (lambda n=n: dihedral(n))) for n in range(4, 7)),
    ]


def library_groups(bounds: GenerationBounds) -> list[FiniteGroup]:
    """Library groups within the order bounds, by order and then name."""
    found = []
    for family, make in _library():
        if bounds.groups is not None and family not in bounds.groups:
            continue
        g = make()
        if bounds.min_order <= g.order <= bounds.max_order:
            found.append(g)
    found.sort(key=lambda g: (g.order, str(g)))
    return found


def _pair_maps(gx: FiniteGroup, gy: FiniteGroup) -> list[QuotientIso]:
    maps: list[QuotientIso] = []
    for h in normal_subgroups(gx):
        source = coset_system(h)
        for k in normal_subgroups(gy):
            if k.index == h.index:
                maps.extend(quotient_isomorphisms(source, coset_system(k)))
    return maps


def _shift_choices(phi: dict[Pair, QuotientIso], t: Triple, bounds: GenerationBounds) -> list[frozenset[int]]:
    x, y, z = t
    outer = product_subgroup(phi[(x, y)].source.subgroup, phi[(x, z)].source.subgroup)
    # a shift on (x,x,y), (x,y,y) or (x,y,x) breaks 1' as identity or 1' <= r;r˘
    if not bounds.shifted or (len({x, y, z}) < 3 and not bounds.all_shifts):
        return [outer.members]
    return list(coset_system(outer).cosets)


def generate_triples(bounds: GenerationBounds) -> Iterator[GroupTriple]:
    """Semi-frame triples within ``bounds``, one E-class over indices 0..n-1."""
    n = bounds.indices
    indices = tuple(range(n))
    pairs = [(x, y) for x in indices for y in indices]
    forward = [(x, y) for x, y in pairs if x < y]
    E = EquivalenceE(indices=indices, pairs=frozenset(pairs), classes=(indices,))
    triples = E.triples()
    candidates = library_groups(bounds)
    logger.info("generating over %d groups and %d indices", len(candidates), n)
    emitted = 0
    seen = 0
    for groups in itertools.combinations_with_replacement(candidates, n):
        choices = [_pair_maps(groups[x], groups[y]) for x, y in forward]
        for picks in itertools.product(*choices):
            phi: dict[Pair, QuotientIso] = {
                (x, x): identity_iso(coset_system(trivial_subgroup(groups[x]))) for x in indices
            }
            for (x, y), p in zip(forward, picks):
                phi[(x, y)] = p
                phi[(y, x)] = inverse(p)
            shifts = [_shift_choices(phi, t, bounds) for t in triples]
            for cosets in itertools.product(*shifts):
                if seen >= bounds.max_triples:
                    logger.warning("stopped after %d candidate triples (max_triples)", seen)
                    return
                seen += 1
                F = GroupTriple(
                    groups=dict(enumerate(groups)),
                    E=E,
                    phi=phi,
                    C=dict(zip(triples, cosets)),
                )
                if verify_semi_frame(F).passed:
                    emitted += 1
                    yield F
    logger.info("generated %d semi-frames from %d candidates", emitted, seen)


@dataclass(frozen=True)
class GeneratedTriple:
    """One generated semi-frame with the verdicts gathered on it."""

    id: int
    record: FrameRecord
    shifted: bool
    ra: bool | None = None
    scaffold: str | None = None
    failure: str | None = None
    atoms: int = 0

    @property
    def triple(self) -> GroupTriple:
        return self.record.triple


def evaluate_triple(
    id: int,
    F: GroupTriple,
    *,
    check_axioms: bool = True,
    threshold: int = 12,
    seed: int = 42,
) -> GeneratedTriple:
    """Build C[F] and collect the RA verdict, frame flag and scaffold verdict."""
    record = frame_record(F)
    shifted = any(F.C[t] != F.identity_coset(*t) for t in F.triples())
    algebra = build_coset_algebra(F)
    atoms = algebra.structure.atom_count
    if not check_axioms:
        return GeneratedTriple(id=id, record=record, shifted=shifted, atoms=atoms)
    report = verify_ra_axioms(algebra.structure, threshold=threshold, seed=seed, workers=1)
    if not report.passed:
        first = report.failures[0]
        return GeneratedTriple(
            id=id, record=record, shifted=shifted, ra=False, atoms=atoms,
            failure=f"{first.law} at {first.witness}",
        )
    try:
        search = find_scaffold(measure_algebra(algebra.structure))
    except CosetraError as exc:
        logger.debug("triple %d: no scaffold search: %s", id, exc)
        return GeneratedTriple(id=id, record=record, shifted=shifted, ra=True, atoms=atoms, scaffold="not_measurable")
    verdict = "found" if search.found else f"absent ({search.nodes}/{search.space})"
    return GeneratedTriple(id=id, record=record, shifted=shifted, ra=True, atoms=atoms, scaffold=verdict)


def generate_catalog(
    bounds: GenerationBounds,
    *,
    threshold: int = 12,
    seed: int = 42,
    workers: int | None = None,
) -> list[GeneratedTriple]:
    triples = list(generate_triples(bounds))
    return parallel_map(
        lambda item: evaluate_triple(
            item[0], item[1], check_axioms=bounds.check_axioms, threshold=threshold, seed=seed
        ),
        list(enumerate(triples)),
        workers,
    )


def catalog_frame(results: Sequence[GeneratedTriple]) -> pd.DataFrame:
    """One row per generated triple."""
    rows = []
    for r in results:
        F = r.triple
        rows.append(
            {
                "id": r.id,
                "indices": len(F.indices),
                "groups": " ".join(str(F.groups[x]) for x in F.indices),
                "kappa": " ".join(f"{x}{y}:{F.kappa(x, y)}" for x, y in F.pairs() if x < y) or "-",
                "atoms": r.atoms,
                "shifted": r.shifted,
                "semi_frame": r.record.report.passed,
                "ra": "unchecked" if r.ra is None else ("yes" if r.ra else "no"),
                "frame": r.record.frame,
                "scaffold": r.scaffold or "-",
                "failure": r.failure or "",
            }
        )
    columns = ["id", "indices", "groups", "kappa", "atoms", "shifted", "semi_frame", "ra", "frame", "scaffold", "failure"]
    return pd.DataFrame(rows, columns=columns)
