"""Extraction of the coset semi-frame of a measurable algebra."""

from __future__ import annotations

import logging

from ..core.errors import InternalConsistencyError, PreconditionError
from ..groups.quotient import QuotientIso, inverse
from ..groups.subgroups import coset_system, product_subgroup, quotient_table, set_product
from ..measure.records import MeasuredAlgebra
from ..measure.regular import quotient_iso_of_regular
from ..measure.stabilizers import stabilizer_data
from .models import ExtractedFrame, GroupTriple, Pair, SemiScaffold, Triple
from .scaffold import semi_scaffold_violation
from .verify import verify_semi_frame

logger = logging.getLogger(__name__)

__all__ = [
    "extract_semi_frame",
    "qualifying_shifts",
    "shifting_coset_well_defined",
    "abelian_quotients",
]


def _phis(m: MeasuredAlgebra, s: SemiScaffold) -> dict[Pair, QuotientIso]:
    phis: dict[Pair, QuotientIso] = {}
    for x, y in m.E.sorted_pairs():
        if x == y:
            phis[(x, x)] = quotient_iso_of_regular(m, 1 << x, x, x).phi
        elif s.before(x, y):
            phi = quotient_iso_of_regular(m, 1 << s[(x, y)], x, y).phi
            phis[(x, y)] = phi
            # H_yx,i = K_xy,i and phi_yx = phi_xy^-1
            phis[(y, x)] = inverse(phi)
    return phis


def qualifying_shifts(m: MeasuredAlgebra, s: SemiScaffold, x: int, y: int, z: int) -> list[int]:
    """Coset indices i (canonical system of the stabilizer of a_xz) with H_xz,i;a_xz below a_xy;a_yz."""
    target = m.structure.compose(1 << s[(x, y)], 1 << s[(y, z)])
    a_xz = 1 << s[(x, z)]
    system = coset_system(stabilizer_data(m, a_xz, x, z).left)
    return [
        i
        for i, f in enumerate(system.representatives)
        if m.left_translate(f, x, a_xz) & ~target == 0
    ]


def shifting_coset_well_defined(m: MeasuredAlgebra, s: SemiScaffold, x: int, y: int, z: int) -> bool:
    """Every qualifying shift gives the same coset H_xy;H_xz,i."""
    shifts = qualifying_shifts(m, s, x, y, z)
    if not shifts:
        raise InternalConsistencyError(
            f"no translate of {m.name(s[(x, z)])} lies below {m.name(s[(x, y)])};{m.name(s[(y, z)])}"
        )
    h_xy = stabilizer_data(m, 1 << s[(x, y)], x, y).left.members
    system = coset_system(stabilizer_data(m, 1 << s[(x, z)], x, z).left)
    group = m.group(x)
    cosets = {set_product(group, h_xy, system.cosets[i]) for i in shifts}
    return len(cosets) == 1


def extract_semi_frame(m: MeasuredAlgebra, s: SemiScaffold) -> ExtractedFrame:
    """Stabilizers, quotient isomorphisms and shifting cosets along a semi-scaffold."""
    problem = semi_scaffold_violation(m, dict(s.entries))
    if problem:
        raise PreconditionError(f"invalid semi-scaffold: {problem}")
    phis = _phis(m, s)
    C: dict[Triple, frozenset[int]] = {}
    zeta: dict[Triple, int] = {}
    for x, y, z in m.E.triples():
        h_xz = phis[(x, z)].source
        target = m.structure.compose(1 << s[(x, y)], 1 << s[(y, z)])
        a_xz = 1 << s[(x, z)]
        chosen = next(
            (i for i, f in enumerate(h_xz.representatives) if m.left_translate(f, x, a_xz) & ~target == 0),
            None,
        )
        if chosen is None:
            raise InternalConsistencyError(
                f"no translate of {m.name(s[(x, z)])} lies below {m.name(s[(x, y)])};{m.name(s[(y, z)])}"
            )
        zeta[(x, y, z)] = chosen
        C[(x, y, z)] = set_product(m.group(x), phis[(x, y)].source.subgroup.members, h_xz.cosets[chosen])

    atoms: dict[tuple[int, int, int], int] = {}
    for (x, y), phi in phis.items():
        a = 1 << s[(x, y)]
        for i, f in enumerate(phi.source.representatives):
            t = m.left_translate(f, x, a)
            if t.bit_count() != 1:
                raise InternalConsistencyError(f"translate {i} of {m.name(s[(x, y)])} is not an atom")
            atoms[(x, y, i)] = t.bit_length() - 1

    triple = GroupTriple(
        groups={x: m.group(x) for x in m.indices},
        E=m.E,
        phi=phis,
        C=C,
        labels={x: m.name(x) for x in m.indices},
    )
    report = verify_semi_frame(triple)
    if not report.passed:
        first = report.failures[0]
        raise InternalConsistencyError(f"extracted triple fails condition {first.name}: {first.witness}")
    logger.info("extracted semi-frame over %d indices, %d atoms", len(m.indices), len(atoms))
    return ExtractedFrame(measured=m, scaffold=s, triple=triple, zeta=zeta, atoms=atoms)


def abelian_quotients(F: GroupTriple) -> bool:
    """True when every G_x/(H_xy;H_xz) over E_3 is abelian, which forces every C_xyz to act trivially."""
    for x, y, z in F.triples():
        table = quotient_table(coset_system(product_subgroup(F.H_sub(x, y), F.H_sub(x, z))))
        q = len(table)
        if any(table[i][j] != table[j][i] for i in range(q) for j in range(i)):
            return False
    return True
