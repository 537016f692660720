"""Quotient isomorphisms of regular elements and constructive regularity."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from ..core.errors import DomainError, GroupError, InternalConsistencyError, PreconditionError
from ..groups.quotient import QuotientIso, verify_quotient_iso
from ..groups.subgroups import CosetSystem, Subgroup, coset_system, is_normal
from ..kernel.bitsets import iter_bits
from ..kernel.structure import Element
from .records import MeasuredAlgebra, as_mask
from .stabilizers import StabilizerData, check_below, stabilizer_data

logger = logging.getLogger(__name__)

__all__ = [
    "RegularQuotient",
    "RegularDecomposition",
    "quotient_iso_of_regular",
    "find_left_regular_below",
    "regular_decomposition",
]


@dataclass(frozen=True)
class RegularQuotient:
    """phi_a : G_x/L_a -> G_y/R_a with L_i;a = a;R_i for every coset index i."""

    mask: int
    x: int
    y: int
    stabilizers: StabilizerData
    left: CosetSystem
    right: CosetSystem
    phi: QuotientIso


def quotient_iso_of_regular(m: MeasuredAlgebra, a: Element | int, x: int, y: int) -> RegularQuotient:
    mask = as_mask(a)
    key = ("phi", mask, x, y)
    cached = m.cache.get(key)
    if cached is not None:
        return cached
    s = m.structure
    data = stabilizer_data(m, mask, x, y)
    if not data.regular:
        raise PreconditionError(f"{s.describe(mask)} is not regular")
    if not (is_normal(data.left) and is_normal(data.right)):
        raise PreconditionError(f"{s.describe(mask)} does not have normal stabilizers")
    left = coset_system(data.left, "left")
    right0 = coset_system(data.right, "right")
    by_value = {m.right_translate(mask, r, y): j for j, r in enumerate(right0.representatives)}
    order: list[int] = []
    for i, f in enumerate(left.representatives):
        j = by_value.get(m.left_translate(f, x, mask))
        if j is None:
            raise InternalConsistencyError(
                f"left translate {i} of {s.describe(mask)} is not a right translate"
            )
        order.append(j)
    if sorted(order) != list(range(right0.count)):
        raise InternalConsistencyError(f"left and right translates of {s.describe(mask)} do not pair up")
    right = right0.reindexed(order)
    phi = QuotientIso(left, right, tuple(range(left.count)))
    verdict = verify_quotient_iso(phi)
    if not verdict:
        raise InternalConsistencyError(f"phi of {s.describe(mask)} is not an isomorphism: {verdict.detail}")
    out = RegularQuotient(mask=mask, x=x, y=y, stabilizers=data, left=left, right=right, phi=phi)
    return m.cache.put(key, out)


def find_left_regular_below(m: MeasuredAlgebra, a: Element | int, x: int, y: int) -> int:
    """A left-regular b with 0 < b <= a.

    Takes the product of f;a over a union Z of L_a-cosets inside X_a that
    contains L_a, choosing Z with the most cosets whose product is nonzero.
    Candidates are scanned by decreasing coset count, then lexicographically.
    """
    mask = as_mask(a)
    data = stabilizer_data(m, mask, x, y)
    if data.left_regular:
        return mask
    system = coset_system(data.left, "left")
    inside = [i for i in range(1, system.count) if system.cosets[i] <= data.X]
    translates = {i: m.left_translate(system.representatives[i], x, mask) for i in inside}
    for size in range(len(inside), -1, -1):
        for chosen in itertools.combinations(inside, size):
            b = mask
            for i in chosen:
                b &= translates[i]
                if not b:
                    break
            if b:
                logger.debug("left-regular element %s below %s", m.structure.describe(b), m.structure.describe(mask))
                return b
    raise InternalConsistencyError("the stabilizer itself must qualify")


@dataclass(frozen=True)
class RegularDecomposition:
    """b = sum of f;a over the coset ``coset`` of M, for an atom a; M = L_b."""

    mask: int
    x: int
    y: int
    regular: bool
    atom: int | None = None
    subgroup: Subgroup | None = None
    coset: int | None = None
    cosets: CosetSystem | None = None


def regular_decomposition(
    m: MeasuredAlgebra,
    b: Element | int,
    x: int,
    y: int,
    *,
    atom: int | None = None,
) -> RegularDecomposition:
    """Write a regular b as a sum of translates of an atom over a coset of its stabilizer.

    The atom defaults to the least atom below b, giving coset index 0. Cosets
    of M are taken in the form M;g so that M;g;a is the sum of M-translates of
    g;a.
    """
    mask = as_mask(b)
    rect = check_below(m, mask, x, y)
    data = stabilizer_data(m, mask, x, y)
    if not data.regular:
        return RegularDecomposition(mask=mask, x=x, y=y, regular=False)
    a = atom if atom is not None else next(iter_bits(mask))
    if not rect >> a & 1:
        raise DomainError(f"atom {a} is not below the rectangle")
    group = m.group(x)
    # c = g;a is a translate of a below b
    g = next((f for f in group.elements if m.left_translate(f, x, 1 << a) & ~mask == 0), None)
    if g is None:
        raise InternalConsistencyError(f"no translate of atom {a} lies below {m.structure.describe(mask)}")
    c = m.left_translate(g, x, 1 << a)
    members = frozenset(f for f in group.elements if m.left_translate(f, x, c) & ~mask == 0)
    try:
        sub = Subgroup(group, members)
    except GroupError as exc:
        raise InternalConsistencyError(f"translators of an atom into a regular element: {exc}") from exc
    system = coset_system(sub, "right")
    gamma = system.index_of(g)
    total = 0
    for f in system.cosets[gamma]:
        total |= m.left_translate(f, x, 1 << a)
    if total != mask:
        raise InternalConsistencyError(f"translates of atom {a} do not sum to {m.structure.describe(mask)}")
    if sub.members != data.left.members:
        raise InternalConsistencyError(f"{sub} is not the left stabilizer {data.left} of {m.structure.describe(mask)}")
    return RegularDecomposition(
        mask=mask, x=x, y=y, regular=True, atom=a, subgroup=sub, coset=gamma, cosets=system
    )
