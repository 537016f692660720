"""Semi-scaffolds and the exhaustive scaffold search."""

from __future__ import annotations

import logging
import math
from typing import Sequence

from ..core.errors import DomainError, InternalConsistencyError, PreconditionError
from ..measure.records import MeasuredAlgebra
from .models import Pair, ScaffoldSearch, SemiScaffold

logger = logging.getLogger(__name__)

__all__ = [
    "resolve_order",
    "forward_pairs",
    "build_semi_scaffold",
    "semi_scaffold_violation",
    "scaffold_violation",
    "find_scaffold",
]


def resolve_order(m: MeasuredAlgebra, order: Sequence[int] | None = None) -> tuple[int, ...]:
    if not m.measurable:
        raise PreconditionError("the identity is not a sum of measurable atoms")
    if order is None:
        return m.indices
    if sorted(order) != sorted(m.indices):
        raise DomainError(f"order {list(order)} is not a permutation of the measurable atoms {list(m.indices)}")
    return tuple(order)


def forward_pairs(m: MeasuredAlgebra, order: Sequence[int]) -> list[Pair]:
    """E-pairs (x, y) with x before y, listed lexicographically by position."""
    return [
        (order[i], order[j])
        for i in range(len(order))
        for j in range(i + 1, len(order))
        if m.E.related(order[i], order[j])
    ]


def _complete(m: MeasuredAlgebra, order: Sequence[int], forward: dict[Pair, int]) -> dict[Pair, int]:
    s = m.structure
    entries: dict[Pair, int] = {(x, x): x for x in order}
    for (x, y), a in forward.items():
        entries[(x, y)] = a
        entries[(y, x)] = s.converse_map[a]
    return entries


def semi_scaffold_violation(m: MeasuredAlgebra, entries: dict[Pair, int]) -> str | None:
    """First violated semi-scaffold condition, or None."""
    s = m.structure
    for x, y in m.E.sorted_pairs():
        a = entries.get((x, y))
        if a is None:
            return f"no atom for ({m.name(x)}, {m.name(y)})"
        if not m.rectangle(x, y) >> a & 1:
            return f"{m.name(a)} is not below {m.name(x)};1;{m.name(y)}"
        if x == y and a != x:
            return f"the entry for ({m.name(x)}, {m.name(x)}) must be {m.name(x)}"
        if entries.get((y, x)) != s.converse_map[a]:
            return f"entry for ({m.name(y)}, {m.name(x)}) is not the converse of {m.name(a)}"
    return None


def scaffold_violation(m: MeasuredAlgebra, order: Sequence[int], entries: dict[Pair, int]) -> str | None:
    """First ordered triple x < y < z with a_xz not below a_xy;a_yz, or None."""
    s = m.structure
    n = len(order)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                x, y, z = order[i], order[j], order[k]
                if not (m.E.related(x, y) and m.E.related(y, z)):
                    continue
                a_xy, a_yz, a_xz = entries[(x, y)], entries[(y, z)], entries[(x, z)]
                if not s.compose(1 << a_xy, 1 << a_yz) >> a_xz & 1:
                    return f"{m.name(a_xz)} is not below {m.name(a_xy)};{m.name(a_yz)}"
    return None


def build_semi_scaffold(m: MeasuredAlgebra, order: Sequence[int] | None = None) -> SemiScaffold:
    """a_xx = x, a_xy the least atom below x;1;y for x before y, a_yx = a_xy˘."""
    order = resolve_order(m, order)
    forward: dict[Pair, int] = {}
    for x, y in forward_pairs(m, order):
        atoms = m.atoms_in(x, y)
        if not atoms:
            raise InternalConsistencyError(f"{m.name(x)};1;{m.name(y)} has no atoms")
        forward[(x, y)] = atoms[0]
    entries = _complete(m, order, forward)
    problem = semi_scaffold_violation(m, entries)
    if problem:
        raise InternalConsistencyError(f"semi-scaffold: {problem}")
    return SemiScaffold(order=order, entries=entries, is_scaffold=scaffold_violation(m, order, entries) is None)


def find_scaffold(m: MeasuredAlgebra, order: Sequence[int] | None = None) -> ScaffoldSearch:
    """Backtrack over atom choices per forward pair, checking each triple as soon as it is complete.

    Pairs are assigned in lexicographic position order, so a triple x < y < z
    is complete when its last pair (y, z) is assigned. The first scaffold in
    lexicographic choice order is returned; otherwise the whole space has been
    exhausted.
    """
    order = resolve_order(m, order)
    s = m.structure
    pairs = forward_pairs(m, order)
    choices = [m.atoms_in(x, y) for x, y in pairs]
    space = math.prod(len(c) for c in choices)
    pos = {x: i for i, x in enumerate(order)}
    # triples closed by assigning pair (y, z): every x before y related to both
    closing: list[list[tuple[Pair, Pair]]] = []
    for y, z in pairs:
        closing.append(
            [((x, y), (x, z)) for x in order[: pos[y]] if m.E.related(x, y) and m.E.related(x, z)]
        )
    chosen: dict[Pair, int] = {}
    nodes = 0

    def place(i: int) -> bool:
        nonlocal nodes
        if i == len(pairs):
            return True
        y, z = pairs[i]
        for atom in choices[i]:
            nodes += 1
            chosen[(y, z)] = atom
            if all(s.compose(1 << chosen[xy], 1 << atom) >> chosen[xz] & 1 for xy, xz in closing[i]):
                if place(i + 1):
                    return True
        chosen.pop((y, z), None)
        return False

    if place(0):
        entries = _complete(m, order, chosen)
        scaffold = SemiScaffold(order=order, entries=entries, is_scaffold=True)
        logger.info("scaffold found after %d nodes (space %d)", nodes, space)
        return ScaffoldSearch(scaffold=scaffold, nodes=nodes, space=space)
    logger.info("no scaffold: %d nodes explored, space %d", nodes, space)
    return ScaffoldSearch(scaffold=None, nodes=nodes, space=space)
