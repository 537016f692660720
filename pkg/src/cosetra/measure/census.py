"""Per-pair regularity census for the measurability report."""

from __future__ import annotations

from dataclasses import dataclass

from ..groups.subgroups import is_normal
from .lemmas import DEFAULT_LIMIT, elements_below
from .records import MeasuredAlgebra
from .stabilizers import stabilizer_data

__all__ = ["PairCensus", "census"]


@dataclass(frozen=True)
class PairCensus:
    x: int
    y: int
    atoms: int
    elements: int | None
    regular: int | None
    regular_normal: int | None


def census(m: MeasuredAlgebra, *, limit: int = DEFAULT_LIMIT) -> list[PairCensus]:
    """Atom counts per E-pair and, within ``limit``, counts of regular elements."""
    rows = []
    for x, y in m.E.sorted_pairs():
        atoms = len(m.atoms_in(x, y))
        if atoms > limit:
            rows.append(PairCensus(x, y, atoms, None, None, None))
            continue
        elements = elements_below(m, x, y, limit)
        regular = normal = 0
        for a in elements:
            d = stabilizer_data(m, a, x, y)
            if d.regular:
                regular += 1
                normal += is_normal(d.left) and is_normal(d.right)
        rows.append(PairCensus(x, y, atoms, len(elements), regular, normal))
    return rows
