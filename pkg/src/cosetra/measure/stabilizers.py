"""Left and right stabilizers, translations and regularity flags."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Literal

from ..core.errors import GroupError, InternalConsistencyError, PreconditionError
from ..groups.subgroups import Subgroup, coset_system
from ..kernel.structure import Element
from .records import MeasuredAlgebra, as_mask

logger = logging.getLogger(__name__)

__all__ = ["StabilizerData", "check_below", "stabilizer_data", "translate"]


@dataclass(frozen=True)
class StabilizerData:
    """Stabilizers of an element a <= x;1;y and the sets X_a, Y_a."""

    mask: int
    x: int
    y: int
    left: Subgroup
    right: Subgroup
    X: frozenset[int]
    Y: frozenset[int]

    @property
    def left_regular(self) -> bool:
        return self.X == self.left.members

    @property
    def right_regular(self) -> bool:
        return self.Y == self.right.members

    @property
    def regular(self) -> bool:
        return self.left_regular and self.right_regular


def check_below(m: MeasuredAlgebra, mask: int, x: int, y: int) -> int:
    rect = m.rectangle(x, y)
    if mask == 0:
        raise PreconditionError("a regular element is never zero; got the zero element")
    if mask & ~rect:
        s = m.structure
        raise PreconditionError(
            f"{s.describe(mask)} is not below {s.atom_names[x]};1;{s.atom_names[y]}"
        )
    return rect


def stabilizer_data(m: MeasuredAlgebra, a: Element | int, x: int, y: int) -> StabilizerData:
    """L_a = {f : f;a = a}, R_a = {g : a;g = a}, X_a below a;a˘, Y_a below a˘;a."""
    mask = as_mask(a)
    key = ("stab", mask, x, y)
    cached = m.cache.get(key)
    if cached is not None:
        return cached
    rx, ry = m.record(x), m.record(y)
    check_below(m, mask, x, y)
    s = m.structure
    left = frozenset(f for f in rx.group.elements if m.left_translate(f, x, mask) == mask)
    right = frozenset(g for g in ry.group.elements if m.right_translate(mask, g, y) == mask)
    conv = s.converse_mask(mask)
    try:
        data = StabilizerData(
            mask=mask,
            x=x,
            y=y,
            left=Subgroup(rx.group, left),
            right=Subgroup(ry.group, right),
            X=rx.elements_of_mask(s.compose(mask, conv)),
            Y=ry.elements_of_mask(s.compose(conv, mask)),
        )
    except (GroupError, ValueError) as exc:
        raise InternalConsistencyError(f"stabilizers of {s.describe(mask)}: {exc}") from exc
    return m.cache.put(key, data)


def translate(
    m: MeasuredAlgebra,
    a: Element | int,
    by: int | Iterable[int],
    side: Literal["left", "right"],
    x: int,
    y: int,
) -> int:
    """f;a or a;g for a group element, or the common value over a stabilizer coset."""
    mask = as_mask(a)
    check_below(m, mask, x, y)
    if isinstance(by, int):
        return m.left_translate(by, x, mask) if side == "left" else m.right_translate(mask, by, y)
    coset = frozenset(by)
    data = stabilizer_data(m, mask, x, y)
    sub = data.left if side == "left" else data.right
    # left translations act through f;L_a, right ones through R_a;g
    system = coset_system(sub, "left" if side == "left" else "right")
    if coset not in system.cosets:
        raise GroupError(f"{sorted(coset)} is not a {side} coset of the stabilizer {sub}")
    values = {
        m.left_translate(f, x, mask) if side == "left" else m.right_translate(mask, f, y) for f in coset
    }
    if len(values) != 1:
        raise InternalConsistencyError(f"translations of {m.structure.describe(mask)} differ across a stabilizer coset")
    return values.pop()
