"""Element-level operations of the relation-algebra signature."""

from __future__ import annotations

from ..core.errors import DomainError, StructureMismatchError
from .structure import Element

__all__ = [
    "relative_product",
    "converse_of",
    "rectangle",
    "atoms_below",
    "join",
    "meet",
    "complement",
    "is_subidentity",
    "is_functional",
]


def _check_same(a: Element, b: Element) -> None:
    if a.structure_id != b.structure_id:
        raise StructureMismatchError(
            f"elements belong to different structures ({a.structure_id} vs {b.structure_id})"
        )


def relative_product(a: Element, b: Element) -> Element:
    """a;b as the union of composition(i, j) over atoms i of a and j of b."""
    _check_same(a, b)
    return Element(a.structure_id, a.structure.compose(a.mask, b.mask), a.structure)


def converse_of(a: Element) -> Element:
    return Element(a.structure_id, a.structure.converse_mask(a.mask), a.structure)


def join(a: Element, b: Element) -> Element:
    return a | b


def meet(a: Element, b: Element) -> Element:
    return a & b


def complement(a: Element) -> Element:
    return ~a


def is_subidentity(a: Element) -> bool:
    return a.mask & ~a.structure.identity_mask == 0


def is_functional(a: Element) -> bool:
    """f˘;f <= 1'."""
    s = a.structure
    return s.compose(s.converse_mask(a.mask), a.mask) & ~s.identity_mask == 0


def rectangle(x: Element, y: Element) -> Element:
    """x;1;y for subidentity elements x and y."""
    _check_same(x, y)
    for side, e in (("x", x), ("y", y)):
        if not is_subidentity(e):
            raise DomainError(f"rectangle side {side}={e} is not below the identity")
    s = x.structure
    return Element(x.structure_id, s.rectangle_mask(x.mask, y.mask), s)


def atoms_below(a: Element) -> frozenset[int]:
    return frozenset(a.atoms)
