"""Finite groups as explicit multiplication tables over 0..m-1."""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from ..core.errors import DomainError, GroupError

__all__ = [
    "FiniteGroup",
    "make_group",
    "trivial",
    "cyclic",
    "symmetric",
    "dihedral",
    "direct_product",
]


def _violation(table: Sequence[Sequence[int]], identity: int, inverse: Sequence[int]) -> str | None:
    m = len(table)
    if m == 0:
        return "group table is empty"
    for i, row in enumerate(table):
        if len(row) != m:
            return f"row {i} has {len(row)} entries, expected {m}"
        for j, v in enumerate(row):
            if not 0 <= v < m:
                return f"product ({i}, {j}) = {v} is outside 0..{m - 1}"
    if not 0 <= identity < m:
        return f"identity {identity} outside 0..{m - 1}"
    for a in range(m):
        if table[identity][a] != a or table[a][identity] != a:
            return f"{identity} is not neutral for element {a}"
    if len(inverse) != m:
        return f"inverse map has {len(inverse)} entries, expected {m}"
    for a, b in enumerate(inverse):
        if not 0 <= b < m or table[a][b] != identity or table[b][a] != identity:
            return f"{b} is not a two-sided inverse of {a}"
    T = np.asarray(table, dtype=np.intp)
    lhs = T[T]
    rhs = T[np.arange(m)[:, None, None], T[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        i, j, k = (int(v) for v in bad[0])
        return (
            f"table is not associative at ({i}, {j}, {k}): "
            f"({i}*{j})*{k}={int(lhs[i, j, k])} but {i}*({j}*{k})={int(rhs[i, j, k])}"
        )
    return None


class FiniteGroup(BaseModel):
    """A validated finite group; element ``i`` is row/column ``i`` of the table."""

    model_config = ConfigDict(frozen=True)

    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    name: str = ""

    @model_validator(mode="after")
    def _check_group(self) -> "FiniteGroup":
        problem = _violation(self.table, self.identity, self.inverse)
        if problem:
            raise ValueError(problem)
        if self.labels is not None and len(self.labels) != len(self.table):
            raise ValueError(f"{len(self.labels)} labels for a group of order {len(self.table)}")
        return self

    @cached_property
    def order(self) -> int:
        return len(self.table)

    @cached_property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in self.elements for b in range(a))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def __str__(self) -> str:
        return self.name or f"G{self.order}"


def make_group(
    table: Sequence[Sequence[int]],
    labels: Sequence[str] | None = None,
    name: str = "",
) -> FiniteGroup:
    """Validate a square table and derive identity and inverses."""
    m = len(table)
    rows = tuple(tuple(int(v) for v in row) for row in table)
    if m == 0 or any(len(r) != m for r in rows):
        raise GroupError("group table must be a non-empty square array")
    identity = next(
        (e for e in range(m) if all(rows[e][a] == a and rows[a][e] == a for a in range(m))),
        None,
    )
    if identity is None:
        raise GroupError("group table has no two-sided identity")
    inverse: list[int] = []
    for a in range(m):
        b = next((b for b in range(m) if rows[a][b] == identity and rows[b][a] == identity), None)
        if b is None:
            raise GroupError(f"element {a} has no two-sided inverse")
        inverse.append(b)
    try:
        return FiniteGroup(
            table=rows,
            identity=identity,
            inverse=tuple(inverse),
            labels=tuple(labels) if labels is not None else None,
            name=name,
        )
    except ValidationError as exc:
        raise GroupError(exc.errors()[0]["msg"].removeprefix("Value error, ")) from exc


def trivial() -> FiniteGroup:
    return make_group([[0]], labels=["e"], name="Z1")


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise DomainError(f"cyclic group order must be positive, got {n}")
    return make_group(
        [[(i + j) % n for j in range(n)] for i in range(n)],
        labels=[str(i) for i in range(n)],
        name=f"Z{n}",
    )


def symmetric(n: int) -> FiniteGroup:
    """S_n for n <= 4; permutations in lexicographic order, composed left to right."""
    if not 1 <= n <= 4:
        raise DomainError(f"symmetric groups are supported for 1 <= n <= 4, got {n}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(q[p[i]] for i in range(n))] for q in perms] for p in perms]
    return make_group(table, labels=["".join(map(str, p)) for p in perms], name=f"S{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon: element r^a s^b has index a + n*b."""
    if n < 1:
        raise DomainError(f"dihedral group needs n >= 1, got {n}")

    def mul(x: int, y: int) -> int:
        a, b = x % n, x // n
        c, d = y % n, y // n
        return (a + (c if b == 0 else -c)) % n + n * ((b + d) % 2)

    size = 2 * n
    labels = [f"r{a}" if b == 0 else f"r{a}s" for b in range(2) for a in range(n)]
    return make_group([[mul(x, y) for y in range(size)] for x in range(size)], labels=labels, name=f"D{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G x H with the pair (a, b) encoded as a * |H| + b."""
    m = h.order
    size = g.order * m
    table = [
        [g.mul(x // m, y // m) * m + h.mul(x % m, y % m) for y in range(size)]
        for x in range(size)
    ]
    labels = [f"({g.label(x // m)},{h.label(x % m)})" for x in range(size)]
    return make_group(table, labels=labels, name=f"{g}x{h}")
