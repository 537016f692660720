"""Bitmask helpers and numpy subset tables for exhaustive element-level checks.

Elements are Python ints whose bit ``i`` marks atom ``i``. The tables below are
indexed by such masks, so every element of a structure with ``n`` atoms is a
row index in ``range(2 ** n)``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "MAX_TABLE_ATOMS",
    "iter_bits",
    "bits",
    "mask_of",
    "popcount",
    "mask_dtype",
    "subset_or_table",
    "product_table",
    "random_masks",
]

# full element product tables hold 4**n entries
MAX_TABLE_ATOMS = 12


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_dtype(n: int) -> type[np.unsignedinteger]:
    if n <= 8:
        return np.uint8
    if n <= 16:
        return np.uint16
    if n <= 32:
        return np.uint32
    return np.uint64


def subset_or_table(values: Sequence[int], n_bits: int) -> np.ndarray:
    """Table t with t[m] = OR of values[k] over the bits k of m.

    Built by doubling: the upper half of each prefix is the lower half OR'ed
    with the value of the new bit.
    """
    n = len(values)
    dtype = mask_dtype(n_bits)
    table = np.zeros(1 << n, dtype=dtype)
    for k, v in enumerate(values):
        half = 1 << k
        table[half : 2 * half] = table[0:half] | dtype(v)
    return table


def product_table(composition: Sequence[Sequence[int]]) -> np.ndarray:
    """Full relative-product table T[a, b] = a;b over all element masks."""
    n = len(composition)
    if n > MAX_TABLE_ATOMS:
        raise ValueError(f"product table needs n <= {MAX_TABLE_ATOMS} atoms, got {n}")
    dtype = mask_dtype(n)
    size = 1 << n
    rows = np.stack([subset_or_table(composition[k], n) for k in range(n)])
    table = np.zeros((size, size), dtype=dtype)
    for k in range(n):
        half = 1 << k
        table[half : 2 * half, :] = table[0:half, :] | rows[k][None, :]
    return table


def random_masks(rng: np.random.Generator, n: int, count: int, arity: int) -> list[tuple[int, ...]]:
    """Draw ``count`` tuples of ``arity`` uniformly random element masks."""
    draws = rng.integers(0, 2, size=(count, arity, n), dtype=np.uint8)
    weights = [1 << k for k in range(n)]
    out: list[tuple[int, ...]] = []
    for row in draws:
        out.append(tuple(sum(w for w, bit in zip(weights, vec) if bit) for vec in row))
    return out
