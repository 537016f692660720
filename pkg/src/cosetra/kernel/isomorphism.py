"""Atom-level isomorphism search between two atom structures."""

from __future__ import annotations

import logging

from .structure import AtomStructure

logger = logging.getLogger(__name__)

__all__ = ["atom_invariant", "find_isomorphism", "is_isomorphic"]


def atom_invariant(structure: AtomStructure, i: int) -> tuple:
    """Relabeling-invariant signature of atom i."""
    comp = structure.composition
    n = structure.atom_count
    row = sorted(comp[i][j].bit_count() for j in range(n))
    col = sorted(comp[j][i].bit_count() for j in range(n))
    return (
        i in structure.identity_atoms,
        structure.converse_map[i] == i,
        sum(1 for t in structure.cycles if t[2] == i),
        tuple(row),
        tuple(col),
    )


def find_isomorphism(a: AtomStructure, b: AtomStructure) -> tuple[int, ...] | None:
    """An atom bijection m with k <= i;j in ``a`` iff m[k] <= m[i];m[j] in ``b``.

    Backtracks over atoms of ``a`` in index order; candidates must share the
    atom invariant, and every triple among assigned atoms is checked as soon
    as its last atom is placed.
    """
    n = a.atom_count
    if n != b.atom_count or len(a.identity_atoms) != len(b.identity_atoms):
        return None
    inv_a = [atom_invariant(a, i) for i in range(n)]
    inv_b = [atom_invariant(b, i) for i in range(n)]
    if sorted(inv_a) != sorted(inv_b):
        return None
    candidates = [[j for j in range(n) if inv_b[j] == inv_a[i]] for i in range(n)]
    ca, cb = a.composition, b.composition
    conv_a, conv_b = a.converse_map, b.converse_map

    mapping = [-1] * n
    used = [False] * n
    nodes = 0

    def consistent(t: int) -> bool:
        mt = mapping[t]
        c = conv_a[t]
        if mapping[c] >= 0 and mapping[c] != conv_b[mt]:
            return False
        for i in range(t + 1):
            mi = mapping[i]
            for j in range(t + 1):
                if t not in (i, j):
                    # only the newest column k = t is new for old (i, j)
                    ks = (t,)
                else:
                    ks = range(t + 1)
                mj = mapping[j]
                row_a, row_b = ca[i][j], cb[mi][mj]
                for k in ks:
                    if bool(row_a >> k & 1) != bool(row_b >> mapping[k] & 1):
                        return False
        return True

    def place(t: int) -> bool:
        nonlocal nodes
        if t == n:
            return True
        for cand in candidates[t]:
            if used[cand]:
                continue
            nodes += 1
            mapping[t] = cand
            used[cand] = True
            if consistent(t) and place(t + 1):
                return True
            used[cand] = False
            mapping[t] = -1
        return False

    found = place(0)
    logger.debug("isomorphism search %s -> %s: %s after %d nodes", a.structure_id, b.structure_id, found, nodes)
    return tuple(mapping) if found else None


def is_isomorphic(a: AtomStructure, b: AtomStructure) -> bool:
    return find_isomorphism(a, b) is not None
