"""Axiom and law verifier for atom structures.

Atom-level checks are exhaustive and read the cycle tensor directly. The
element-level mode additionally checks R1-R11 literally on element masks,
exhaustively while the subset tables fit and on a seeded sample otherwise.
"""

from __future__ import annotations

import logging
from typing import Callable, Literal

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..utils.parallel import parallel_map
from .bitsets import MAX_TABLE_ATOMS, product_table, random_masks, subset_or_table
from .structure import AtomStructure

logger = logging.getLogger(__name__)

__all__ = [
    "Level",
    "Mode",
    "LawVerdict",
    "AxiomReport",
    "verify_ra_axioms",
    "DEFAULT_THRESHOLD",
    "DEFAULT_SEED",
    "DEFAULT_SAMPLE",
    "MAX_TERNARY_ATOMS",
]

Level = Literal["atom", "element"]
Mode = Literal["atom_level", "element_level"]

DEFAULT_THRESHOLD = 12
DEFAULT_SEED = 42
DEFAULT_SAMPLE = 1000
# 2**(3n) element triples
MAX_TERNARY_ATOMS = 10

ATOM_LAWS = {
    "R4": "associativity: d <= (a;b);c iff d <= a;(b;c)",
    "R5": "identity law: a;1' = a",
    "R6": "first involution law: a˘˘ = a",
    "R7": "second involution law: (a;b)˘ = b˘;a˘",
    "R10": "Tarski's law: a˘;-(a;b) <= -b",
    "R11": "cycle law: k <= i;j iff j <= i˘;k iff i <= k;j˘",
}

ELEMENT_LAWS = {
    "R1": "r+s = s+r",
    "R2": "r+(s+t) = (r+s)+t",
    "R3": "-(-r+s)+-(-r+-s) = s",
    "R4": "r;(s;t) = (r;s);t",
    "R5": "r;1' = r",
    "R6": "r˘˘ = r",
    "R7": "(r;s)˘ = s˘;r˘",
    "R8": "(r+s);t = r;t+s;t",
    "R9": "(r+s)˘ = r˘+s˘",
    "R10": "r˘;-(r;s)+-s = -s",
    "R11": "(r;s)·t = 0 implies (r˘;t)·s = 0",
}


class LawVerdict(BaseModel):
    law: str
    level: Level
    passed: bool
    exhaustive: bool = True
    checked: int = 0
    witness: tuple[int, ...] | None = None
    detail: str = ""

    @model_validator(mode="after")
    def _witness_only_on_failure(self) -> "LawVerdict":
        if self.passed and self.witness is not None:
            raise ValueError(f"{self.law}: a passing verdict cannot carry a witness")
        return self


class AxiomReport(BaseModel):
    structure_id: str
    mode: Mode
    seed: int = DEFAULT_SEED
    verdicts: list[LawVerdict] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def failures(self) -> list[LawVerdict]:
        return [v for v in self.verdicts if not v.passed]

    def verdict(self, law: str, level: Level = "atom") -> LawVerdict:
        for v in self.verdicts:
            if v.law == law and v.level == level:
                return v
        raise KeyError(f"no verdict for {law} at {level} level")


# -----------------------------------------------------------------------------
# Atom level
# -----------------------------------------------------------------------------
def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def _atom_verdict(law: str, bad: np.ndarray, A: AtomStructure, checked: int) -> LawVerdict:
    w = _first(bad)
    if w is None:
        return LawVerdict(law=law, level="atom", passed=True, checked=checked)
    names = A.atom_names
    return LawVerdict(
        law=law,
        level="atom",
        passed=False,
        checked=checked,
        witness=w,
        detail=f"{ATOM_LAWS[law]} fails at ({', '.join(names[i] for i in w)})",
    )


def _associativity(A: AtomStructure, workers: int | None) -> LawVerdict:
    C = A.cycle_tensor.astype(np.int32)
    n = A.atom_count

    def row(a: int) -> tuple[int, int, int, int] | None:
        # left[b, c, d]: d <= (a;b);c, right[b, c, d]: d <= a;(b;c)
        left = np.einsum("be,ecd->bcd", C[a], C) > 0
        right = np.einsum("bce,ed->bcd", C, C[a]) > 0
        w = _first(left != right)
        return None if w is None else (a, *w)

    for hit in parallel_map(row, range(n), workers):
        if hit is not None:
            a, b, c, d = hit
            names = A.atom_names
            return LawVerdict(
                law="R4",
                level="atom",
                passed=False,
                checked=n**3,
                witness=(a, b, c),
                detail=(
                    f"{ATOM_LAWS['R4']} fails at ({names[a]}, {names[b]}, {names[c]}) "
                    f"for d={names[d]}"
                ),
            )
    return LawVerdict(law="R4", level="atom", passed=True, checked=n**3)


def _identity_law(A: AtomStructure) -> LawVerdict:
    n = A.atom_count
    first_identity = A.identity_atoms[0]
    for a in range(n):
        got = A.compose(1 << a, A.identity_mask)
        if got == 1 << a:
            continue
        if got & (1 << a) == 0:
            e, k = first_identity, a
        else:
            k = (got & ~(1 << a)).bit_length() - 1
            e = next(i for i in A.identity_atoms if A.composition[a][i] >> k & 1)
        names = A.atom_names
        return LawVerdict(
            law="R5",
            level="atom",
            passed=False,
            checked=n,
            witness=(a, e, k),
            detail=f"{ATOM_LAWS['R5']} fails: {names[a]};1' = {A.describe(got)}",
        )
    return LawVerdict(law="R5", level="atom", passed=True, checked=n)


def _atom_level(A: AtomStructure, workers: int | None) -> list[LawVerdict]:
    n = A.atom_count
    C = A.cycle_tensor
    conv = np.array(A.converse_map, dtype=np.intp)
    verdicts = [_associativity(A, workers), _identity_law(A)]

    # guaranteed by structure validation; kept so the report lists every law
    bad = np.flatnonzero(conv[conv] != np.arange(n))
    if len(bad):
        a = int(bad[0])
        verdicts.append(
            LawVerdict(
                law="R6",
                level="atom",
                passed=False,
                checked=n,
                witness=(a, int(conv[a]), int(conv[conv[a]])),
                detail=ATOM_LAWS["R6"],
            )
        )
    else:
        verdicts.append(LawVerdict(law="R6", level="atom", passed=True, checked=n))

    # (a;b)˘ has k iff b˘;a˘ has k˘
    swapped = C[np.ix_(conv, conv, conv)].transpose(1, 0, 2)
    verdicts.append(_atom_verdict("R7", C != swapped, A, n**3))

    # b <= a˘;d must force d <= a;b
    tarski = C[conv].transpose(0, 2, 1)
    verdicts.append(_atom_verdict("R10", tarski & ~C, A, n**3))

    rot1 = C[conv].transpose(0, 2, 1)
    rot2 = C[:, conv, :].transpose(2, 1, 0)
    verdicts.append(_atom_verdict("R11", (C != rot1) | (C != rot2), A, n**3))
    return verdicts


# -----------------------------------------------------------------------------
# Element level
# -----------------------------------------------------------------------------
def _element_verdict(
    law: str, witness: tuple[int, ...] | None, A: AtomStructure, *, exhaustive: bool, checked: int
) -> LawVerdict:
    if witness is None:
        return LawVerdict(law=law, level="element", passed=True, exhaustive=exhaustive, checked=checked)
    rendered = ", ".join(A.describe(m) for m in witness)
    return LawVerdict(
        law=law,
        level="element",
        passed=False,
        exhaustive=exhaustive,
        checked=checked,
        witness=witness,
        detail=f"{ELEMENT_LAWS[law]} fails at ({rendered})",
    )


def _scan_pairs(size: int, bad_rows: Callable[[np.ndarray], np.ndarray], chunk: int = 256) -> tuple[int, int] | None:
    for start in range(0, size, chunk):
        rows = np.arange(start, min(size, start + chunk))
        hit = _first(bad_rows(rows))
        if hit is not None:
            return int(rows[hit[0]]), int(hit[1])
    return None


def _exhaustive_binary(A: AtomStructure, T: np.ndarray, conv: np.ndarray) -> dict[str, tuple[int, ...] | None]:
    size = T.shape[0]
    dt = T.dtype
    idx = np.arange(size, dtype=dt)
    full = dt.type(A.full_mask)
    ident = A.identity_mask

    def c(v: np.ndarray) -> np.ndarray:
        return v ^ full

    out: dict[str, tuple[int, ...] | None] = {}
    out["R1"] = _scan_pairs(size, lambda r: (idx[r][:, None] | idx[None, :]) != (idx[None, :] | idx[r][:, None]))
    out["R3"] = _scan_pairs(
        size,
        lambda r: (c(c(idx[r])[:, None] | idx[None, :]) | c(c(idx[r])[:, None] | c(idx)[None, :])) != idx[None, :],
    )
    bad5 = T[:, ident] != idx
    out["R5"] = None if not bad5.any() else (int(np.argmax(bad5)),)
    bad6 = conv[conv] != idx
    out["R6"] = None if not bad6.any() else (int(np.argmax(bad6)),)
    out["R7"] = _scan_pairs(size, lambda r: conv[T[r, :]] != T[np.ix_(conv, conv[r])].T)
    out["R9"] = _scan_pairs(size, lambda r: conv[idx[r][:, None] | idx[None, :]] != (conv[r][:, None] | conv[None, :]))
    out["R10"] = _scan_pairs(
        size,
        lambda r: (T[conv[r][:, None], c(T[r, :])] | c(idx)[None, :]) != c(idx)[None, :],
    )
    return out


def _exhaustive_ternary(T: np.ndarray, conv: np.ndarray) -> dict[str, tuple[int, ...] | None]:
    size = T.shape[0]
    idx = np.arange(size, dtype=T.dtype)
    join = idx[:, None] | idx[None, :]
    rows = idx[:, None].astype(np.intp)
    out: dict[str, tuple[int, ...] | None] = {"R2": None, "R4": None, "R8": None, "R11": None}
    for t in range(size):
        col = T[:, t]
        checks = {
            "R2": (idx[:, None] | (idx[None, :] | idx[t])) != (join | idx[t]),
            "R4": col[T] != T[rows, col[None, :]],
            "R8": col[join] != (col[:, None] | col[None, :]),
            "R11": ((T & idx[t]) == 0) & ((col[conv][:, None] & idx[None, :]) != 0),
        }
        for law, bad in checks.items():
            if out[law] is None:
                hit = _first(bad)
                if hit is not None:
                    out[law] = (hit[0], hit[1], t)
        if all(v is not None for v in out.values()):
            break
    return out


def _sampled(A: AtomStructure, laws: list[str], seed: int, count: int) -> dict[str, tuple[int, ...] | None]:
    rng = np.random.default_rng(seed)
    n = A.atom_count
    cm, cv, cmp_ = A.compose, A.converse_mask, A.complement_mask
    ident = A.identity_mask
    preds: dict[str, Callable[..., bool]] = {
        "R1": lambda r, s: (r | s) == (s | r),
        "R2": lambda r, s, t: (r | (s | t)) == ((r | s) | t),
        "R3": lambda r, s: (cmp_(cmp_(r) | s) | cmp_(cmp_(r) | cmp_(s))) == s,
        "R4": lambda r, s, t: cm(r, cm(s, t)) == cm(cm(r, s), t),
        "R5": lambda r: cm(r, ident) == r,
        "R6": lambda r: cv(cv(r)) == r,
        "R7": lambda r, s: cv(cm(r, s)) == cm(cv(s), cv(r)),
        "R8": lambda r, s, t: cm(r | s, t) == (cm(r, t) | cm(s, t)),
        "R9": lambda r, s: cv(r | s) == (cv(r) | cv(s)),
        "R10": lambda r, s: (cm(cv(r), cmp_(cm(r, s))) | cmp_(s)) == cmp_(s),
        "R11": lambda r, s, t: (cm(r, s) & t) != 0 or (cm(cv(r), t) & s) == 0,
    }
    arity = {"R5": 1, "R6": 1, "R2": 3, "R4": 3, "R8": 3, "R11": 3}
    samples = {k: random_masks(rng, n, count, k) for k in (1, 2, 3)}
    out: dict[str, tuple[int, ...] | None] = {}
    for law in laws:
        pred = preds[law]
        out[law] = next((tup for tup in samples[arity.get(law, 2)] if not pred(*tup)), None)
    return out


def _element_level(
    A: AtomStructure,
    *,
    threshold: int,
    seed: int,
    sample_pairs: int,
    exhaustive: bool | None,
) -> list[LawVerdict]:
    n = A.atom_count
    binary_limit = min(threshold, MAX_TABLE_ATOMS)
    ternary_limit = min(threshold, MAX_TERNARY_ATOMS)
    if exhaustive is True:
        binary_limit, ternary_limit = MAX_TABLE_ATOMS, MAX_TERNARY_ATOMS
    elif exhaustive is False:
        binary_limit = ternary_limit = 0
    if exhaustive is not False and MAX_TERNARY_ATOMS < n <= binary_limit:
        logger.warning("%d atoms: R2, R4, R8 and R11 fall back to sampling above %d atoms", n, MAX_TERNARY_ATOMS)

    binary = ["R1", "R3", "R5", "R6", "R7", "R9", "R10"]
    ternary = ["R2", "R4", "R8", "R11"]
    found: dict[str, tuple[int, ...] | None] = {}
    exhaustive_flags: dict[str, bool] = {}
    checked: dict[str, int] = {}

    T = conv = None
    if n <= binary_limit:
        T = product_table(A.composition)
        conv = subset_or_table([1 << c for c in A.converse_map], n).astype(np.intp)
        found.update(_exhaustive_binary(A, T, conv))
        for law in binary:
            exhaustive_flags[law] = True
            checked[law] = 4**n if law not in ("R5", "R6") else 2**n
    if n <= ternary_limit and T is not None and conv is not None:
        found.update(_exhaustive_ternary(T, conv))
        for law in ternary:
            exhaustive_flags[law] = True
            checked[law] = 8**n
    missing = [law for law in binary + ternary if law not in found]
    if missing:
        logger.info("sampling %d tuples for %s (n=%d, seed=%d)", sample_pairs, ",".join(missing), n, seed)
        found.update(_sampled(A, missing, seed, sample_pairs))
        for law in missing:
            exhaustive_flags[law] = False
            checked[law] = sample_pairs

    order = ["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "R10", "R11"]
    return [
        _element_verdict(law, found[law], A, exhaustive=exhaustive_flags[law], checked=checked[law])
        for law in order
    ]


def verify_ra_axioms(
    A: AtomStructure,
    mode: Mode = "atom_level",
    *,
    threshold: int = DEFAULT_THRESHOLD,
    seed: int = DEFAULT_SEED,
    sample_pairs: int = DEFAULT_SAMPLE,
    exhaustive: bool | None = None,
    workers: int | None = None,
) -> AxiomReport:
    """Check the relation-algebra axioms; failures become report entries."""
    if threshold < 1:
        raise ValueError(f"threshold must be >= 1, got {threshold}")
    verdicts = _atom_level(A, workers)
    if mode == "element_level":
        verdicts.extend(
            _element_level(A, threshold=threshold, seed=seed, sample_pairs=sample_pairs, exhaustive=exhaustive)
        )
    report = AxiomReport(structure_id=A.structure_id, mode=mode, seed=seed, verdicts=verdicts)
    logger.info(
        "axioms %s on %s (%d atoms): %d checks, %d failed",
        mode,
        A.structure_id,
        A.atom_count,
        len(verdicts),
        len(report.failures),
    )
    return report
