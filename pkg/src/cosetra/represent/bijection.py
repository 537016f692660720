"""The atom bijection theta from a measurable algebra onto its coset algebra.

theta sends the derived atom a_{xy,alpha} to R_{xy,alpha}; psi extends it to
elements by atomwise union. Peircean preservation is checked on atoms; the
isomorphism check runs on elements, exhaustively while the product tables fit
under the threshold and on a fixed-seed sample otherwise.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np
from pydantic import BaseModel

from ..builder.algebra import CosetAlgebra
from ..builder.relations import CosetAtomIndex
from ..core.errors import DomainError, InternalConsistencyError
from ..frames.models import ExtractedFrame
from ..kernel.axioms import DEFAULT_SAMPLE, DEFAULT_SEED, DEFAULT_THRESHOLD
from ..kernel.bitsets import MAX_TABLE_ATOMS, iter_bits, product_table, random_masks, subset_or_table
from ..kernel.structure import AtomStructure
from ..measure.lemmas import DEFAULT_LIMIT, elements_below
from ..measure.records import MeasuredAlgebra
from ..measure.stabilizers import stabilizer_data
from ..utils.parallel import parallel_map

logger = logging.getLogger(__name__)

__all__ = [
    "AtomBijection",
    "PeirceanVerdict",
    "IsomorphismVerdict",
    "identity_bijection",
    "build_bijection",
    "verify_peircean",
    "verify_isomorphism",
]

Operation = Literal["bijection", "composition", "converse", "identity", "join", "complement"]


@dataclass(frozen=True)
class AtomBijection:
    """theta: source atom i goes to target atom ``theta[i]``."""

    source: AtomStructure
    target: AtomStructure
    theta: tuple[int, ...]
    algebra: CosetAlgebra | None = None
    measured: MeasuredAlgebra | None = None

    def __post_init__(self) -> None:
        if len(self.theta) != self.source.atom_count:
            raise DomainError(f"theta has {len(self.theta)} entries for {self.source.atom_count} atoms")
        for t in self.theta:
            if not 0 <= t < self.target.atom_count:
                raise DomainError(f"theta image {t} outside 0..{self.target.atom_count - 1}")

    @property
    def bijective(self) -> bool:
        return self.source.atom_count == self.target.atom_count and len(set(self.theta)) == len(self.theta)

    def psi(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= 1 << self.theta[i]
        return out

    def pairs(self) -> list[tuple[str, str]]:
        return [(self.source.atom_names[i], self.target.atom_names[t]) for i, t in enumerate(self.theta)]


def identity_bijection(A: AtomStructure) -> AtomBijection:
    return AtomBijection(source=A, target=A, theta=tuple(range(A.atom_count)))


def build_bijection(ef: ExtractedFrame, algebra: CosetAlgebra) -> AtomBijection:
    """theta(a_{xy,alpha}) = R_{xy,alpha} for every derived atom."""
    A = ef.measured.structure
    theta: list[int | None] = [None] * A.atom_count
    for (x, y, alpha), a in ef.atoms.items():
        if theta[a] is not None:
            raise InternalConsistencyError(f"atom {A.atom_names[a]} is derived twice")
        theta[a] = algebra.atom_of(CosetAtomIndex(x, y, alpha))
    missing = [A.atom_names[i] for i, t in enumerate(theta) if t is None]
    if missing:
        raise InternalConsistencyError(f"atoms outside every rectangle x;1;y: {', '.join(missing)}")
    return AtomBijection(
        source=A,
        target=algebra.structure,
        theta=tuple(t for t in theta if t is not None),
        algebra=algebra,
        measured=ef.measured,
    )


class PeirceanVerdict(BaseModel):
    passed: bool
    checked: int = 0
    operation: Operation | None = None
    witness: tuple[int, ...] | None = None
    detail: str = ""


class IsomorphismVerdict(BaseModel):
    passed: bool
    exhaustive: bool
    checked: int = 0
    operation: Operation | None = None
    witness: tuple[int, ...] | None = None
    detail: str = ""


# -----------------------------------------------------------------------------
# Peircean operations on atoms
# -----------------------------------------------------------------------------
def _composition_row(theta: AtomBijection, a: int) -> tuple[int, int] | None:
    A, C, t = theta.source, theta.target, theta.theta
    n = A.atom_count
    for b in range(n):
        below = A.composition[a][b]
        image = C.composition[t[a]][t[b]]
        for c in range(n):
            if bool(below >> c & 1) != bool(image >> t[c] & 1):
                return b, c
    return None


def verify_peircean(theta: AtomBijection, *, workers: int | None = None) -> PeirceanVerdict:
    """c <= a;b iff theta(c) <= theta(a) (x) theta(b), with converse and identity likewise."""
    A, C, t = theta.source, theta.target, theta.theta
    n = A.atom_count
    if not theta.bijective:
        return PeirceanVerdict(passed=False, operation="bijection", detail="theta is not a bijection on atoms")
    for a in range(n):
        if t[A.converse_map[a]] != C.converse_map[t[a]]:
            return PeirceanVerdict(
                passed=False,
                checked=a + 1,
                operation="converse",
                witness=(a,),
                detail=f"converse of {A.atom_names[a]} is not sent to the converse of its image",
            )
    for a in range(n):
        if (a in A.identity_atoms) != (t[a] in C.identity_atoms):
            return PeirceanVerdict(
                passed=False,
                checked=a + 1,
                operation="identity",
                witness=(a,),
                detail=f"{A.atom_names[a]} and its image disagree on lying below 1'",
            )
    rows = parallel_map(lambda a: _composition_row(theta, a), range(n), workers)
    for a, hit in enumerate(rows):
        if hit is not None:
            b, c = hit
            names = A.atom_names
            return PeirceanVerdict(
                passed=False,
                checked=n**3,
                operation="composition",
                witness=(a, b, c),
                detail=f"{names[c]} <= {names[a]};{names[b]} is not preserved",
            )
    logger.info("Peircean operations preserved on %d atoms", n)
    return PeirceanVerdict(passed=True, checked=n**3 + 2 * n)


# -----------------------------------------------------------------------------
# Element level
# -----------------------------------------------------------------------------
def _scan(size: int, bad_rows: Callable[[np.ndarray], np.ndarray], chunk: int = 256) -> tuple[int, int] | None:
    for start in range(0, size, chunk):
        rows = np.arange(start, min(size, start + chunk))
        hits = np.argwhere(bad_rows(rows))
        if len(hits):
            return int(rows[hits[0][0]]), int(hits[0][1])
    return None


def _exhaustive(theta: AtomBijection) -> tuple[Operation, tuple[int, ...]] | None:
    A, C = theta.source, theta.target
    n = A.atom_count
    size = 1 << n
    psi = subset_or_table([1 << t for t in theta.theta], n).astype(np.intp)
    if len(np.unique(psi)) != size:
        return "bijection", ()
    idx = np.arange(size, dtype=np.intp)
    TA = product_table(A.composition)
    TC = product_table(C.composition)
    conv_a = subset_or_table([1 << c for c in A.converse_map], n).astype(np.intp)
    conv_c = subset_or_table([1 << c for c in C.converse_map], n).astype(np.intp)

    bad = psi[conv_a] != conv_c[psi]
    if bad.any():
        return "converse", (int(np.argmax(bad)),)
    if psi[A.identity_mask] != C.identity_mask:
        return "identity", (A.identity_mask,)
    bad = psi[A.full_mask ^ idx] != (C.full_mask ^ psi)
    if bad.any():
        return "complement", (int(np.argmax(bad)),)
    hit = _scan(size, lambda r: psi[idx[r][:, None] | idx[None, :]] != (psi[r][:, None] | psi[None, :]))
    if hit is not None:
        return "join", hit
    hit = _scan(size, lambda r: psi[TA[r, :]] != TC[psi[r][:, None], psi[None, :]])
    if hit is not None:
        return "composition", hit
    return None


def _sample_elements(theta: AtomBijection, limit: int) -> list[int]:
    A = theta.source
    found = [1 << i for i in range(A.atom_count)]
    m = theta.measured
    if m is not None:
        for x, y in m.E.sorted_pairs():
            found.append(m.rectangle(x, y))
            found.extend(a for a in elements_below(m, x, y, limit) if a and stabilizer_data(m, a, x, y).regular)
    return list(dict.fromkeys(found))


def _sampled(theta: AtomBijection, seed: int, count: int, limit: int) -> tuple[int, tuple[Operation, tuple[int, ...]] | None]:
    A, C, psi = theta.source, theta.target, theta.psi
    elements = _sample_elements(theta, limit)
    rng = np.random.default_rng(seed)
    pairs = [(r, s) for r in elements for s in elements] + [
        (r, s) for r, s in random_masks(rng, A.atom_count, count, 2)
    ]
    logger.info("sampled isomorphism check: %d elements, %d pairs (seed=%d)", len(elements), len(pairs), seed)
    if psi(A.identity_mask) != C.identity_mask:
        return 0, ("identity", (A.identity_mask,))
    for k, (r, s) in enumerate(pairs, start=1):
        if psi(A.converse_mask(r)) != C.converse_mask(psi(r)):
            return k, ("converse", (r,))
        if psi(A.complement_mask(r)) != C.complement_mask(psi(r)):
            return k, ("complement", (r,))
        if psi(r | s) != psi(r) | psi(s):
            return k, ("join", (r, s))
        if psi(A.compose(r, s)) != C.compose(psi(r), psi(s)):
            return k, ("composition", (r, s))
    return len(pairs), None


def verify_isomorphism(
    theta: AtomBijection,
    *,
    threshold: int = DEFAULT_THRESHOLD,
    seed: int = DEFAULT_SEED,
    sample_pairs: int = DEFAULT_SAMPLE,
    exhaustive: bool | None = None,
    limit: int = DEFAULT_LIMIT,
) -> IsomorphismVerdict:
    """psi preserves +, -, ;, converse and 1'.

    The sample covers every atom, every rectangle x;1;y, the regular elements
    below rectangles of at most ``limit`` atoms, and ``sample_pairs`` random
    pairs drawn with ``seed``.
    """
    A = theta.source
    n = A.atom_count
    if not theta.bijective:
        return IsomorphismVerdict(passed=False, exhaustive=True, operation="bijection", detail="theta is not a bijection")
    full = n <= min(threshold, MAX_TABLE_ATOMS)
    if exhaustive is not None:
        full = exhaustive and n <= MAX_TABLE_ATOMS
    if full:
        checked = 4**n
        failure = _exhaustive(theta)
    else:
        checked, failure = _sampled(theta, seed, sample_pairs, limit)
    if failure is None:
        logger.info("psi is an isomorphism (%s, %d checks)", "exhaustive" if full else "sampled", checked)
        return IsomorphismVerdict(passed=True, exhaustive=full, checked=checked)
    operation, witness = failure
    rendered = ", ".join(A.describe(w) for w in witness)
    return IsomorphismVerdict(
        passed=False,
        exhaustive=full,
        checked=checked,
        operation=operation,
        witness=witness,
        detail=f"psi does not preserve {operation} at ({rendered})",
    )
