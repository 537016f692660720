"""Executable property suites over stabilizers, regular elements and quotients.

Every suite quantifies over all E-pairs (or E-triples) of a measured algebra
and over every qualifying element below the rectangles involved. Rectangles
holding more than ``limit`` atoms are skipped with a warning.
"""

from __future__ import annotations

import logging
from typing import Callable, Iterable

from pydantic import BaseModel, Field

from ..core.errors import CosetraError
from ..groups.quotient import (
    compose,
    identity_iso,
    image_subgroup,
    induce_on_coarser,
    inner_automorphism,
    inverse,
    same_map,
)
from ..groups.subgroups import coset_system, conjugate, intersection, is_normal, product_subgroup
from ..utils.parallel import parallel_map
from .records import MeasuredAlgebra, submasks
from .regular import find_left_regular_below, quotient_iso_of_regular, regular_decomposition
from .stabilizers import stabilizer_data

logger = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_LIMIT",
    "LemmaResult",
    "LemmaReport",
    "Tally",
    "MEASURE_SUITES",
    "elements_below",
    "run_suites",
    "run_lemma_suites",
]

DEFAULT_LIMIT = 12


class LemmaResult(BaseModel):
    name: str
    description: str
    checked: int = 0
    counterexamples: int = 0
    witness: str | None = None

    @property
    def passed(self) -> bool:
        return self.counterexamples == 0


class LemmaReport(BaseModel):
    structure_id: str
    results: list[LemmaResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[LemmaResult]:
        return [r for r in self.results if not r.passed]

    def result(self, name: str) -> LemmaResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(f"no suite named {name!r}")


class Tally:
    """Counts checked instances of one suite and keeps the first counterexample."""

    def __init__(self, name: str, description: str) -> None:
        self.name = name
        self.description = description
        self.checked = 0
        self.bad = 0
        self.witness: str | None = None

    def check(self, what: Callable[[], str], test: Callable[[], bool]) -> bool:
        self.checked += 1
        try:
            ok = bool(test())
            reason = ""
        except CosetraError as exc:
            ok = False
            reason = f": {exc}"
        if not ok:
            self.bad += 1
            if self.witness is None:
                self.witness = what() + reason
        return ok

    def result(self) -> LemmaResult:
        return LemmaResult(
            name=self.name,
            description=self.description,
            checked=self.checked,
            counterexamples=self.bad,
            witness=self.witness,
        )


# -----------------------------------------------------------------------------
# Element pools
# -----------------------------------------------------------------------------
def elements_below(m: MeasuredAlgebra, x: int, y: int, limit: int) -> list[int]:
    key = ("elements", x, y, limit)
    cached = m.cache.get(key)
    if cached is not None:
        return cached
    rect = m.rectangle(x, y)
    if rect.bit_count() > limit:
        logger.warning(
            "skipping elements below %s;1;%s: %d atoms exceed the limit %d",
            m.name(x),
            m.name(y),
            rect.bit_count(),
            limit,
        )
        return m.cache.put(key, [])
    return m.cache.put(key, list(submasks(rect)))


def _left_regular(m: MeasuredAlgebra, x: int, y: int, limit: int) -> list[int]:
    return [a for a in elements_below(m, x, y, limit) if stabilizer_data(m, a, x, y).left_regular]


def _regular_normal(m: MeasuredAlgebra, x: int, y: int, limit: int) -> list[int]:
    out = []
    for a in elements_below(m, x, y, limit):
        d = stabilizer_data(m, a, x, y)
        if d.regular and is_normal(d.left) and is_normal(d.right):
            out.append(a)
    return out


def _left_translates(m: MeasuredAlgebra, a: int, x: int, y: int) -> list[int]:
    d = stabilizer_data(m, a, x, y)
    return [m.left_translate(f, x, a) for f in coset_system(d.left).representatives]


# -----------------------------------------------------------------------------
# Suites
# -----------------------------------------------------------------------------
def _stabilizer_bounds(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        for a in elements_below(m, x, y, limit):
            d = stabilizer_data(m, a, x, y)

            def test() -> bool:
                left_cosets = coset_system(d.left).cosets
                right_cosets = coset_system(d.right, "right").cosets
                return (
                    d.left.members <= d.X
                    and d.right.members <= d.Y
                    and all(c <= d.X or not c & d.X for c in left_cosets)
                    and all(c <= d.Y or not c & d.Y for c in right_cosets)
                )

            t.check(lambda: m.structure.describe(a), test)


def _first_partition(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        rect = m.rectangle(x, y)
        for a in _left_regular(m, x, y, limit):

            def test() -> bool:
                parts = _left_translates(m, a, x, y)
                union = 0
                for p in parts:
                    if not p or p & union:
                        return False
                    union |= p
                return union == rect

            t.check(lambda: m.structure.describe(a), test)


def _atomic_partition(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        atoms = m.atoms_in(x, y)
        for a in atoms:

            def test() -> bool:
                parts = _left_translates(m, 1 << a, x, y)
                return sorted(p.bit_length() - 1 for p in parts) == list(atoms) and all(
                    p.bit_count() == 1 for p in parts
                )

            t.check(lambda: m.name(a), test)


def _second_partition(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        pool = _left_regular(m, x, y, limit)
        for b in pool:
            db = stabilizer_data(m, b, x, y)
            for a in pool:
                if a & ~b:
                    continue
                da = stabilizer_data(m, a, x, y)

                def test() -> bool:
                    if not da.left.members <= db.left.members:
                        return False
                    for block in coset_system(db.left).cosets:
                        lhs = m.left_translate(min(block), x, b)
                        rhs = 0
                        for f in block:
                            rhs |= m.left_translate(f, x, a)
                        if lhs != rhs:
                            return False
                    return True

                t.check(lambda: f"{m.structure.describe(a)} <= {m.structure.describe(b)}", test)


def _first_product(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        pool = _left_regular(m, x, y, limit)
        for i, a in enumerate(pool):
            for b in pool[i:]:
                if not a & b:
                    continue

                def test() -> bool:
                    dab = stabilizer_data(m, a & b, x, y)
                    expected = intersection(stabilizer_data(m, a, x, y).left, stabilizer_data(m, b, x, y).left)
                    return dab.left_regular and dab.left.members == expected.members

                t.check(lambda: f"{m.structure.describe(a)} . {m.structure.describe(b)}", test)


def _second_product(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    s = m.structure
    for x, y in m.E.sorted_pairs():
        pool = [
            a
            for a in _left_regular(m, x, y, limit)
            if is_normal(stabilizer_data(m, a, x, y).left)
        ]
        for a in pool:
            for b in pool:

                def test() -> bool:
                    aa = s.compose(s.compose(a, s.converse_mask(a)), b)
                    bb = s.compose(s.compose(b, s.converse_mask(b)), a)
                    if bool(a & b) != (aa == bb):
                        return False
                    if not a & b:
                        return True
                    la, lb = stabilizer_data(m, a, x, y).left, stabilizer_data(m, b, x, y).left
                    prod = product_subgroup(la, lb)
                    if stabilizer_data(m, bb, x, y).left.members != prod.members:
                        return False
                    cos_a = [c for c in coset_system(la).cosets if c <= prod.members]
                    cos_b = [c for c in coset_system(lb).cosets if c <= prod.members]
                    union = 0
                    for ca in cos_a:
                        for cb in cos_b:
                            meet = ca & cb
                            rhs = m.left_translate(min(ca), x, a) & m.left_translate(min(cb), x, b)
                            lhs = m.left_translate(min(meet), x, a & b) if meet else 0
                            if lhs != rhs or lhs & union:
                                return False
                            union |= lhs
                    return union == bb

                t.check(lambda: f"{s.describe(a)}, {s.describe(b)}", test)


def _first_translation(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        gx, gy = m.group(x), m.group(y)
        for a in elements_below(m, x, y, limit):

            def test() -> bool:
                la = stabilizer_data(m, a, x, y).left
                for f in gx.elements:
                    fa = m.left_translate(f, x, a)
                    if stabilizer_data(m, fa, x, y).left.members != conjugate(la, f).members:
                        return False
                for g in gy.elements:
                    ag = m.right_translate(a, g, y)
                    if stabilizer_data(m, ag, x, y).left.members != la.members:
                        return False
                return True

            t.check(lambda: m.structure.describe(a), test)


def _second_translation(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        pool = _left_regular(m, x, y, limit)
        for a in pool:

            def test() -> bool:
                la = stabilizer_data(m, a, x, y).left.members
                translates = _left_translates(m, a, x, y)
                below = above = equal = True
                for b in pool:
                    lb = stabilizer_data(m, b, x, y).left.members
                    below &= (lb <= la) == any(b & ~c == 0 for c in translates)
                    above &= (la <= lb) == any(c & ~b == 0 for c in translates)
                    equal &= (lb == la) == (b in translates)
                normal = is_normal(stabilizer_data(m, a, x, y).left)
                return normal == below == above == equal

            t.check(lambda: m.structure.describe(a), test)


def _translation_meet(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        gx, gy = m.group(x), m.group(y)
        for a in _regular_normal(m, x, y, limit):

            def test() -> bool:
                for f in gx.elements:
                    fa = m.left_translate(f, x, a)
                    for g in gy.elements:
                        ag = m.right_translate(a, g, y)
                        if bool(fa & ag) != (fa == ag):
                            return False
                return True

            t.check(lambda: m.structure.describe(a), test)


def _quotient_alignment(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        for a in _regular_normal(m, x, y, limit):

            def test() -> bool:
                q = quotient_iso_of_regular(m, a, x, y)
                return all(
                    m.left_translate(f, x, a) == m.right_translate(a, g, y)
                    for f, g in zip(q.left.representatives, q.right.representatives)
                )

            t.check(lambda: m.structure.describe(a), test)


def _translation_quotient(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        for a in _regular_normal(m, x, y, limit):
            q = quotient_iso_of_regular(m, a, x, y)
            for eta, f in enumerate(q.left.representatives):

                def test() -> bool:
                    c = m.left_translate(f, x, a)
                    qc = quotient_iso_of_regular(m, c, x, y)
                    return same_map(qc.phi, compose(inner_automorphism(q.left, eta), q.phi))

                t.check(lambda: f"{m.structure.describe(a)} translated by coset {eta}", test)


def _refinement(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        pool = _regular_normal(m, x, y, limit)
        for b in pool:
            for a in pool:
                if a & ~b:
                    continue

                def test() -> bool:
                    qa = quotient_iso_of_regular(m, a, x, y)
                    qb = quotient_iso_of_regular(m, b, x, y)
                    da, db = qa.stabilizers, qb.stabilizers
                    if not (da.left <= db.left and da.right <= db.right):
                        return False
                    return same_map(induce_on_coarser(qa.phi, db.left), qb.phi)

                t.check(lambda: f"{m.structure.describe(a)} <= {m.structure.describe(b)}", test)


def _identity(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x in m.indices:

        def test() -> bool:
            q = quotient_iso_of_regular(m, 1 << x, x, x)
            d = q.stabilizers
            return d.left.order == 1 and d.right.order == 1 and same_map(q.phi, identity_iso(q.left))

        t.check(lambda: m.name(x), test)


def _converse(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    s = m.structure
    for x, y in m.E.sorted_pairs():
        for a in _regular_normal(m, x, y, limit):

            def test() -> bool:
                q = quotient_iso_of_regular(m, a, x, y)
                qc = quotient_iso_of_regular(m, s.converse_mask(a), y, x)
                dc = qc.stabilizers
                return (
                    dc.left.members == q.stabilizers.right.members
                    and dc.right.members == q.stabilizers.left.members
                    and same_map(qc.phi, inverse(q.phi))
                )

            t.check(lambda: s.describe(a), test)


def _relative_product(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    s = m.structure
    for x, y, z in m.E.triples():
        for a in _regular_normal(m, x, y, limit):
            for b in _regular_normal(m, y, z, limit):

                def test() -> bool:
                    qa = quotient_iso_of_regular(m, a, x, y)
                    qb = quotient_iso_of_regular(m, b, y, z)
                    middle = product_subgroup(qa.stabilizers.right, qb.stabilizers.left)
                    qab = quotient_iso_of_regular(m, s.compose(a, b), x, z)
                    dab = qab.stabilizers
                    if dab.left.members != image_subgroup(inverse(qa.phi), middle).members:
                        return False
                    if dab.right.members != image_subgroup(qb.phi, middle).members:
                        return False
                    chained = compose(induce_on_coarser(qa.phi, dab.left), induce_on_coarser(qb.phi, middle))
                    return same_map(qab.phi, chained)

                t.check(lambda: f"{s.describe(a)} ; {s.describe(b)}", test)


def _atomic_product(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    s = m.structure
    for x, y, z in m.E.triples():
        if max(len(m.atoms_in(x, y)), len(m.atoms_in(y, z)), len(m.atoms_in(x, z))) > limit:
            continue
        for a in m.atoms_in(x, y):
            for b in m.atoms_in(y, z):
                for c in m.atoms_in(x, z):

                    def test() -> bool:
                        qa = quotient_iso_of_regular(m, 1 << a, x, y)
                        qb = quotient_iso_of_regular(m, 1 << b, y, z)
                        qc = quotient_iso_of_regular(m, 1 << c, x, z)
                        ab = s.compose(1 << a, 1 << b)
                        dab = stabilizer_data(m, ab, x, z)
                        outer = product_subgroup(qa.stabilizers.left, qc.stabilizers.left)
                        middle = product_subgroup(qa.stabilizers.right, qb.stabilizers.left)
                        inner = product_subgroup(qb.stabilizers.right, qc.stabilizers.right)
                        if dab.left.members != outer.members or dab.right.members != inner.members:
                            return False
                        if image_subgroup(qa.phi, outer).members != middle.members:
                            return False
                        hat_a = induce_on_coarser(qa.phi, outer)
                        hat_b = induce_on_coarser(qb.phi, middle)
                        hat_c = induce_on_coarser(qc.phi, outer)
                        chained = compose(hat_a, hat_b)
                        if ab >> c & 1 and not same_map(chained, hat_c):
                            return False
                        coarse = hat_c.source
                        for f in qc.left.representatives:
                            if m.left_translate(f, x, 1 << c) & ~ab == 0:
                                tau = inner_automorphism(coarse, coarse.index_of(f))
                                return same_map(chained, compose(tau, hat_c))
                        return False

                    t.check(lambda: f"{m.name(a)}, {m.name(b)}, {m.name(c)}", test)


def _left_regular_is_regular(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        for a in _left_regular(m, x, y, limit):
            t.check(lambda: m.structure.describe(a), lambda: stabilizer_data(m, a, x, y).regular)


def _find_left_regular(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        for a in elements_below(m, x, y, limit):

            def test() -> bool:
                b = find_left_regular_below(m, a, x, y)
                return b != 0 and b & ~a == 0 and stabilizer_data(m, b, x, y).left_regular

            t.check(lambda: m.structure.describe(a), test)


def _decomposition(m: MeasuredAlgebra, t: Tally, limit: int) -> None:
    for x, y in m.E.sorted_pairs():
        atoms = m.atoms_in(x, y)
        for b in elements_below(m, x, y, limit):
            if not stabilizer_data(m, b, x, y).regular:
                continue
            for atom in (None, atoms[0]):

                def test() -> bool:
                    dec = regular_decomposition(m, b, x, y, atom=atom)
                    return dec.regular and dec.subgroup is not None

                t.check(lambda: f"{m.structure.describe(b)} via atom {atom}", test)


Suite = Callable[[MeasuredAlgebra, Tally, int], None]

MEASURE_SUITES: dict[str, tuple[str, Suite]] = {
    "stabilizer_bounds": ("L_a within X_a, X_a a union of L_a-cosets (and dually)", _stabilizer_bounds),
    "first_partition": ("translates of a left-regular element partition the rectangle", _first_partition),
    "atomic_partition": ("translates of an atom list the atoms of its rectangle", _atomic_partition),
    "second_partition": ("L_b-translates of b are unions of L_a-translates of a <= b", _second_partition),
    "first_product": ("a.b is left-regular with stabilizer L_a meet L_b", _first_product),
    "second_product": ("a.b nonzero iff a;a˘;b = b;b˘;a, with product stabilizer and translates", _second_product),
    "first_translation": ("L_{f;a} = f;L_a;f˘ and L_{a;g} = L_a", _first_translation),
    "second_translation": ("L_a normal iff translates of a order the left-regular elements", _second_translation),
    "translation_meet": ("(f;a).(a;g) nonzero iff f;a = a;g", _translation_meet),
    "quotient_alignment": ("L_i;a = a;R_i for the canonical quotient isomorphism", _quotient_alignment),
    "translation_quotient": ("phi of a translate is the inner automorphism followed by phi_a", _translation_quotient),
    "refinement": ("phi_a coarsened to L_b is phi_b for a <= b", _refinement),
    "identity": ("measurable atoms are regular with trivial stabilizers and identity phi", _identity),
    "converse": ("stabilizers swap and phi inverts under converse", _converse),
    "relative_product": ("stabilizers and phi of a;b from those of a and b", _relative_product),
    "atomic_product": ("atom products: stabilizers, images and the shifted phi identity", _atomic_product),
    "left_regular_is_regular": ("left-regular elements are regular", _left_regular_is_regular),
    "find_left_regular": ("a left-regular element exists below every nonzero element", _find_left_regular),
    "regular_decomposition": ("regular elements are coset sums of atom translates with M = L_b", _decomposition),
}


def run_suites(
    m: MeasuredAlgebra,
    suites: dict[str, tuple[str, Suite]],
    names: Iterable[str] | None = None,
    *,
    limit: int = DEFAULT_LIMIT,
    workers: int | None = None,
) -> list[LemmaResult]:
    selected = list(suites) if names is None else list(names)
    unknown = [n for n in selected if n not in suites]
    if unknown:
        raise KeyError(f"unknown suites: {', '.join(unknown)}")

    def run(name: str) -> LemmaResult:
        description, fn = suites[name]
        tally = Tally(name, description)
        fn(m, tally, limit)
        logger.info("suite %s: %d checked, %d counterexamples", name, tally.checked, tally.bad)
        return tally.result()

    return parallel_map(run, selected, workers)


def run_lemma_suites(
    m: MeasuredAlgebra,
    names: Iterable[str] | None = None,
    *,
    limit: int = DEFAULT_LIMIT,
    workers: int | None = None,
) -> LemmaReport:
    results = run_suites(m, MEASURE_SUITES, names, limit=limit, workers=workers)
    return LemmaReport(structure_id=m.structure.structure_id, results=results)
