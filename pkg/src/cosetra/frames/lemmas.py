"""Property suites over an extracted semi-frame and its derived atoms."""

from __future__ import annotations

import logging
from typing import Callable, Iterable

from ..measure.lemmas import LemmaReport, Tally
from ..utils.parallel import parallel_map
from .extract import shifting_coset_well_defined
from .models import ExtractedFrame

logger = logging.getLogger(__name__)

__all__ = ["FRAME_SUITES", "run_frame_suites"]


def _atom_sum(ef: ExtractedFrame, x: int, z: int, gammas: Iterable[int]) -> int:
    out = 0
    for g in gammas:
        out |= 1 << ef.atoms[(x, z, g)]
    return out


def _partition(ef: ExtractedFrame, t: Tally) -> None:
    n = ef.measured.structure.atom_count
    listed = sorted(ef.atoms.values())
    t.check(lambda: f"derived atoms {listed}", lambda: listed == list(range(n)))


def _subidentity(ef: ExtractedFrame, t: Tally) -> None:
    idm = ef.measured.structure.identity_mask
    for (x, y, i), a in sorted(ef.atoms.items()):
        t.check(lambda: f"a_({x},{y},{i})", lambda: bool(idm >> a & 1) == (x == y and i == 0))


def _converse(ef: ExtractedFrame, t: Tally) -> None:
    s = ef.measured.structure
    F = ef.triple
    for (x, y, i), a in sorted(ef.atoms.items()):

        def test() -> bool:
            h = F.H(x, y)
            g = F.groups[x]
            inv = frozenset(g.inv(k) for k in h.cosets[i])
            # the inverse coset, carried over to the reverse pair by phi_xy
            beta = F.H(y, x).index_of_set(F.phi[(x, y)].image(inv))
            return s.converse_map[a] == ef.atoms[(y, x, beta)]

        t.check(lambda: f"a_({x},{y},{i})", test)


def _zero_product(ef: ExtractedFrame, t: Tally) -> None:
    s = ef.measured.structure
    items = sorted(ef.atoms.items())
    for (x, y, i), a in items:
        for (w, z, j), b in items:
            if y != w:
                t.check(lambda: f"a_({x},{y},{i});a_({w},{z},{j})", lambda: s.compose(1 << a, 1 << b) == 0)


def _shifted_product(ef: ExtractedFrame, t: Tally) -> None:
    s = ef.measured.structure
    F = ef.triple
    for x, y, z in F.triples():
        for i in range(F.kappa(x, y)):
            for j in range(F.kappa(y, z)):
                a, b = ef.atoms[(x, y, i)], ef.atoms[(y, z, j)]
                t.check(
                    lambda: f"a_({x},{y},{i});a_({y},{z},{j})",
                    lambda: s.compose(1 << a, 1 << b) == _atom_sum(ef, x, z, F.otimes(x, y, i, z, j)),
                )


def _scaffold_product(ef: ExtractedFrame, t: Tally) -> None:
    if not ef.scaffold.is_scaffold:
        return
    F = ef.triple
    for x, y, z in F.triples():
        t.check(
            lambda: f"C_({x},{y},{z})",
            lambda: F.C[(x, y, z)] == F.identity_coset(x, y, z) and ef.zeta[(x, y, z)] == 0,
        )


def _shifting_coset(ef: ExtractedFrame, t: Tally) -> None:
    for x, y, z in ef.triple.triples():
        t.check(
            lambda: f"({x},{y},{z})",
            lambda: shifting_coset_well_defined(ef.measured, ef.scaffold, x, y, z),
        )


FrameSuite = Callable[[ExtractedFrame, Tally], None]

FRAME_SUITES: dict[str, tuple[str, FrameSuite]] = {
    "atom_partition": ("derived atoms H_i;a_xy list every atom exactly once", _partition),
    "derived_subidentity": ("a derived atom is below 1' iff x = y and i = 0", _subidentity),
    "derived_converse": ("converses of derived atoms follow inverse cosets", _converse),
    "zero_product": ("derived atoms with mismatched middle indices compose to zero", _zero_product),
    "shifted_product": ("derived atom products follow the shifted coset composition", _shifted_product),
    "scaffold_product": ("along a scaffold every shifting coset is the identity coset", _scaffold_product),
    "shifting_coset": ("all qualifying shifts give the same coset", _shifting_coset),
}


def run_frame_suites(
    ef: ExtractedFrame,
    names: Iterable[str] | None = None,
    *,
    workers: int | None = None,
) -> LemmaReport:
    selected = list(FRAME_SUITES) if names is None else list(names)
    unknown = [n for n in selected if n not in FRAME_SUITES]
    if unknown:
        raise KeyError(f"unknown suites: {', '.join(unknown)}")

    def run(name: str):
        description, fn = FRAME_SUITES[name]
        tally = Tally(name, description)
        fn(ef, tally)
        logger.info("suite %s: %d checked, %d counterexamples", name, tally.checked, tally.bad)
        return tally.result()

    results = parallel_map(run, selected, workers)
    return LemmaReport(structure_id=ef.measured.structure.structure_id, results=results)
