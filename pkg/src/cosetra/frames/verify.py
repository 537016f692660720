"""Semi-frame and frame conditions for group triples."""

from __future__ import annotations

import logging
from typing import Callable, Iterable

from ..core.errors import CosetraError
from ..groups.quotient import (
    QuotientIso,
    compose,
    identity_iso,
    image_subgroup,
    induce_on_coarser,
    inner_automorphism,
    inverse,
    same_map,
)
from ..groups.subgroups import product_subgroup
from .models import ConditionVerdict, FrameRecord, GroupTriple, SemiFrameReport, Triple

logger = logging.getLogger(__name__)

__all__ = ["verify_semi_frame", "frame_record", "coarsened_maps"]


def _verdict(
    name: str,
    items: Iterable,
    test: Callable[..., bool],
    describe: Callable[..., str],
) -> ConditionVerdict:
    checked = 0
    for item in items:
        checked += 1
        try:
            ok = test(item)
            reason = ""
        except (CosetraError, KeyError) as exc:
            ok = False
            reason = f": {exc}"
        if not ok:
            return ConditionVerdict(name=name, passed=False, checked=checked, witness=describe(item) + reason)
    return ConditionVerdict(name=name, passed=True, checked=checked)


def coarsened_maps(F: GroupTriple, t: Triple) -> tuple[QuotientIso, QuotientIso, QuotientIso, QuotientIso]:
    """phi-hat_xy, phi-hat_yz, phi-hat_xz and tau for the triple (x, y, z).

    phi-hat_xy and phi-hat_xz live on G_x/(H_xy;H_xz), phi-hat_yz on
    G_y/(K_xy;H_yz); tau is the inner automorphism of G_x/(H_xy;H_xz)
    determined by C_xyz.
    """
    x, y, z = t
    outer = product_subgroup(F.H_sub(x, y), F.H_sub(x, z))
    middle = product_subgroup(F.K_sub(x, y), F.H_sub(y, z))
    hat_xy = induce_on_coarser(F.phi[(x, y)], outer)
    hat_yz = induce_on_coarser(F.phi[(y, z)], middle)
    hat_xz = induce_on_coarser(F.phi[(x, z)], outer)
    system = hat_xy.source
    tau = inner_automorphism(system, system.index_of_set(F.C[t]))
    return hat_xy, hat_yz, hat_xz, tau


def verify_semi_frame(F: GroupTriple) -> SemiFrameReport:
    """Check completeness and the four semi-frame conditions; first witness per condition."""
    pairs = F.pairs()
    triples = F.triples()

    def complete(_: None) -> bool:
        missing = [p for p in pairs if p not in F.phi] + [t for t in triples if t not in F.C]
        if missing:
            raise KeyError(f"missing data for {missing[0]}")
        return all(
            F.phi[p].source.parent == F.groups[p[0]] and F.phi[p].target.parent == F.groups[p[1]]
            for p in pairs
        )

    structure = _verdict("structure", [None], complete, lambda _: "triple")
    if not structure.passed:
        return SemiFrameReport(conditions=[structure])

    def identity(x: int) -> bool:
        phi = F.phi[(x, x)]
        return phi.source.subgroup.order == 1 and same_map(phi, identity_iso(phi.source))

    def paired(p: tuple[int, int]) -> bool:
        x, y = p
        return (
            F.H_sub(y, x).members == F.K_sub(x, y).members
            and F.K_sub(y, x).members == F.H_sub(x, y).members
            and same_map(F.phi[(y, x)], inverse(F.phi[(x, y)]))
        )

    def image(t: Triple) -> bool:
        x, y, z = t
        outer = product_subgroup(F.H_sub(x, y), F.H_sub(x, z))
        middle = product_subgroup(F.K_sub(x, y), F.H_sub(y, z))
        return image_subgroup(F.phi[(x, y)], outer).members == middle.members

    def shifted(t: Triple) -> bool:
        hat_xy, hat_yz, hat_xz, tau = coarsened_maps(F, t)
        return same_map(compose(hat_xy, hat_yz), compose(tau, hat_xz))

    conditions = [
        structure,
        _verdict("identity", F.indices, identity, lambda x: f"phi_{F.label(x)}{F.label(x)}"),
        _verdict("inverse", pairs, paired, lambda p: f"phi_{F.label(p[1])}{F.label(p[0])}"),
        _verdict("image", triples, image, lambda t: "(" + ",".join(F.label(i) for i in t) + ")"),
        _verdict("composition", triples, shifted, lambda t: "(" + ",".join(F.label(i) for i in t) + ")"),
    ]
    report = SemiFrameReport(conditions=conditions)
    logger.info(
        "semi-frame check over %d indices: %s",
        len(F.indices),
        "pass" if report.passed else ",".join(c.name for c in report.failures),
    )
    return report


def frame_record(F: GroupTriple, report: SemiFrameReport | None = None) -> FrameRecord:
    """A semi-frame is a frame when every C_xyz is the identity coset and no shift is needed."""
    report = report or verify_semi_frame(F)
    frame = report.passed
    if frame:
        for t in F.triples():
            x, y, z = t
            if F.C[t] != F.identity_coset(x, y, z):
                frame = False
                break
            hat_xy, hat_yz, hat_xz, _ = coarsened_maps(F, t)
            if not same_map(compose(hat_xy, hat_yz), hat_xz):
                frame = False
                break
    return FrameRecord(triple=F, frame=frame, report=report)
