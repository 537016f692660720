"""Round trip through the coset algebra and the scaffold-based representability decision."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence, TypeVar

from pydantic import BaseModel, Field

from ..builder.algebra import CosetAlgebra, build_coset_algebra, build_group_algebra
from ..builder.relations import Relation
from ..core.errors import CosetraError, InternalConsistencyError, PreconditionError, StageError
from ..frames.extract import abelian_quotients, extract_semi_frame
from ..frames.models import ExtractedFrame, FrameRecord, GroupTriple, ScaffoldSearch, SemiScaffold
from ..frames.scaffold import build_semi_scaffold, find_scaffold
from ..frames.verify import frame_record
from ..kernel.axioms import DEFAULT_SAMPLE, DEFAULT_SEED, DEFAULT_THRESHOLD, verify_ra_axioms
from ..kernel.structure import AtomStructure
from ..measure.records import MeasuredAlgebra, is_measurable_algebra, measure_algebra
from .bijection import (
    AtomBijection,
    IsomorphismVerdict,
    PeirceanVerdict,
    build_bijection,
    verify_isomorphism,
    verify_peircean,
)

logger = logging.getLogger(__name__)

__all__ = [
    "CheckOptions",
    "StageSummary",
    "FrameSummary",
    "RoundtripReport",
    "RepresentabilityVerdict",
    "frame_summary",
    "roundtrip",
    "decide_representable",
]

T = TypeVar("T")

VerdictKind = Literal["group_representable", "coset_only", "not_measurable"]


@dataclass(frozen=True)
class CheckOptions:
    threshold: int = DEFAULT_THRESHOLD
    seed: int = DEFAULT_SEED
    sample_pairs: int = DEFAULT_SAMPLE
    exhaustive: bool | None = None
    workers: int | None = None


class StageSummary(BaseModel):
    stage: str
    detail: str


class FrameSummary(BaseModel):
    """Group orders, subgroup indices and shifting-coset representatives of a triple."""

    groups: dict[str, str] = Field(default_factory=dict)
    kappa: dict[str, int] = Field(default_factory=dict)
    shifts: dict[str, str] = Field(default_factory=dict)
    frame: bool = False
    abelian_quotients: bool = False


def frame_summary(record: FrameRecord) -> FrameSummary:
    F = record.triple
    groups = {F.label(x): f"{F.groups[x]} (order {F.groups[x].order})" for x in F.indices}
    kappa = {f"{F.label(x)},{F.label(y)}": F.kappa(x, y) for x, y in F.pairs() if x != y}
    shifts = {}
    for t in F.triples():
        if len(set(t)) == 3:
            g = F.groups[t[0]]
            shifts[",".join(F.label(i) for i in t)] = g.label(min(F.C[t]))
    return FrameSummary(
        groups=groups,
        kappa=kappa,
        shifts=shifts,
        frame=record.frame,
        abelian_quotients=abelian_quotients(F),
    )


def _stage(name: str, fn: Callable[[], T]) -> T:
    try:
        return fn()
    except CosetraError as exc:
        raise StageError(name, exc) from exc


@dataclass(frozen=True)
class RoundtripReport:
    """A -> semi-scaffold -> triple F -> C[F] -> theta, with the verdicts on theta."""

    structure: AtomStructure
    extracted: ExtractedFrame
    algebra: CosetAlgebra
    bijection: AtomBijection
    peircean: PeirceanVerdict
    isomorphism: IsomorphismVerdict
    frame: FrameSummary
    stages: tuple[StageSummary, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return self.peircean.passed and self.isomorphism.passed

    @property
    def triple(self) -> GroupTriple:
        return self.extracted.triple


def _require_ra(A: AtomStructure, options: CheckOptions) -> None:
    report = verify_ra_axioms(A, threshold=options.threshold, seed=options.seed, workers=options.workers)
    if not report.passed:
        first = report.failures[0]
        raise PreconditionError(f"not a relation algebra: {first.law} fails ({first.detail})")


def _measured(A: AtomStructure) -> MeasuredAlgebra:
    m = measure_algebra(A)
    if not m.measurable:
        raise PreconditionError("some identity atom is not measurable")
    return m


def _check(theta: AtomBijection, options: CheckOptions) -> tuple[PeirceanVerdict, IsomorphismVerdict]:
    peircean = verify_peircean(theta, workers=options.workers)
    if not peircean.passed:
        skipped = IsomorphismVerdict(passed=False, exhaustive=False, detail="skipped: Peircean check failed")
        return peircean, skipped
    isomorphism = verify_isomorphism(
        theta,
        threshold=options.threshold,
        seed=options.seed,
        sample_pairs=options.sample_pairs,
        exhaustive=options.exhaustive,
    )
    return peircean, isomorphism


def roundtrip(
    A: AtomStructure,
    *,
    order: Sequence[int] | None = None,
    options: CheckOptions | None = None,
) -> RoundtripReport:
    """Extract a semi-frame from A, rebuild C[F] and check that theta is an isomorphism.

    Stage failures are raised as :class:`StageError` carrying the stage name.
    """
    options = options or CheckOptions()
    stages: list[StageSummary] = []
    _stage("axioms", lambda: _require_ra(A, options))
    stages.append(StageSummary(stage="axioms", detail=f"atom-level laws hold on {A.atom_count} atoms"))
    m = _stage("measure", lambda: _measured(A))
    stages.append(StageSummary(stage="measure", detail=f"{len(m.indices)} measurable atoms, {len(m.E.classes)} E-classes"))
    scaffold = _stage("scaffold", lambda: build_semi_scaffold(m, order))
    stages.append(
        StageSummary(stage="scaffold", detail=f"semi-scaffold over order {list(scaffold.order)}, scaffold: {scaffold.is_scaffold}")
    )
    ef = _stage("extract", lambda: extract_semi_frame(m, scaffold))
    record = frame_record(ef.triple)
    stages.append(StageSummary(stage="extract", detail=f"{len(ef.atoms)} derived atoms, frame: {record.frame}"))
    algebra = _stage("build", lambda: build_coset_algebra(ef.triple))
    stages.append(StageSummary(stage="build", detail=f"C[F] with {algebra.structure.atom_count} atoms"))
    theta = _stage("bijection", lambda: build_bijection(ef, algebra))
    peircean, isomorphism = _check(theta, options)
    report = RoundtripReport(
        structure=A,
        extracted=ef,
        algebra=algebra,
        bijection=theta,
        peircean=peircean,
        isomorphism=isomorphism,
        frame=frame_summary(record),
        stages=tuple(stages),
    )
    logger.info("roundtrip of %s: %s", A.label or A.structure_id, "isomorphic" if report.passed else "failed")
    return report


@dataclass(frozen=True)
class RepresentabilityVerdict:
    """group_representable carries G[F] and one relation per atom of A; coset_only carries C[F]."""

    kind: VerdictKind
    search: ScaffoldSearch | None = None
    algebra: CosetAlgebra | None = None
    bijection: AtomBijection | None = None
    isomorphism: IsomorphismVerdict | None = None
    frame: FrameSummary | None = None
    detail: str = ""

    @property
    def scaffold(self) -> SemiScaffold | None:
        return self.search.scaffold if self.search else None

    def witnesses(self) -> dict[str, Relation]:
        """Atom name of A to its representing relation."""
        if self.bijection is None or self.algebra is None:
            return {}
        names = self.bijection.source.atom_names
        return {names[a]: self.algebra.relations[t] for a, t in enumerate(self.bijection.theta)}


def decide_representable(
    A: AtomStructure,
    *,
    order: Sequence[int] | None = None,
    options: CheckOptions | None = None,
) -> RepresentabilityVerdict:
    """Scaffold criterion for finite measurable algebras.

    A finite representable algebra is completely representable and then has
    a scaffold, so an exhausted search means A is representable only by its
    coset algebra.
    """
    options = options or CheckOptions()
    _require_ra(A, options)
    if not is_measurable_algebra(A):
        logger.info("%s is not measurable", A.label or A.structure_id)
        return RepresentabilityVerdict(kind="not_measurable", detail="some identity atom is not measurable")
    m = measure_algebra(A)
    search = find_scaffold(m, order)
    if search.scaffold is None:
        report = roundtrip(A, order=order, options=options)
        return RepresentabilityVerdict(
            kind="coset_only",
            search=search,
            algebra=report.algebra,
            bijection=report.bijection,
            isomorphism=report.isomorphism,
            frame=report.frame,
            detail=f"no scaffold: {search.nodes} nodes explored of {search.space} atom choices",
        )
    ef = extract_semi_frame(m, search.scaffold)
    record = frame_record(ef.triple)
    if not record.frame:
        raise InternalConsistencyError("the triple extracted along a scaffold is not a frame")
    algebra = build_group_algebra(record)
    theta = build_bijection(ef, algebra)
    peircean, isomorphism = _check(theta, options)
    if not (peircean.passed and isomorphism.passed):
        raise InternalConsistencyError(
            f"group relation algebra witness does not validate: {peircean.detail or isomorphism.detail}"
        )
    return RepresentabilityVerdict(
        kind="group_representable",
        search=search,
        algebra=algebra,
        bijection=theta,
        isomorphism=isomorphism,
        frame=frame_summary(record),
        detail=f"scaffold found after {search.nodes} nodes",
    )
