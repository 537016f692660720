"""Line-oriented text reports for the CLI commands.

Every report starts with the packaged header (version, command, input digest,
seed and threshold) followed by ``key: value`` blocks, so identical inputs
give byte-identical reports.
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Iterable, Sequence

import pandas as pd

from .builder.algebra import CosetAlgebra, Discrepancy
from .builder.generate import GeneratedTriple
from .core.utils import load_pkg_text, render_template
from .frames.models import ExtractedFrame, ScaffoldSearch, SemiFrameReport, SemiScaffold
from .kernel.axioms import AxiomReport
from .measure.census import PairCensus
from .measure.lemmas import LemmaReport
from .measure.records import MeasuredAlgebra
from .represent.pipeline import FrameSummary, RepresentabilityVerdict, RoundtripReport

__all__ = [
    "input_digest",
    "header",
    "axioms_block",
    "census_block",
    "scaffold_block",
    "semi_scaffold_block",
    "frame_block",
    "extracted_block",
    "semi_frame_block",
    "build_block",
    "roundtrip_block",
    "verdict_block",
    "lemmas_block",
    "catalog_block",
    "join_blocks",
]


def input_digest(paths: Sequence[Path]) -> str:
    if not paths:
        return "-"
    h = hashlib.sha256()
    for p in paths:
        h.update(Path(p).read_bytes())
    return h.hexdigest()


def header(command: str, inputs: Sequence[Path], *, version: str, seed: int, threshold: int) -> str:
    return render_template(
        load_pkg_text("templates/report_header.txt"),
        version=version,
        command=command,
        input=" ".join(Path(p).name for p in inputs) or "-",
        digest=input_digest(inputs),
        seed=seed,
        threshold=threshold,
    )


def _block(title: str, rows: Iterable[tuple[str, object]]) -> str:
    lines = [f"[{title}]"] + [f"{k}: {v}" for k, v in rows]
    return "\n".join(lines) + "\n"


def join_blocks(*blocks: str) -> str:
    return "\n".join(b for b in blocks if b)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def axioms_block(report: AxiomReport) -> str:
    rows: list[tuple[str, object]] = [("structure", report.structure_id), ("mode", report.mode)]
    for v in report.verdicts:
        status = "pass" if v.passed else f"FAIL {v.detail}"
        scope = "exhaustive" if v.exhaustive else f"sampled seed={report.seed}"
        rows.append((f"{v.level}.{v.law}", f"{status} ({scope}, {v.checked} checked)"))
    rows.append(("verdict", "relation algebra" if report.passed else "not a relation algebra"))
    return _block("axioms", rows)


def census_block(m: MeasuredAlgebra, rows: Sequence[PairCensus]) -> str:
    out: list[tuple[str, object]] = [("measurable", _yes(m.measurable))]
    for x in m.indices:
        out.append((f"atom {m.name(x)}", f"measure {m.record(x).measure}, group {m.group(x)}"))
    for i, c in enumerate(m.E.classes):
        out.append((f"eclass {i}", " ".join(m.name(x) for x in c)))
    for r in rows:
        key = f"pair {m.name(r.x)},{m.name(r.y)}"
        if r.elements is None:
            out.append((key, f"atoms {r.atoms}, census skipped"))
        else:
            out.append((key, f"atoms {r.atoms}, elements {r.elements}, regular {r.regular}, normal {r.regular_normal}"))
    return _block("measure", out)


def semi_scaffold_block(m: MeasuredAlgebra, s: SemiScaffold, title: str = "semi-scaffold") -> str:
    rows: list[tuple[str, object]] = [("order", " ".join(m.name(x) for x in s.order))]
    for (x, y), a in sorted(s.entries.items()):
        if x != y and s.before(x, y):
            rows.append((f"a {m.name(x)},{m.name(y)}", m.name(a)))
    rows.append(("scaffold", _yes(s.is_scaffold)))
    return _block(title, rows)


def scaffold_block(m: MeasuredAlgebra, search: ScaffoldSearch) -> str:
    rows: list[tuple[str, object]] = [
        ("found", _yes(search.found)),
        ("nodes", search.nodes),
        ("space", search.space),
    ]
    body = _block("scaffold search", rows)
    if search.scaffold is not None:
        body += "\n" + semi_scaffold_block(m, search.scaffold, "scaffold")
    return body


def semi_frame_block(report: SemiFrameReport) -> str:
    rows = [
        (c.name, "pass" if c.passed else f"FAIL at {c.witness}") for c in report.conditions
    ]
    rows.append(("semi-frame", _yes(report.passed)))
    return _block("semi-frame conditions", rows)


def frame_block(summary: FrameSummary) -> str:
    rows: list[tuple[str, object]] = [(f"group {k}", v) for k, v in summary.groups.items()]
    rows += [(f"kappa {k}", v) for k, v in summary.kappa.items()]
    rows += [(f"C {k}", v) for k, v in summary.shifts.items()]
    rows += [("frame", _yes(summary.frame)), ("abelian_quotients", _yes(summary.abelian_quotients))]
    return _block("frame", rows)


def extracted_block(ef: ExtractedFrame) -> str:
    m = ef.measured
    rows = [
        (f"zeta {','.join(m.name(i) for i in t)}", z) for t, z in sorted(ef.zeta.items()) if len(set(t)) == 3
    ]
    rows.append(("derived atoms", len(ef.atoms)))
    return _block("extraction", rows)


def build_block(algebra: CosetAlgebra, axioms: AxiomReport | None, discrepancies: Sequence[Discrepancy] | None) -> str:
    s = algebra.structure
    rows: list[tuple[str, object]] = [("label", s.label), ("atoms", s.atom_count)]
    if axioms is not None:
        rows.append(("relation algebra", _yes(axioms.passed)))
        if not axioms.passed:
            first = axioms.failures[0]
            rows.append(("first failure", f"{first.law}: {first.detail}"))
    if discrepancies is not None:
        rows.append(("otimes discrepancies", len(discrepancies)))
        rows += [(f"discrepancy {i}", d.describe(algebra)) for i, d in enumerate(discrepancies[:10])]
    return _block("build", rows)


def roundtrip_block(report: RoundtripReport) -> str:
    rows: list[tuple[str, object]] = [(f"stage {s.stage}", s.detail) for s in report.stages]
    rows += [(f"theta {a}", b) for a, b in report.bijection.pairs()]
    p, iso = report.peircean, report.isomorphism
    rows.append(("peircean", "pass" if p.passed else f"FAIL {p.detail}"))
    scope = "exhaustive" if iso.exhaustive else "sampled"
    rows.append(("isomorphism", f"{'pass' if iso.passed else 'FAIL ' + iso.detail} ({scope}, {iso.checked} checked)"))
    rows.append(("verdict", "isomorphic" if report.passed else "not isomorphic"))
    return join_blocks(_block("roundtrip", rows), frame_block(report.frame))


def verdict_block(verdict: RepresentabilityVerdict, witness_file: str | None = None) -> str:
    rows: list[tuple[str, object]] = [("verdict", verdict.kind), ("detail", verdict.detail)]
    if verdict.search is not None:
        rows += [("scaffold nodes", verdict.search.nodes), ("scaffold space", verdict.search.space)]
    if verdict.bijection is not None:
        rows += [(f"theta {a}", b) for a, b in verdict.bijection.pairs()]
    if verdict.isomorphism is not None:
        iso = verdict.isomorphism
        rows.append(("isomorphism", f"{'pass' if iso.passed else 'FAIL'} ({'exhaustive' if iso.exhaustive else 'sampled'})"))
    if witness_file:
        rows.append(("witnesses", witness_file))
    blocks = [_block("representability", rows)]
    if verdict.frame is not None:
        blocks.append(frame_block(verdict.frame))
    return join_blocks(*blocks)


def lemmas_block(title: str, report: LemmaReport) -> str:
    rows = []
    for r in report.results:
        status = "pass" if r.passed else f"FAIL {r.counterexamples} ({r.witness})"
        rows.append((r.name, f"{status}, {r.checked} checked"))
    return _block(title, rows)


def catalog_block(results: Sequence[GeneratedTriple], frame: pd.DataFrame, path: str | None) -> str:
    rows: list[tuple[str, object]] = [
        ("semi-frames", len(results)),
        ("relation algebras", sum(1 for r in results if r.ra)),
        ("frames", int(frame["frame"].sum()) if len(frame) else 0),
        ("scaffold found", sum(1 for r in results if r.scaffold == "found")),
        ("scaffold absent", sum(1 for r in results if (r.scaffold or "").startswith("absent"))),
    ]
    if path:
        rows.append(("catalog", path))
    return _block("generation", rows)
