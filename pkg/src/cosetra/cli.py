"""``cosetra`` command line: check, measure, extract, build, roundtrip, represent, scaffold, gen, lemmas.

Exit status 0 means every check passed, 1 a failed verdict (including an
absent scaffold or a relation-algebra property that fails mid-pipeline), and
2 an input or usage error. Feeding a non-relation-algebra to a command that
requires one is an input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from pydantic import ValidationError

from . import __version__
from .builder.algebra import build_coset_algebra, build_group_algebra, compare_otimes_composition
from .builder.generate import GROUP_FAMILIES, catalog_frame, generate_catalog
from .config import RunConfig, load_config
from .core.errors import CosetraError, DomainError, InternalConsistencyError, PreconditionError, StageError
from .frames.extract import extract_semi_frame
from .frames.lemmas import run_frame_suites
from .frames.scaffold import build_semi_scaffold, find_scaffold
from .frames.verify import frame_record
from .kernel.axioms import verify_ra_axioms
from .kernel.structure import AtomStructure
from .measure.census import census
from .measure.lemmas import run_lemma_suites
from .measure.records import measure_algebra
from .parsing.gtr_format import load_gtr, write_gtr
from .parsing.ra_format import load_ra, write_ra
from .parsing.rel_format import write_rel
from .represent.pipeline import decide_representable, frame_summary, roundtrip
from .reports import (
    axioms_block,
    build_block,
    catalog_block,
    census_block,
    extracted_block,
    frame_block,
    header,
    join_blocks,
    lemmas_block,
    roundtrip_block,
    scaffold_block,
    semi_frame_block,
    semi_scaffold_block,
    verdict_block,
)
from .utils.log_context import configure_logging, derive_run_id, set_run_id

logger = logging.getLogger(__name__)

__all__ = ["main", "build_parser"]

FILE_COMMANDS = {
    "check": "axiom report for a .ra file",
    "measure": "measurability census",
    "extract": "semi-frame extraction (writes .gtr with --out)",
    "build": "coset or group relation algebra from a .gtr file (writes .ra and .rel with --out)",
    "roundtrip": "extract, rebuild and check the isomorphism",
    "represent": "representability verdict via scaffolds",
    "scaffold": "exhaustive scaffold search",
    "lemmas": "measurability and frame lemma suites",
}


@dataclass(frozen=True)
class Outcome:
    text: str
    status: int


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--order", help="comma-separated order on the measurable atoms (names or indices)")
    p.add_argument(
        "--threshold",
        type=int,
        help="exhaustive element checks up to this many atoms (default 12; ternary laws at most 10)",
    )
    p.add_argument("--seed", type=int, help="seed for sampled checks (default 42)")
    p.add_argument("--out", type=Path, help="directory for report and output files")
    p.add_argument("--threads", type=int, help="worker threads")
    p.add_argument("--sample-pairs", type=int, help="random element pairs in sampled checks")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", dest="exhaustive", action="store_const", const=True)
    mode.add_argument("--sample", dest="exhaustive", action="store_const", const=False)
    p.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cosetra", description="Finite relation algebras, coset semi-frames and representations.")
    parser.add_argument("--version", action="version", version=f"cosetra {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, help_text in FILE_COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("input", type=Path)
        _common(sub)
    gen = subparsers.add_parser("gen", help="enumerate semi-frame triples and write a catalog")
    gen.add_argument("--indices", type=int)
    gen.add_argument("--min-order", type=int)
    gen.add_argument("--max-order", type=int)
    gen.add_argument("--groups", help=f"comma-separated families: {','.join(GROUP_FAMILIES)}")
    gen.add_argument("--shifted", action="store_const", const=True, help="enumerate every shifting coset")
    gen.add_argument("--no-axioms", dest="check_axioms", action="store_const", const=False)
    gen.add_argument("--max-triples", type=int)
    _common(gen)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    given = {
        "command": args.command,
        "inputs": [args.input] if getattr(args, "input", None) else [],
        "threshold": args.threshold,
        "seed": args.seed,
        "out": args.out,
        "threads": args.threads,
        "sample_pairs": args.sample_pairs,
        "exhaustive": args.exhaustive,
    }
    if args.command == "gen":
        given.update(
            indices=args.indices,
            min_order=args.min_order,
            max_order=args.max_order,
            groups=args.groups.split(",") if args.groups else None,
            shifted=args.shifted,
            check_axioms=args.check_axioms,
            max_triples=args.max_triples,
        )
    return load_config(given)


def _order(spec: str | None, A: AtomStructure) -> list[int] | None:
    if not spec:
        return None
    out = []
    for token in spec.split(","):
        token = token.strip()
        if token.isdigit():
            out.append(int(token))
            continue
        try:
            out.append(A.index_of(token))
        except KeyError:
            raise DomainError(f"--order names unknown atom {token!r}") from None
    return out


# -----------------------------------------------------------------------------
# Commands
# -----------------------------------------------------------------------------
def _check(cfg: RunConfig, A: AtomStructure, order: list[int] | None) -> Outcome:
    report = verify_ra_axioms(
        A,
        "element_level",
        threshold=cfg.threshold,
        seed=cfg.seed,
        sample_pairs=cfg.sample_pairs,
        exhaustive=cfg.exhaustive,
        workers=cfg.threads,
    )
    return Outcome(axioms_block(report), 0 if report.passed else 1)


def _measure(cfg: RunConfig, A: AtomStructure, order: list[int] | None) -> Outcome:
    m = measure_algebra(A)
    return Outcome(census_block(m, census(m)), 0 if m.measurable else 1)


def _extract(cfg: RunConfig, A: AtomStructure, order: list[int] | None) -> Outcome:
    m = measure_algebra(A)
    s = build_semi_scaffold(m, order)
    ef = extract_semi_frame(m, s)
    record = frame_record(ef.triple)
    blocks = [
        semi_scaffold_block(m, s),
        extracted_block(ef),
        semi_frame_block(record.report),
        frame_block(frame_summary(record)),
    ]
    if cfg.out is not None:
        paths = write_gtr(ef.triple, cfg.out / f"{cfg.inputs[0].stem}.gtr")
        blocks.append("[files]\n" + "".join(f"written: {p.name}\n" for p in paths))
    return Outcome(join_blocks(*blocks), 0)


def _build(cfg: RunConfig, path: Path) -> Outcome:
    F = load_gtr(path)
    record = frame_record(F)
    algebra = build_coset_algebra(F)
    axioms = verify_ra_axioms(algebra.structure, threshold=cfg.threshold, seed=cfg.seed, workers=cfg.threads)
    discrepancies = compare_otimes_composition(algebra)
    blocks = [semi_frame_block(record.report), build_block(algebra, axioms, discrepancies)]
    if record.frame:
        group = build_group_algebra(record)
        blocks.append(build_block(group, None, None))
    if cfg.out is not None:
        stem = path.stem
        write_ra(algebra.structure, cfg.out / f"{stem}.ra")
        write_rel(dict(zip(algebra.index, algebra.relations)), cfg.out / f"{stem}.rel")
        blocks.append(f"[files]\nwritten: {stem}.ra\nwritten: {stem}.rel\n")
    return Outcome(join_blocks(*blocks), 0 if axioms.passed else 1)


def _roundtrip(cfg: RunConfig, A: AtomStructure, order: list[int] | None) -> Outcome:
    report = roundtrip(A, order=order, options=cfg.check_options())
    return Outcome(roundtrip_block(report), 0 if report.passed else 1)


def _represent(cfg: RunConfig, A: AtomStructure, order: list[int] | None) -> Outcome:
    verdict = decide_representable(A, order=order, options=cfg.check_options())
    witness_file = None
    if cfg.out is not None and verdict.algebra is not None and verdict.bijection is not None:
        names = verdict.bijection.source.atom_names
        notes = {verdict.algebra.index[t]: names[a] for a, t in enumerate(verdict.bijection.theta)}
        witness_file = f"{cfg.inputs[0].stem}.{verdict.kind}.rel"
        write_rel(dict(zip(verdict.algebra.index, verdict.algebra.relations)), cfg.out / witness_file, notes)
    return Outcome(verdict_block(verdict, witness_file), 0 if verdict.kind == "group_representable" else 1)


def _scaffold(cfg: RunConfig, A: AtomStructure, order: list[int] | None) -> Outcome:
    m = measure_algebra(A)
    search = find_scaffold(m, order)
    return Outcome(scaffold_block(m, search), 0 if search.found else 1)


def _lemmas(cfg: RunConfig, A: AtomStructure, order: list[int] | None) -> Outcome:
    m = measure_algebra(A)
    if not m.measurable:
        raise PreconditionError("lemma suites need a measurable algebra")
    measured = run_lemma_suites(m, workers=cfg.threads)
    ef = extract_semi_frame(m, build_semi_scaffold(m, order))
    framed = run_frame_suites(ef, workers=cfg.threads)
    text = join_blocks(lemmas_block("measurability lemmas", measured), lemmas_block("frame lemmas", framed))
    return Outcome(text, 0 if measured.passed and framed.passed else 1)


def _gen(cfg: RunConfig) -> Outcome:
    results = generate_catalog(cfg.bounds(), threshold=cfg.threshold, seed=cfg.seed, workers=cfg.threads)
    frame = catalog_frame(results)
    path = None
    if cfg.out is not None:
        frame.to_csv(cfg.out / "catalog.csv", index=False)
        path = "catalog.csv"
    return Outcome(catalog_block(results, frame, path), 0)


STRUCTURE_COMMANDS: dict[str, Callable[[RunConfig, AtomStructure, list[int] | None], Outcome]] = {
    "check": _check,
    "measure": _measure,
    "extract": _extract,
    "roundtrip": _roundtrip,
    "represent": _represent,
    "scaffold": _scaffold,
    "lemmas": _lemmas,
}


def _run(cfg: RunConfig, order_spec: str | None) -> Outcome:
    if cfg.command == "gen":
        return _gen(cfg)
    if cfg.command == "build":
        return _build(cfg, cfg.inputs[0])
    A = load_ra(cfg.inputs[0])
    logger.info("loaded %s: %d atoms", cfg.inputs[0], A.atom_count)
    return STRUCTURE_COMMANDS[cfg.command](cfg, A, _order(order_spec, A))


def _fail(message: str, status: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = configure_logging(args.verbose)
    try:
        try:
            cfg = _config(args)
        except ValidationError as exc:
            return _fail(exc.errors()[0]["msg"].removeprefix("Value error, "), 2)
        if cfg.out is not None:
            cfg.out.mkdir(parents=True, exist_ok=True)
        try:
            head = header(cfg.command, cfg.inputs, version=__version__, seed=cfg.seed, threshold=cfg.threshold)
        except OSError as exc:
            return _fail(f"cannot read input: {exc.strerror or exc}", 2)
        set_run_id(derive_run_id(cfg.command, cfg.seed, head))
        try:
            outcome = _run(cfg, args.order)
        except StageError as exc:
            status = 1 if isinstance(exc.cause, InternalConsistencyError) else 2
            return _fail(str(exc), status)
        except InternalConsistencyError as exc:
            return _fail(f"not a relation algebra: {exc}", 1)
        except CosetraError as exc:
            return _fail(str(exc), 2)
        text = join_blocks(head, outcome.text)
        sys.stdout.write(text)
        if cfg.out is not None:
            stem = cfg.inputs[0].stem if cfg.inputs else "gen"
            (cfg.out / f"{stem}.{cfg.command}.txt").write_text(text, encoding="utf-8")
        return outcome.status
    finally:
        logging.getLogger("cosetra").removeHandler(handler)
        set_run_id(None)
