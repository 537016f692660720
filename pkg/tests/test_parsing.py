from __future__ import annotations

import logging

import pytest

from cosetra.builder import CosetAtomIndex, atomic_relation
from cosetra.groups import cyclic, direct_product
from cosetra.kernel import complex_algebra, full_relation_algebra
from cosetra.parsing import (
    FormatError,
    dump_grp,
    dump_gtr,
    dump_ra,
    dump_rel,
    load_gtr,
    load_rel,
    parse_grp,
    parse_gtr,
    parse_ra,
    parse_rel,
    write_gtr,
    write_rel,
)


def _tables(A):
    return (A.atom_names, A.converse_map, A.identity_atoms, A.composition)


def _line_of(text: str, parse) -> int | None:
    with pytest.raises(FormatError) as info:
        parse(text)
    return info.value.line


# ---------------------------------------------------------------------------
# .ra
# ---------------------------------------------------------------------------


def test_ra_dump_parses_back_to_the_same_structure() -> None:
    for A in (full_relation_algebra(3), complex_algebra(cyclic(4))):
        B = parse_ra(dump_ra(A))
        assert _tables(B) == _tables(A)
        assert B.label == A.label


def test_ra_dump_is_literal_and_sorted() -> None:
    text = dump_ra(full_relation_algebra(2))
    assert "cycles literal" in text.splitlines()
    cycles = [line for line in text.splitlines() if line.startswith("cycle ")]
    assert cycles == sorted(cycles, key=lambda s: tuple(int(t) for t in s.split()[1:]))


def test_ra_label_may_precede_atoms_and_comments_are_ignored() -> None:
    text = "label two points  # a comment\natoms 1\n\nconverse 0\nidentity 0\ncycle 0 0 0\n"
    A = parse_ra(text)
    assert A.label == "two points"
    assert A.atom_count == 1
    assert A.atom_names == ("a0",)


def test_ra_closed_cycles_are_completed() -> None:
    text = "atoms 4\nconverse 0 1 3 2\nidentity 0 1\ncycle 2 3 0\n"
    A = parse_ra(text)
    assert {(2, 3, 0), (3, 0, 3), (0, 2, 2)} <= set(A.cycles)

    literal = parse_ra(text.replace("identity 0 1\n", "identity 0 1\ncycles literal\n"))
    assert (3, 0, 3) not in set(literal.cycles)


def test_ra_literal_table_that_is_not_closed_is_logged(caplog) -> None:
    text = "atoms 4\nconverse 0 1 3 2\nidentity 0 1\ncycles literal\ncycle 2 3 0\n"
    with caplog.at_level(logging.WARNING, logger="cosetra.parsing.ra_format"):
        parse_ra(text, "broken.ra")
    assert "broken.ra: literal cycle table is not closed" in caplog.text

    caplog.clear()
    with caplog.at_level(logging.WARNING, logger="cosetra.parsing.ra_format"):
        parse_ra(dump_ra(full_relation_algebra(2)))
    assert caplog.text == ""


@pytest.mark.parametrize(
    ("text", "line", "fragment"),
    [
        ("atoms 2\nconverse 0 1\nconverse 0 1\n", 3, "first on line 2"),
        ("converse 0 1\natoms 2\n", 1, "first directive"),
        ("atoms 0\n", 1, "must be positive"),
        ("atoms 2\nidentity 0 1\nconverse 0 1 1\n", 3, "converse lists 3 atoms"),
        ("atoms 2\nconverse 0 1\nidentity 0 1\ncycle 0 0 2\n", 4, "atom 2 outside"),
        ("atoms 2\nconverse 0 1\nidentity 0 1\nnames a\n", 4, "names lists 1"),
        ("atoms 2\nconverse 0 1\nidentity 0 1\ncycles open\n", 4, "'cycles' must be"),
        ("atoms 1\nfoo 1\n", 2, "unknown directive"),
        ("atoms 2\nconverse 1 1\nidentity 0\n", 2, "involution"),
        ("atoms x\n", 1, "integers"),
    ],
)
def test_ra_errors_carry_line_numbers(text: str, line: int, fragment: str) -> None:
    with pytest.raises(FormatError, match=fragment) as info:
        parse_ra(text, source="bad.ra")
    assert info.value.line == line
    assert str(info.value).startswith(f"bad.ra:{line}: ")


def test_ra_missing_lines_have_no_line_number() -> None:
    with pytest.raises(FormatError, match="missing 'identity' line") as info:
        parse_ra("atoms 1\nconverse 0\n")
    assert info.value.line is None
    with pytest.raises(FormatError, match="missing 'atoms"):
        parse_ra("# empty\n")


def test_format_error_is_a_value_error() -> None:
    with pytest.raises(ValueError):
        parse_ra("atoms -1\n")


def test_load_reports_unreadable_files(tmp_path) -> None:
    from cosetra.parsing import load_ra

    with pytest.raises(FormatError, match="cannot read file"):
        load_ra(tmp_path / "absent.ra")


# ---------------------------------------------------------------------------
# .grp
# ---------------------------------------------------------------------------


def test_grp_dump_parses_back() -> None:
    g = direct_product(cyclic(2), cyclic(2))
    back = parse_grp(dump_grp(g))
    assert back.table == g.table
    assert back.name == g.name
    assert back.labels == g.labels


def test_grp_rows_and_labels() -> None:
    g = parse_grp("order 2\nname flip\nlabels e s\n0 1\n1 0\n")
    assert g.order == 2
    assert g.name == "flip"
    assert g.label(1) == "s"


@pytest.mark.parametrize(
    ("text", "fragment"),
    [
        ("0 1\n1 0\n", "must follow 'order"),
        ("order 2\n0 1\n", "expected 2 table rows"),
        ("order 2\n0 2\n1 0\n", "entry 2 outside"),
        ("order 2\nlabels a\n0 1\n1 0\n", "1 labels"),
        ("order 2\n0 1\n0 1\n", "not a group"),
        ("order 0\n", "must be positive"),
        ("order 2\nrows 1\n", "unknown directive"),
    ],
)
def test_grp_errors(text: str, fragment: str) -> None:
    with pytest.raises(FormatError, match=fragment):
        parse_grp(text)


# ---------------------------------------------------------------------------
# .gtr
# ---------------------------------------------------------------------------


def test_gtr_defaults_fill_diagonal_reverse_and_shifts(load_fixture) -> None:
    F = load_fixture("z4_half.gtr")
    assert F.indices == (0, 1)
    assert F.label(0) == "x" and F.label(1) == "y"
    assert F.H_sub(0, 1).members == frozenset({0, 2})
    assert F.K_sub(1, 0).members == frozenset({0, 2})
    assert F.phi[(1, 0)].mapping == (0, 1)
    assert F.kappa(0, 0) == 4
    assert F.kappa(1, 1) == 2
    for t in F.triples():
        assert F.C[t] == F.identity_coset(*t)


def test_gtr_without_eclass_puts_everything_in_one_class() -> None:
    F = parse_gtr("indices 2\ngroup 0 trivial\ngroup 1 trivial\nH 0 1 0\nK 0 1 0\n")
    assert F.E.classes == ((0, 1),)


def test_gtr_separate_classes() -> None:
    F = parse_gtr("indices 2\ngroup 0 cyclic 2\ngroup 1 trivial\neclass 0\neclass 1\n")
    assert F.pairs() == [(0, 0), (1, 1)]


def test_gtr_group_constructors() -> None:
    F = parse_gtr("indices 1\ngroup 0 product cyclic 2 dihedral 3\n")
    assert F.groups[0].order == 12
    F = parse_gtr("indices 1\ngroup 0 symmetric 3\n")
    assert F.groups[0].order == 6


def test_gtr_dump_parses_back(load_fixture) -> None:
    F = load_fixture("z4_half.gtr")
    G = parse_gtr(dump_gtr(F))
    assert G.labels == F.labels
    assert G.E == F.E
    for pair in F.pairs():
        assert G.phi[pair].mapping == F.phi[pair].mapping
        assert G.H_sub(*pair).members == F.H_sub(*pair).members
    assert dict(G.C) == dict(F.C)


def test_gtr_dump_keeps_shifts() -> None:
    text = "indices 2\ngroup 0 cyclic 2\ngroup 1 cyclic 2\nH 0 1 0\nK 0 1 0\nphi 0 1 0:0 1:1\nC 0 0 1 1\n"
    F = parse_gtr(text)
    assert F.C[(0, 0, 1)] == frozenset({1})
    assert "C 0 0 1 1" in dump_gtr(F).splitlines()
    assert parse_gtr(dump_gtr(F)).C[(0, 0, 1)] == frozenset({1})


def test_gtr_dump_needs_tables_for_unnamed_groups() -> None:
    text = "indices 1\ngroup 0 product cyclic 2 cyclic 2\n"
    F = parse_gtr(text)
    with pytest.raises(ValueError, match="table reference"):
        dump_gtr(F)
    assert "group 0 table k.grp" in dump_gtr(F, {0: "k.grp"})


def test_write_gtr_writes_group_tables_alongside(tmp_path) -> None:
    F = parse_gtr("indices 2\ngroup 0 product cyclic 2 cyclic 2\ngroup 1 cyclic 3\neclass 0\neclass 1\n")
    paths = write_gtr(F, tmp_path / "klein.gtr")
    assert [p.name for p in paths] == ["klein.gtr", "klein.0.grp"]
    G = load_gtr(tmp_path / "klein.gtr")
    assert G.groups[0].table == F.groups[0].table
    assert G.groups[1].name == "Z3"


@pytest.mark.parametrize(
    ("text", "line", "fragment"),
    [
        ("group 0 trivial\n", 1, "first directive must be 'indices"),
        ("indices 0\n", 1, "at least one index"),
        ("indices 1\ngroup 1 trivial\n", 2, "index 1 outside"),
        ("indices 1\ngroup 0 cyclic\n", 2, "incomplete group"),
        ("indices 1\ngroup 0 cyclic 2 3\n", 2, "trailing tokens"),
        ("indices 1\ngroup 0 free 2\n", 2, "unknown group constructor"),
        ("indices 1\ngroup 0 trivial\nC 0 0 0\n", 3, "'C' expects"),
        ("indices 2\ngroup 0 trivial\ngroup 1 trivial\neclass 0\neclass 1\nH 0 1 0\n", 6, "not an E-pair"),
        ("indices 2\ngroup 0 cyclic 2\ngroup 1 cyclic 2\nH 0 1 0\n", 4, "no K given"),
        ("indices 2\ngroup 0 cyclic 2\ngroup 1 cyclic 2\nH 0 1 0\nK 0 1 0\nphi 0 1 0-0\n", 6, "expected g:h"),
    ],
)
def test_gtr_errors_carry_line_numbers(text: str, line: int, fragment: str) -> None:
    with pytest.raises(FormatError, match=fragment) as info:
        parse_gtr(text)
    assert info.value.line == line


def test_gtr_whole_file_errors() -> None:
    with pytest.raises(FormatError, match="no group given for index 1"):
        parse_gtr("indices 2\ngroup 0 trivial\n")
    with pytest.raises(FormatError, match="no H given"):
        parse_gtr("indices 2\ngroup 0 trivial\ngroup 1 trivial\n")
    with pytest.raises(FormatError, match="two classes"):
        parse_gtr("indices 2\ngroup 0 trivial\ngroup 1 trivial\neclass 0 1\neclass 1\n")
    with pytest.raises(FormatError, match="no class"):
        parse_gtr("indices 2\ngroup 0 trivial\ngroup 1 trivial\neclass 0\n")


def test_gtr_table_reference_is_relative_to_the_file(tmp_path) -> None:
    (tmp_path / "z2.grp").write_text("order 2\nname flip\n0 1\n1 0\n", encoding="utf-8")
    (tmp_path / "one.gtr").write_text("indices 1\ngroup 0 table z2.grp\n", encoding="utf-8")
    F = load_gtr(tmp_path / "one.gtr")
    assert F.groups[0].name == "flip"


# ---------------------------------------------------------------------------
# .rel
# ---------------------------------------------------------------------------


def test_rel_dump_and_load(tmp_path, load_fixture) -> None:
    F = load_fixture("z4_half.gtr")
    idx = CosetAtomIndex(0, 1, 1)
    relations = {idx: atomic_relation(F, idx), CosetAtomIndex(0, 0, 0): atomic_relation(F, CosetAtomIndex(0, 0, 0))}
    text = dump_rel(relations, notes={idx: "R0_1_1"})
    lines = text.splitlines()
    assert lines[0] == "rel 0 0 0:"
    assert "rel 0 1 1:  # R0_1_1" in lines

    path = write_rel(relations, tmp_path / "w.rel")
    back = load_rel(path)
    assert back == relations


def test_rel_pairs_are_sorted_within_a_block() -> None:
    relations = parse_rel("rel 0 1 0:\npair 0.1 1.0\npair 0.0 1.1\n")
    assert dump_rel(relations).splitlines()[1:] == ["pair 0.0 1.1", "pair 0.1 1.0"]


@pytest.mark.parametrize(
    ("text", "line", "fragment"),
    [
        ("rel 0 1 0\n", 1, "expected 'rel <x> <y> <alpha>:'"),
        ("rel 0 1 0:\nrel 0 1 0:\n", 2, "duplicate block for R0_1_0"),
        ("pair 0.0 1.0\n", 1, "before any 'rel' header"),
        ("rel 0 1 0:\npair 1.0 1.0\n", 2, "lies outside block"),
        ("rel 0 1 0:\npair 0 1.0\n", 2, "expected a point"),
        ("rel 0 1 0:\npair 0.0\n", 2, "two points"),
    ],
)
def test_rel_errors(text: str, line: int, fragment: str) -> None:
    assert _line_of(text, parse_rel) == line
    with pytest.raises(FormatError, match=fragment):
        parse_rel(text)
