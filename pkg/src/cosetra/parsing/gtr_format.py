"""The ``.gtr`` group-triple format.

::

    indices 2
    group 0 cyclic 2
    group 1 product cyclic 2 cyclic 2
    label 0 x
    eclass 0 1
    H 0 1 0
    K 0 1 0 1
    phi 0 1 0:0 1:2
    C 0 1 1 0

Group constructors are prefix expressions: ``trivial``, ``cyclic n``,
``symmetric n``, ``dihedral n``, ``product <g1> <g2>`` and ``table <path>``
(a ``.grp`` file relative to the ``.gtr`` file). ``phi`` sends the coset of
the source element to the coset of the target element. Without ``eclass``
lines all indices form one class. Omitted data defaults as follows: for
(x, x) the trivial subgroup and identity map; for (y, x) the reverse of
(x, y) with the inverse map; for C the identity coset H_xy;H_xz.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Mapping

from ..core.errors import CosetraError
from ..frames.models import GroupTriple, Pair, Triple
from ..groups.group import FiniteGroup, cyclic, dihedral, direct_product, symmetric, trivial
from ..groups.quotient import QuotientIso, identity_iso, inverse, quotient_iso
from ..groups.subgroups import Subgroup, coset_system, product_subgroup, trivial_subgroup
from ..measure.records import EquivalenceE
from .grp_format import GrpParser, write_grp
from .exceptions import FormatError
from .line_parser import Directive, LineParser

__all__ = ["GtrParser", "parse_gtr", "load_gtr", "dump_gtr", "write_gtr"]

_SIZED = {"cyclic": cyclic, "symmetric": symmetric, "dihedral": dihedral}


class GtrParser(LineParser[GroupTriple]):
    def _group(self, d: Directive, tokens: list[str]) -> FiniteGroup:
        pos = 0

        def take() -> str:
            nonlocal pos
            if pos >= len(tokens):
                raise self.error("incomplete group constructor", d.line)
            pos += 1
            return tokens[pos - 1]

        def expr() -> FiniteGroup:
            head = take()
            if head == "trivial":
                return trivial()
            if head == "product":
                left = expr()
                return direct_product(left, expr())
            if head in _SIZED:
                (n,) = self.ints(d, (take(),), count=1)
                return _SIZED[head](n)
            if head == "table":
                ref = Path(take())
                path = ref if ref.is_absolute() or self.base is None else self.base / ref
                return GrpParser.load(path)
            raise self.error(f"unknown group constructor {head!r}", d.line)

        try:
            group = expr()
        except FormatError:
            raise
        except CosetraError as exc:
            raise self.error(str(exc), d.line) from exc
        if pos != len(tokens):
            raise self.error(f"trailing tokens after group: {' '.join(tokens[pos:])}", d.line)
        return group

    def to_model(self, directives: list[Directive]) -> GroupTriple:
        if not directives or directives[0].keyword != "indices":
            raise self.error("the first directive must be 'indices <k>'", directives[0].line if directives else None)
        (k,) = self.ints(directives[0], count=1)
        if k < 1:
            raise self.error("need at least one index", directives[0].line)
        indices = tuple(range(k))

        def index(d: Directive, token: str) -> int:
            (x,) = self.ints(d, (token,), count=1)
            if not 0 <= x < k:
                raise self.error(f"index {x} outside 0..{k - 1}", d.line)
            return x

        groups: dict[int, FiniteGroup] = {}
        labels: dict[int, str] = {}
        classes: list[tuple[int, ...]] = []
        subgroups: dict[tuple[str, Pair], tuple[list[int], Directive]] = {}
        maps: dict[Pair, Directive] = {}
        shifts: dict[Triple, tuple[int, Directive]] = {}
        for d in directives[1:]:
            if d.keyword == "group":
                if not d.args:
                    raise self.error("'group' needs an index and a constructor", d.line)
                groups[index(d, d.args[0])] = self._group(d, list(d.args[1:]))
            elif d.keyword == "label":
                if len(d.args) != 2:
                    raise self.error("'label' expects an index and a name", d.line)
                labels[index(d, d.args[0])] = d.args[1]
            elif d.keyword == "eclass":
                classes.append(tuple(sorted(index(d, t) for t in d.args)))
            elif d.keyword in ("H", "K"):
                if len(d.args) < 2:
                    raise self.error(f"'{d.keyword}' expects a pair and members", d.line)
                pair = (index(d, d.args[0]), index(d, d.args[1]))
                subgroups[(d.keyword, pair)] = (self.ints(d, d.args[2:]), d)
            elif d.keyword == "phi":
                if len(d.args) < 2:
                    raise self.error("'phi' expects a pair and g:h assignments", d.line)
                maps[(index(d, d.args[0]), index(d, d.args[1]))] = d
            elif d.keyword == "C":
                if len(d.args) != 4:
                    raise self.error("'C' expects a triple and a representative", d.line)
                t = (index(d, d.args[0]), index(d, d.args[1]), index(d, d.args[2]))
                (rep,) = self.ints(d, d.args[3:], count=1)
                shifts[t] = (rep, d)
            else:
                raise self.error(f"unknown directive {d.keyword!r}", d.line)

        missing = [x for x in indices if x not in groups]
        if missing:
            raise self.error(f"no group given for index {missing[0]}")
        E = self._equivalence(indices, classes)
        phi = self._maps(E, groups, subgroups, maps)
        C: dict[Triple, frozenset[int]] = {}
        for t in E.triples():
            x, y, z = t
            outer = product_subgroup(phi[(x, y)].source.subgroup, phi[(x, z)].source.subgroup)
            if t in shifts:
                rep, d = shifts[t]
                try:
                    system = coset_system(outer)
                    C[t] = system.cosets[system.index_of(rep)]
                except CosetraError as exc:
                    raise self.error(str(exc), d.line) from exc
            else:
                C[t] = outer.members
        stray = [t for t in shifts if t not in C]
        if stray:
            raise self.error(f"C given for {stray[0]}, which is not an E_3 triple", shifts[stray[0]][1].line)
        return GroupTriple(groups=groups, E=E, phi=phi, C=C, labels=labels)

    def _equivalence(self, indices: tuple[int, ...], classes: list[tuple[int, ...]]) -> EquivalenceE:
        if not classes:
            classes = [indices]
        seen: set[int] = set()
        for c in classes:
            if seen & set(c):
                raise self.error(f"index {min(seen & set(c))} appears in two classes")
            seen |= set(c)
        if seen != set(indices):
            raise self.error(f"index {min(set(indices) - seen)} is in no class")
        pairs = frozenset((x, y) for c in classes for x in c for y in c)
        return EquivalenceE(indices=indices, pairs=pairs, classes=tuple(sorted(classes)))

    def _maps(
        self,
        E: EquivalenceE,
        groups: Mapping[int, FiniteGroup],
        subgroups: Mapping[tuple[str, Pair], tuple[list[int], Directive]],
        maps: Mapping[Pair, Directive],
    ) -> dict[Pair, QuotientIso]:
        for (kind, pair), (_, d) in subgroups.items():
            if pair not in E.pairs:
                raise self.error(f"{kind} given for {pair}, which is not an E-pair", d.line)
        for pair, d in maps.items():
            if pair not in E.pairs:
                raise self.error(f"phi given for {pair}, which is not an E-pair", d.line)

        phi: dict[Pair, QuotientIso] = {}
        for x, y in E.sorted_pairs():
            if ("H", (x, y)) not in subgroups:
                continue
            members, d = subgroups[("H", (x, y))]
            if ("K", (x, y)) in subgroups:
                k_members, _ = subgroups[("K", (x, y))]
            elif ("H", (y, x)) in subgroups:
                k_members, _ = subgroups[("H", (y, x))]
            else:
                raise self.error(f"no K given for ({x}, {y})", d.line)
            try:
                source = coset_system(Subgroup(groups[x], frozenset(members)))
                target = coset_system(Subgroup(groups[y], frozenset(k_members)))
                if (x, y) in maps:
                    phi[(x, y)] = quotient_iso(source, target, self._assignments(maps[(x, y)]))
                elif source.count == 1:
                    phi[(x, y)] = QuotientIso(source, target, (0,))
                else:
                    raise self.error(f"no phi given for ({x}, {y})", d.line)
            except FormatError:
                raise
            except CosetraError as exc:
                line = maps[(x, y)].line if (x, y) in maps else d.line
                raise self.error(str(exc), line) from exc

        for x, y in E.sorted_pairs():
            if (x, y) in phi:
                continue
            if (y, x) in phi:
                phi[(x, y)] = inverse(phi[(y, x)])
            elif x == y:
                phi[(x, y)] = identity_iso(coset_system(trivial_subgroup(groups[x])))
            else:
                raise self.error(f"no H given for ({x}, {y}) or ({y}, {x})")
        return phi

    def _assignments(self, d: Directive) -> dict[int, int]:
        out: dict[int, int] = {}
        for token in d.args[2:]:
            m = re.fullmatch(r"(\d+):(\d+)", token)
            if m is None:
                raise self.error(f"expected g:h, got {token!r}", d.line)
            out[int(m.group(1))] = int(m.group(2))
        return out


def parse_gtr(text: str, source: str = "<string>", base: Path | None = None) -> GroupTriple:
    return GtrParser(source, base).parse(text)


def load_gtr(path: str | Path) -> GroupTriple:
    return GtrParser.load(path)


def _constructor(group: FiniteGroup) -> str | None:
    m = re.fullmatch(r"([ZSD])(\d+)", group.name)
    if group.name == "Z1":
        candidate, expr = trivial(), "trivial"
    elif m is not None:
        family = {"Z": "cyclic", "S": "symmetric", "D": "dihedral"}[m.group(1)]
        try:
            candidate, expr = _SIZED[family](int(m.group(2))), f"{family} {m.group(2)}"
        except CosetraError:
            return None
    else:
        return None
    return expr if candidate.table == group.table else None


def dump_gtr(F: GroupTriple, tables: Mapping[int, str] | None = None) -> str:
    """Text form of F; groups without a library constructor need an entry in ``tables``."""
    tables = tables or {}
    lines = [f"indices {len(F.indices)}"]
    for x in F.indices:
        ref = _constructor(F.groups[x])
        if ref is None:
            if x not in tables:
                raise ValueError(f"group {F.groups[x]} at index {x} needs a table reference")
            ref = f"table {tables[x]}"
        lines.append(f"group {x} {ref}")
    lines += [f"label {x} {F.labels[x]}" for x in F.indices if x in F.labels]
    lines += ["eclass " + " ".join(map(str, c)) for c in F.E.classes]
    for x, y in F.pairs():
        if x == y:
            continue
        p = F.phi[(x, y)]
        lines.append(f"H {x} {y} " + " ".join(map(str, p.source.subgroup.sorted_members)))
        lines.append(f"K {x} {y} " + " ".join(map(str, p.target.subgroup.sorted_members)))
        assignments = " ".join(
            f"{p.source.representatives[i]}:{p.target.representatives[j]}" for i, j in enumerate(p.mapping)
        )
        lines.append(f"phi {x} {y} {assignments}")
    for t in F.triples():
        if F.C[t] != F.identity_coset(*t):
            lines.append(f"C {t[0]} {t[1]} {t[2]} {min(F.C[t])}")
    return "\n".join(lines) + "\n"


def write_gtr(F: GroupTriple, path: str | Path) -> list[Path]:
    """Write F and a ``.grp`` file for every group that needs a table; returns all paths."""
    p = Path(path)
    written: list[Path] = []
    tables: dict[int, str] = {}
    for x in F.indices:
        if _constructor(F.groups[x]) is None:
            ref = f"{p.stem}.{x}.grp"
            written.append(write_grp(F.groups[x], p.parent / ref))
            tables[x] = ref
    p.write_text(dump_gtr(F, tables), encoding="utf-8")
    return [p, *written]
