"""Text formats: ``.ra`` structures, ``.grp`` groups, ``.gtr`` triples and ``.rel`` witnesses."""

from .exceptions import FormatError
from .grp_format import GrpParser, dump_grp, load_grp, parse_grp, write_grp
from .gtr_format import GtrParser, dump_gtr, load_gtr, parse_gtr, write_gtr
from .line_parser import Directive, LineParser
from .ra_format import RaParser, dump_ra, load_ra, parse_ra, write_ra
from .rel_format import RelParser, dump_rel, load_rel, parse_rel, write_rel

__all__ = [
    "FormatError",
    "Directive",
    "LineParser",
    "RaParser",
    "parse_ra",
    "load_ra",
    "dump_ra",
    "write_ra",
    "GrpParser",
    "parse_grp",
    "load_grp",
    "dump_grp",
    "write_grp",
    "GtrParser",
    "parse_gtr",
    "load_gtr",
    "dump_gtr",
    "write_gtr",
    "RelParser",
    "parse_rel",
    "load_rel",
    "dump_rel",
    "write_rel",
]
