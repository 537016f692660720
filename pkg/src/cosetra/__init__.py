from pydantic import __version__ as _pydantic_version

# cosetra relies on the Pydantic v2 API (model_validator, frozen models).
if not _pydantic_version.startswith("2"):
    raise ImportError(
        "cosetra requires pydantic>=2.0; detected version %s" % _pydantic_version
    )

import logging

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

__version__ = "0.1.0"

from .builder import (  # noqa: E402
    CosetAlgebra,
    CosetAtomIndex,
    GenerationBounds,
    Relation,
    atomic_relation,
    build_coset_algebra,
    build_group_algebra,
    compare_otimes_composition,
    generate_triples,
)
from .core import (  # noqa: E402
    CosetraError,
    DomainError,
    GroupError,
    InternalConsistencyError,
    PreconditionError,
    StageError,
    StructureMismatchError,
)
from .frames import (  # noqa: E402
    GroupTriple,
    build_semi_scaffold,
    extract_semi_frame,
    find_scaffold,
    verify_semi_frame,
)
from .groups import FiniteGroup, cyclic, dihedral, direct_product, symmetric, trivial  # noqa: E402
from .kernel import (  # noqa: E402
    AtomStructure,
    Element,
    complex_algebra,
    full_relation_algebra,
    verify_ra_axioms,
)
from .measure import is_measurable_algebra, measure_algebra  # noqa: E402
from .parsing import FormatError, dump_ra, load_gtr, load_ra, parse_ra  # noqa: E402
from .represent import decide_representable, roundtrip  # noqa: E402

__all__ = [
    "__version__",
    "CosetraError",
    "StructureMismatchError",
    "DomainError",
    "PreconditionError",
    "InternalConsistencyError",
    "GroupError",
    "StageError",
    "FormatError",
    "AtomStructure",
    "Element",
    "verify_ra_axioms",
    "full_relation_algebra",
    "complex_algebra",
    "FiniteGroup",
    "trivial",
    "cyclic",
    "symmetric",
    "dihedral",
    "direct_product",
    "measure_algebra",
    "is_measurable_algebra",
    "GroupTriple",
    "build_semi_scaffold",
    "find_scaffold",
    "extract_semi_frame",
    "verify_semi_frame",
    "Relation",
    "CosetAtomIndex",
    "CosetAlgebra",
    "atomic_relation",
    "build_coset_algebra",
    "build_group_algebra",
    "compare_otimes_composition",
    "GenerationBounds",
    "generate_triples",
    "roundtrip",
    "decide_representable",
    "parse_ra",
    "load_ra",
    "dump_ra",
    "load_gtr",
]
