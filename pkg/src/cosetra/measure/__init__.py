"""Measurable atoms, stabilizers, regular elements and their quotient isomorphisms."""

from .census import PairCensus, census
from .lemmas import (
    MEASURE_SUITES,
    LemmaReport,
    LemmaResult,
    Tally,
    elements_below,
    run_lemma_suites,
    run_suites,
)
from .records import (
    EquivalenceE,
    MeasurableAtomRecord,
    MeasuredAlgebra,
    equivalence_E,
    functional_atoms,
    is_measurable_algebra,
    measurable_atoms,
    measure_algebra,
    submasks,
)
from .regular import (
    RegularDecomposition,
    RegularQuotient,
    find_left_regular_below,
    quotient_iso_of_regular,
    regular_decomposition,
)
from .stabilizers import StabilizerData, stabilizer_data, translate

__all__ = [
    "MeasurableAtomRecord",
    "EquivalenceE",
    "MeasuredAlgebra",
    "functional_atoms",
    "measurable_atoms",
    "is_measurable_algebra",
    "equivalence_E",
    "measure_algebra",
    "submasks",
    "elements_below",
    "StabilizerData",
    "stabilizer_data",
    "translate",
    "RegularQuotient",
    "RegularDecomposition",
    "quotient_iso_of_regular",
    "find_left_regular_below",
    "regular_decomposition",
    "LemmaResult",
    "LemmaReport",
    "Tally",
    "MEASURE_SUITES",
    "run_lemma_suites",
    "run_suites",
    "PairCensus",
    "census",
]
