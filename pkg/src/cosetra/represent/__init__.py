"""Atom bijections onto coset algebras, round trips and representability verdicts."""

from .bijection import (
    AtomBijection,
    IsomorphismVerdict,
    PeirceanVerdict,
    build_bijection,
    identity_bijection,
    verify_isomorphism,
    verify_peircean,
)
from .pipeline import (
    CheckOptions,
    FrameSummary,
    RepresentabilityVerdict,
    RoundtripReport,
    StageSummary,
    decide_representable,
    frame_summary,
    roundtrip,
)

__all__ = [
    "AtomBijection",
    "PeirceanVerdict",
    "IsomorphismVerdict",
    "identity_bijection",
    "build_bijection",
    "verify_peircean",
    "verify_isomorphism",
    "CheckOptions",
    "StageSummary",
    "FrameSummary",
    "RoundtripReport",
    "RepresentabilityVerdict",
    "frame_summary",
    "roundtrip",
    "decide_representable",
]
