"""Semi-scaffolds, scaffolds and coset semi-frames."""

from .extract import abelian_quotients, extract_semi_frame, qualifying_shifts, shifting_coset_well_defined
from .lemmas import FRAME_SUITES, run_frame_suites
from .models import (
    ConditionVerdict,
    ExtractedFrame,
    FrameRecord,
    GroupTriple,
    ScaffoldSearch,
    SemiFrameReport,
    SemiScaffold,
)
from .scaffold import build_semi_scaffold, find_scaffold, forward_pairs, resolve_order
from .verify import coarsened_maps, frame_record, verify_semi_frame

__all__ = [
    "SemiScaffold",
    "ScaffoldSearch",
    "GroupTriple",
    "ConditionVerdict",
    "SemiFrameReport",
    "FrameRecord",
    "ExtractedFrame",
    "build_semi_scaffold",
    "find_scaffold",
    "forward_pairs",
    "resolve_order",
    "extract_semi_frame",
    "qualifying_shifts",
    "shifting_coset_well_defined",
    "abelian_quotients",
    "verify_semi_frame",
    "frame_record",
    "coarsened_maps",
    "FRAME_SUITES",
    "run_frame_suites",
]
