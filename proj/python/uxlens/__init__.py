"""Python bindings for the uxlens usability-evaluation pipeline core."""

from ._uxlens import (
    __version__,
    check_context_budget,
    cosine,
    default_heuristics,
    estimate_video_tokens,
    extract_json,
    group_by_similarity,
    order_is_valid,
    render_template,
    repair_order,
)

__all__ = [
    "__version__",
    "check_context_budget",
    "cosine",
    "default_heuristics",
    "estimate_video_tokens",
    "extract_json",
    "group_by_similarity",
    "order_is_valid",
    "render_template",
    "repair_order",
]
