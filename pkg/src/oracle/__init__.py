"""Brute-force reference implementation used to check the index."""

from .bounds import UpdateBounds, check_update_bounds, reversed_lcp_position, update_bounds
from .replay import IterationTrace, replay_iterations
from .snapshot import (
    TextSnapshot,
    apply_edit,
    build_snapshot,
    lcp_stats,
    naive_count,
    naive_locate,
)

__all__ = [
    "IterationTrace",
    "TextSnapshot",
    "UpdateBounds",
    "apply_edit",
    "build_snapshot",
    "check_update_bounds",
    "lcp_stats",
    "naive_count",
    "naive_locate",
    "replay_iterations",
    "reversed_lcp_position",
    "update_bounds",
]
