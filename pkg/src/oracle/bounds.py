"""LCP-based limits on the work of a single update.

For an edit at i the number of reorder iterations K and, for insertions,
the ISA walk i - SA_s[lambda] are bounded by the LCP values of the
reversed text around the suffix that starts at n - i + 2 (the reversal of
the prefix T[1..i-1]). String edits add their length m to the limit on K.
"""

import logging
from dataclasses import dataclass

from src.index.edits import EditOp, UpdateStats
from src.oracle.snapshot import lcp_array, suffix_array, validate_text
from src.utils.errors import InvariantViolation

logger = logging.getLogger(__name__)

# Fitted constant for string edits; alpha = 2 reproduces the character insertion limit
STRING_EDIT_ALPHA = 2


@dataclass(frozen=True)
class UpdateBounds:
    """Limits derived for one edit position."""

    p: int | None  # row of T^R[n-i+2..] in SA^R, None for i == 1
    lcp_near: int  # max(LCP^R[p], LCP^R[p+1])
    k_limit: int
    walk_limit: int | None


def reversed_lcp_position(text: bytes, i: int) -> tuple[int, int] | None:
    """Row p of suffix n-i+2 in SA^R and max(LCP^R[p], LCP^R[p+1]).

    Returns None for i == 1, where the reversed prefix is empty.
    """
    validate_text(text)
    n = len(text)
    if i <= 1:
        return None
    reversed_text = text[::-1]
    sa_rev = suffix_array(reversed_text)
    lcp_rev = lcp_array(reversed_text, sa_rev) + [0]  # LCP^R[n+1] = 0
    p = sa_rev.index(n - i + 2) + 1
    return p, max(lcp_rev[p - 1], lcp_rev[p])


def update_bounds(text: bytes, op: EditOp) -> UpdateBounds:
    """Limits for op applied to text (the text before the edit).

    Insertions of any length share the ISA walk limit. K is held to
    1 + STRING_EDIT_ALPHA * (m + LCP near p), which for a single character
    is the 3 + 2 * LCP limit of character insertion.
    """
    located = reversed_lcp_position(text, op.i)
    if located is None:
        return UpdateBounds(p=None, lcp_near=0, k_limit=op.i, walk_limit=None)
    p, near = located
    k_limit = min(op.i, 1 + STRING_EDIT_ALPHA * (op.m + near))
    walk_limit = near if op.is_insertion else None
    return UpdateBounds(p=p, lcp_near=near, k_limit=k_limit, walk_limit=walk_limit)


def check_update_bounds(text: bytes, op: EditOp, stats: UpdateStats) -> UpdateBounds:
    """Assert that a finished update stayed within its LCP limits.

    Raises:
        InvariantViolation: If K or the ISA walk exceeds its limit
    """
    bounds = update_bounds(text, op)
    if stats.k > bounds.k_limit:
        raise InvariantViolation(
            f"{op.describe()}: K={stats.k} exceeds {bounds.k_limit} "
            f"(i={op.i}, LCP^R near p={bounds.p} is {bounds.lcp_near})"
        )
    if bounds.walk_limit is not None and stats.isa_walk > bounds.walk_limit:
        raise InvariantViolation(
            f"{op.describe()}: ISA walk {stats.isa_walk} exceeds {bounds.walk_limit}"
        )
    logger.debug(f"{op.describe()}: K={stats.k} within {bounds.k_limit}")
    return bounds
