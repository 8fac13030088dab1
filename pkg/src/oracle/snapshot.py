"""Brute-force reference arrays for a text.

Everything here is computed by sorting suffixes directly, O(n^2 log n),
and is only meant for texts of a few hundred bytes in tests and for the
``verify``/``stats`` commands under the oracle cap.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from src.index.edits import EditOp
from src.index.rlbwt import SENTINEL, Run, encode_runs
from src.utils.errors import ArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TextSnapshot:
    """All arrays of one text, 1-based values stored in 0-based lists."""

    text: bytes
    sa: list[int]
    isa: list[int]
    lcp: list[int]
    bwt: bytes
    runs: list[Run]
    sa_s: list[int]
    sa_e: list[int]
    sa_rev: list[int]
    lcp_rev: list[int]

    @property
    def n(self) -> int:
        return len(self.text)

    @property
    def r(self) -> int:
        return len(self.runs)


def validate_text(text: bytes) -> None:
    """Check that text ends with the sentinel and contains it once.

    Raises:
        ArgumentError: If the sentinel is missing or repeated
    """
    if not text or text[-1] != SENTINEL:
        raise ArgumentError("text must end with the 0x00 sentinel")
    if text.count(SENTINEL) != 1:
        raise ArgumentError("the 0x00 sentinel must occur exactly once")


def suffix_array(text: bytes) -> list[int]:
    return sorted(range(1, len(text) + 1), key=lambda k: text[k - 1 :])


def lcp_array(text: bytes, sa: list[int]) -> list[int]:
    lcp = [0] * len(sa)
    for row in range(1, len(sa)):
        a, b = text[sa[row - 1] - 1 :], text[sa[row] - 1 :]
        length = 0
        while length < min(len(a), len(b)) and a[length] == b[length]:
            length += 1
        lcp[row] = length
    return lcp


def build_snapshot(text: bytes) -> TextSnapshot:
    """Compute SA, ISA, LCP, BWT, runs, both samples and the reversed arrays."""
    validate_text(text)
    n = len(text)
    sa = suffix_array(text)
    isa = [0] * n
    for row, value in enumerate(sa, start=1):
        isa[value - 1] = row
    bwt = bytes(text[value - 2] for value in sa)  # text[-1] wraps to the sentinel
    runs = encode_runs(bwt)

    sa_s: list[int] = []
    sa_e: list[int] = []
    row = 0
    for run in runs:
        sa_s.append(sa[row])
        sa_e.append(sa[row + run.length - 1])
        row += run.length

    reversed_text = text[::-1]
    sa_rev = suffix_array(reversed_text)
    return TextSnapshot(
        text=text,
        sa=sa,
        isa=isa,
        lcp=lcp_array(text, sa),
        bwt=bwt,
        runs=runs,
        sa_s=sa_s,
        sa_e=sa_e,
        sa_rev=sa_rev,
        lcp_rev=lcp_array(reversed_text, sa_rev),
    )


def _check_pattern(pattern: bytes) -> None:
    if not pattern:
        raise ArgumentError("pattern must not be empty")
    if SENTINEL in pattern:
        raise ArgumentError("pattern must not contain the sentinel")


def naive_locate(text: bytes, pattern: bytes) -> set[int]:
    """Every 1-based start of pattern in text, by a sliding window."""
    _check_pattern(pattern)
    m = len(pattern)
    return {k + 1 for k in range(len(text) - m + 1) if text[k : k + m] == pattern}


def naive_count(text: bytes, pattern: bytes) -> int:
    return len(naive_locate(text, pattern))


def lcp_stats(text: bytes) -> tuple[Fraction, int, int]:
    """Mean LCP, max LCP and BWT run count of text."""
    snapshot = build_snapshot(text)
    return Fraction(sum(snapshot.lcp), snapshot.n), max(snapshot.lcp), snapshot.r


def apply_edit(text: bytes, op: EditOp) -> bytes:
    """Apply op to a sentinel-terminated text directly."""
    op.validate(len(text))
    i = op.i - 1
    if op.is_insertion:
        return text[:i] + op.text + text[i:]
    return text[:i] + text[i + op.length :]
