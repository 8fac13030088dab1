"""Dynamic run-length BWT.

The BWT L is kept as r runs (c_x, l_x) spread over four sequences:

    s1  run heads in text order                         (CharSequence)
    s2  run lengths in text order                       (PartialSumList)
    s3  run lengths ordered by (head, run index)        (PartialSumList)
    s4  gaps between consecutive sorted heads, plus a   (PartialSumList)
        final gap up to MAX_SYMBOL, r + 1 entries

Positions in L and run indices are 1-based.
"""

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum

from src.structures.block_tree import DEFAULT_FANOUT
from src.structures.char_sequence import CharSequence
from src.structures.psum import PartialSumList
from src.utils.errors import InvariantViolation, PreconditionError, RangeError

logger = logging.getLogger(__name__)

SENTINEL = 0x00  # smallest symbol, terminates every text
MAX_SYMBOL = 0xFF


@dataclass(frozen=True)
class Run:
    """One maximal run of equal symbols in L."""

    ch: int
    length: int


class RunEditKind(Enum):
    NEW = "new"
    GREW_AT_START = "grew_at_start"
    GREW_AT_END = "grew_at_end"
    GREW_INSIDE = "grew_inside"
    SPLIT = "split"
    REMOVED = "removed"
    REMOVED_MERGED = "removed_merged"
    SHRANK_AT_START = "shrank_at_start"
    SHRANK_AT_END = "shrank_at_end"
    SHRANK_INSIDE = "shrank_inside"


@dataclass(frozen=True)
class RunEdit:
    """How a single-character update changed the run structure.

    ``run`` is the run that received or lost the character: for SPLIT the
    new middle run, for REMOVED/REMOVED_MERGED the index the run occupied.
    """

    kind: RunEditKind
    run: int


class RlbwtIndex:
    """Run-length encoded BWT with rank/select/LF navigation and run updates."""

    def __init__(self, fanout: int = DEFAULT_FANOUT):
        self.fanout = fanout
        self.s1 = CharSequence(fanout=fanout)
        self.s2 = PartialSumList(fanout=fanout)
        self.s3 = PartialSumList(fanout=fanout)
        self.s4 = PartialSumList([MAX_SYMBOL], fanout=fanout)

    @classmethod
    def from_runs(cls, runs: Iterable[Run], fanout: int = DEFAULT_FANOUT) -> "RlbwtIndex":
        rlbwt = cls(fanout=fanout)
        for run in runs:
            if run.length < 1:
                raise RangeError(f"run length must be positive, got {run.length}")
            x = rlbwt.r + 1
            rlbwt.insert_run(x, run.ch)
            if run.length > 1:
                rlbwt._add_to_run(x, run.length - 1)
        return rlbwt

    @classmethod
    def from_bwt(cls, bwt: bytes, fanout: int = DEFAULT_FANOUT) -> "RlbwtIndex":
        return cls.from_runs(encode_runs(bwt), fanout=fanout)

    # ------------------------------------------------------------ properties

    @property
    def n(self) -> int:
        return self.s2.total

    @property
    def r(self) -> int:
        return len(self.s1)

    def runs(self) -> Iterator[Run]:
        for ch, length in zip(self.s1, self.s2, strict=True):
            yield Run(ch, length)

    def decode(self) -> bytes:
        return b"".join(bytes([run.ch]) * run.length for run in self.runs())

    def node_visits(self) -> int:
        return sum(seq.tree.visits for seq in (self.s1, self.s2, self.s3, self.s4))

    def reset_visits(self) -> None:
        for seq in (self.s1, self.s2, self.s3, self.s4):
            seq.tree.reset_visits()

    # --------------------------------------------------------------- helpers

    def _check_row(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise RangeError(f"BWT position {i} outside [1, {self.n}]")

    def _check_run(self, x: int) -> None:
        if not 1 <= x <= self.r:
            raise RangeError(f"run index {x} outside [1, {self.r}]")

    def _runs_below(self, ch: int) -> int:
        """Number of runs whose head is smaller than ch."""
        if ch <= SENTINEL:
            return 0
        return self.s4.search(ch) - 1

    def _sorted_position(self, x: int) -> int:
        """Position of run x in (head, run index) order."""
        ch = self.s1.access(x)
        return self._runs_below(ch) + self.s1.rank(x, ch)

    def _add_to_run(self, x: int, delta: int) -> None:
        self.s2.add(x, delta)
        self.s3.add(self._sorted_position(x), delta)

    # --------------------------------------------------------------- queries

    def char_at(self, i: int) -> int:
        """Return L[i]."""
        self._check_row(i)
        return self.s1.access(self.s2.search(i))

    def occurrences(self, ch: int) -> int:
        """Total occurrences of ch in L."""
        below = self._runs_below(ch)
        return self.s3.sum(below + self.s1.count(ch)) - self.s3.sum(below)

    def lex_count(self, ch: int) -> int:
        """Number of characters in L smaller than ch."""
        return self.s3.sum(self._runs_below(ch))

    def lex_search(self, i: int) -> int:
        """Symbol whose lexicographic bucket contains rank i."""
        self._check_row(i)
        return self.s4.sum(self.s3.search(i))

    def rank(self, i: int, ch: int) -> int:
        """Occurrences of ch in L[1..i]."""
        if not 0 <= i <= self.n:
            raise RangeError(f"prefix length {i} outside [0, {self.n}]")
        if i == 0 or self.s1.count(ch) == 0:
            return 0
        x = self.s2.search(i)
        below = self._runs_below(ch)
        value = self.s3.sum(below + self.s1.rank(x, ch)) - self.s3.sum(below)
        if self.s1.access(x) == ch:
            value -= self.s2.sum(x) - i
        return value

    def select(self, k: int, ch: int) -> int:
        """Position of the k-th ch in L, or -1 if there are fewer than k."""
        if k < 1:
            return -1
        below = self._runs_below(ch)
        base = self.s3.sum(below)
        if k > self.s3.sum(below + self.s1.count(ch)) - base:
            return -1
        j = self.s3.search(base + k)
        x = self.s1.select(j - below, ch)
        start = self.s2.sum(x - 1) + 1
        return start + (base + k - self.s3.sum(j - 1)) - 1

    def run_access(self, x: int) -> tuple[Run, int]:
        """Return run x and its starting position in L."""
        self._check_run(x)
        return Run(self.s1.access(x), self.s2.get(x)), self.s2.sum(x - 1) + 1

    def run_index(self, i: int) -> int:
        """Index of the run containing L[i]."""
        self._check_row(i)
        return self.s2.search(i)

    def lf(self, t: int) -> int:
        ch = self.char_at(t)
        return self.lex_count(ch) + self.rank(t, ch)

    def lf_inverse(self, j: int) -> int:
        ch = self.lex_search(j)
        return self.select(j - self.lex_count(ch), ch)

    # ------------------------------------------------------------ run updates

    def insert_run(self, x: int, ch: int) -> None:
        """Insert a new run (ch, 1) as run x."""
        if not 1 <= x <= self.r + 1:
            raise RangeError(f"run index {x} outside [1, {self.r + 1}]")
        j = 1 + self._runs_below(ch) + self.s1.rank(x - 1, ch)
        self.s4.divide(j, ch - self.s4.sum(j - 1))
        self.s1.insert(x, ch)
        self.s2.insert(x, 1)
        self.s3.insert(j, 1)

    def delete_run(self, x: int) -> Run:
        """Remove run x entirely."""
        self._check_run(x)
        j = self._sorted_position(x)
        run = Run(self.s1.delete(x), self.s2.delete(x))
        self.s3.delete(j)
        self.s4.merge(j)
        return run

    def split_run(self, x: int, t: int) -> None:
        """Split run x into (c, t) and (c, l - t)."""
        run, _ = self.run_access(x)
        if not 1 <= t <= run.length - 1:
            raise RangeError(f"cannot split run {x} of length {run.length} at {t}")
        p = self._sorted_position(x)
        self.s1.insert(x + 1, run.ch)
        self.s2.divide(x, t)
        self.s3.divide(p, t)
        self.s4.insert(p + 1, 0)

    def merge_runs(self, x: int) -> None:
        """Merge runs x and x+1, which must share a head."""
        if not 1 <= x < self.r:
            raise RangeError(f"run index {x} has no successor to merge with")
        if self.s1.access(x) != self.s1.access(x + 1):
            raise PreconditionError(f"runs {x} and {x + 1} have different heads")
        p = self._sorted_position(x)
        self.s1.delete(x + 1)
        self.s2.merge(x)
        self.s3.merge(p)
        self.s4.delete(p + 1)

    # ---------------------------------------------------- character updates

    def insert_char(self, ch: int, i: int) -> RunEdit:
        """Insert ch so that it becomes L[i] (1 <= i <= n + 1)."""
        n = self.n
        if not 1 <= i <= n + 1:
            raise RangeError(f"insert position {i} outside [1, {n + 1}]")
        if self.r == 0:
            self.insert_run(1, ch)
            return RunEdit(RunEditKind.NEW, 1)
        if i == n + 1:
            last = self.r
            if self.s1.access(last) == ch:
                self._add_to_run(last, 1)
                return RunEdit(RunEditKind.GREW_AT_END, last)
            self.insert_run(last + 1, ch)
            return RunEdit(RunEditKind.NEW, last + 1)

        w = self.s2.search(i)
        run, start = self.run_access(w)
        if run.ch == ch:
            self._add_to_run(w, 1)
            kind = RunEditKind.GREW_AT_START if i == start else RunEditKind.GREW_INSIDE
            return RunEdit(kind, w)
        if i == start:
            if w > 1 and self.s1.access(w - 1) == ch:
                self._add_to_run(w - 1, 1)
                return RunEdit(RunEditKind.GREW_AT_END, w - 1)
            self.insert_run(w, ch)
            return RunEdit(RunEditKind.NEW, w)
        self.split_run(w, i - start)
        self.insert_run(w + 1, ch)
        return RunEdit(RunEditKind.SPLIT, w + 1)

    def delete_char(self, i: int) -> RunEdit:
        """Remove L[i], merging the neighbouring runs if they become adjacent."""
        self._check_row(i)
        w = self.s2.search(i)
        run, start = self.run_access(w)
        if run.length == 1:
            self.delete_run(w)
            if 1 < w <= self.r and self.s1.access(w - 1) == self.s1.access(w):
                self.merge_runs(w - 1)
                return RunEdit(RunEditKind.REMOVED_MERGED, w)
            return RunEdit(RunEditKind.REMOVED, w)
        self._add_to_run(w, -1)
        if i == start:
            return RunEdit(RunEditKind.SHRANK_AT_START, w)
        if i == start + run.length - 1:
            return RunEdit(RunEditKind.SHRANK_AT_END, w)
        return RunEdit(RunEditKind.SHRANK_INSIDE, w)

    # ------------------------------------------------------------- checking

    def check_invariants(self) -> None:
        """Verify the four sequences describe the same runs.

        Raises:
            InvariantViolation: If any structural invariant fails
        """
        runs = list(self.runs())
        if len(self.s3) != len(runs) or len(self.s4) != len(runs) + 1:
            raise InvariantViolation("s1..s4 lengths disagree")
        if self.s3.total != self.n:
            raise InvariantViolation(f"s3 sums to {self.s3.total}, expected {self.n}")
        ordered = sorted(range(len(runs)), key=lambda x: (runs[x].ch, x))
        if list(self.s3) != [runs[x].length for x in ordered]:
            raise InvariantViolation("s3 is not s2 in (head, index) order")
        heads = [runs[x].ch for x in ordered]
        if [self.s4.sum(j) for j in range(1, len(runs) + 1)] != heads:
            raise InvariantViolation("s4 prefix sums do not reproduce the sorted heads")
        if self.s4.total != MAX_SYMBOL:
            raise InvariantViolation(f"s4 sums to {self.s4.total}, expected {MAX_SYMBOL}")
        for x in range(1, len(runs)):
            if runs[x - 1].ch == runs[x].ch:
                raise InvariantViolation(f"runs {x} and {x + 1} share head {runs[x].ch}")


def encode_runs(data: bytes) -> list[Run]:
    """Run-length encode a byte string."""
    runs: list[Run] = []
    for byte in data:
        if runs and runs[-1].ch == byte:
            runs[-1] = Run(byte, runs[-1].length + 1)
        else:
            runs.append(Run(byte, 1))
    return runs
