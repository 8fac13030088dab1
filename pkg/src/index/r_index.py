"""Dynamic r-index: count/locate over a mutable text.

The index keeps only the run-length BWT of the text and the suffix-array
values at the first and last row of every run. Pattern occurrences are
enumerated from a single SA value (the toehold) with phi-inverse, and the
text can be edited in place by inserting or deleting substrings.
"""

import logging
import time
from collections.abc import Iterator
from typing import TYPE_CHECKING

from src.index.edits import EditOp, SaInterval, UpdateStats
from src.index.rlbwt import SENTINEL, RlbwtIndex, Run
from src.index.sampled_sa import SampledSa
from src.index.updates import Observer, UpdateEngine
from src.structures.block_tree import DEFAULT_FANOUT
from src.utils.config import debug_trace_enabled
from src.utils.errors import ArgumentError, InvariantViolation, PreconditionError, RangeError

if TYPE_CHECKING:
    from src.oracle.snapshot import TextSnapshot
    from src.oracle.tracer import UpdateTracer

logger = logging.getLogger(__name__)

DEFAULT_BLOCK_SIZE = 4096  # bytes per insert_string call when building
DEFAULT_DEBUG_TRACE_CAP = 64


class DynamicRIndex:
    """Run-length BWT plus run-start and run-end suffix-array samples.

    Args:
        fanout: B-tree fanout for every backing sequence
        debug_trace: Replay every update against the naive oracle
            (defaults to the DRINDEX_DEBUG_TRACE environment switch)
        debug_trace_cap: Texts longer than this are not replayed
    """

    def __init__(
        self,
        fanout: int = DEFAULT_FANOUT,
        debug_trace: bool | None = None,
        debug_trace_cap: int = DEFAULT_DEBUG_TRACE_CAP,
    ):
        self.fanout = fanout
        self.rlbwt = RlbwtIndex.from_runs([Run(SENTINEL, 1)], fanout=fanout)
        self.sa_s = SampledSa([1], universe=1, fanout=fanout)
        self.sa_e = SampledSa([1], universe=1, fanout=fanout)
        self.debug_trace = debug_trace_enabled() if debug_trace is None else debug_trace
        self.debug_trace_cap = debug_trace_cap
        self.observer: Observer | None = None

    # -------------------------------------------------------- construction

    @classmethod
    def from_text(
        cls,
        text: bytes,
        block_size: int = DEFAULT_BLOCK_SIZE,
        fanout: int = DEFAULT_FANOUT,
        debug_trace: bool | None = None,
    ) -> "DynamicRIndex":
        """Build the index of text + sentinel by inserting blocks back to front.

        Raises:
            ArgumentError: If text contains the sentinel byte
        """
        if SENTINEL in text:
            raise ArgumentError("input contains the reserved 0x00 sentinel byte")
        if block_size < 1:
            raise ArgumentError(f"block size must be positive, got {block_size}")
        index = cls(fanout=fanout, debug_trace=debug_trace)
        starts = range(0, len(text), block_size)
        for start in reversed(starts):
            index.insert_string(1, text[start : start + block_size])
        logger.info(f"Built index: n={index.n}, r={index.r}")
        return index

    @classmethod
    def from_components(
        cls,
        runs: list[Run],
        sa_s: list[int],
        sa_e: list[int],
        fanout: int = DEFAULT_FANOUT,
        debug_trace: bool | None = None,
    ) -> "DynamicRIndex":
        """Assemble an index from its run list and both sample arrays."""
        index = cls(fanout=fanout, debug_trace=debug_trace)
        index.rlbwt = RlbwtIndex.from_runs(runs, fanout=fanout)
        n = index.rlbwt.n
        if not (len(sa_s) == len(sa_e) == index.rlbwt.r):
            raise RangeError(
                f"sample counts {len(sa_s)}/{len(sa_e)} do not match r={index.rlbwt.r}"
            )
        index.sa_s = SampledSa(sa_s, universe=n, fanout=fanout)
        index.sa_e = SampledSa(sa_e, universe=n, fanout=fanout)
        return index

    @classmethod
    def from_snapshot(
        cls, snapshot: "TextSnapshot", fanout: int = DEFAULT_FANOUT
    ) -> "DynamicRIndex":
        """Bootstrap from brute-force arrays (small inputs only)."""
        return cls.from_components(snapshot.runs, snapshot.sa_s, snapshot.sa_e, fanout=fanout)

    # ---------------------------------------------------------- properties

    @property
    def n(self) -> int:
        """Text length including the sentinel."""
        return self.rlbwt.n

    @property
    def r(self) -> int:
        return self.rlbwt.r

    def runs(self) -> list[Run]:
        return list(self.rlbwt.runs())

    def node_visits(self) -> int:
        return self.rlbwt.node_visits() + self.sa_s.node_visits() + self.sa_e.node_visits()

    def reset_visits(self) -> None:
        self.rlbwt.reset_visits()
        self.sa_s.reset_visits()
        self.sa_e.reset_visits()

    def stats(self) -> dict[str, float]:
        """Alphabet size (sentinel excluded), n, r and n/r."""
        sigma = len({run.ch for run in self.rlbwt.runs() if run.ch != SENTINEL})
        return {"sigma": sigma, "n": self.n, "r": self.r, "n_over_r": self.n / self.r}

    def text(self) -> bytes:
        """Decode the current text (sentinel included) by walking LF."""
        out = bytearray()
        row = 1
        for _ in range(self.n - 1):
            out.append(self.rlbwt.char_at(row))
            row = self.rlbwt.lf(row)
        out.reverse()
        out.append(SENTINEL)
        return bytes(out)

    extract = text

    # ------------------------------------------------------------ queries

    def _check_position(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise RangeError(f"text position {i} outside [1, {self.n}]")

    def phi_inverse(self, i: int) -> int:
        """SA value of the row below the row of suffix i (wrapping to row 1)."""
        self._check_position(i)
        j = self.sa_e.order(self.sa_e.count(i + 1))
        following = self.sa_s.access(j + 1) if j < self.r else self.sa_s.access(1)
        return (i - self.sa_e.access(j)) + following

    def phi(self, i: int) -> int:
        """SA value of the row above the row of suffix i (wrapping to row n)."""
        self._check_position(i)
        k = self.sa_s.order(self.sa_s.count(i + 1))
        preceding = self.sa_e.access(k - 1) if k > 1 else self.sa_e.access(self.r)
        return (i - self.sa_s.access(k)) + preceding

    def isa_with_walk(self, i: int) -> tuple[int, int]:
        """Row of suffix i, and the number of LF-inverse steps used to find it."""
        self._check_position(i)
        run = self.sa_s.order(self.sa_s.count(i + 1))
        walk = i - self.sa_s.access(run)
        _, row = self.rlbwt.run_access(run)
        for _ in range(walk):
            row = self.rlbwt.lf_inverse(row)
        return row, walk

    def comp_isa2(self, i: int) -> int:
        """ISA[i]."""
        return self.isa_with_walk(i)[0]

    def comp_isa1(self, i: int) -> int:
        """ISA[i-1], with ISA[0] = ISA[n]."""
        self._check_position(i)
        if i == 1:
            return 1
        return self.rlbwt.lf(self.comp_isa2(i))

    def comp_t(self, i: int) -> int:
        """T[i-1], with T[0] = T[n] (the sentinel)."""
        return self.rlbwt.char_at(self.comp_isa2(i))

    def isa_walk(self, i: int) -> int:
        return self.isa_with_walk(i)[1]

    def sa_interval(self, pattern: bytes) -> SaInterval:
        """Backward search for pattern, carrying the toehold SA[sp]."""
        if not pattern:
            raise ArgumentError("pattern must not be empty")
        rlbwt = self.rlbwt
        n = self.n
        ch = pattern[-1]
        base = rlbwt.lex_count(ch)
        sp, ep = base + 1, base + rlbwt.occurrences(ch)
        if sp > ep:
            return SaInterval(sp, ep)
        toehold = self.sa_s.access(rlbwt.s1.select(1, ch)) - 1 or n
        for ch in reversed(pattern[:-1]):
            base = rlbwt.lex_count(ch)
            new_sp = base + rlbwt.rank(sp - 1, ch) + 1
            new_ep = base + rlbwt.rank(ep, ch)
            if new_sp > new_ep:
                return SaInterval(new_sp, new_ep)
            if rlbwt.char_at(sp) == ch:
                toehold -= 1
            else:
                v = rlbwt.run_index(sp)
                following = rlbwt.s1.select(rlbwt.s1.rank(v, ch) + 1, ch)
                toehold = self.sa_s.access(following) - 1
            if toehold == 0:
                toehold = n
            sp, ep = new_sp, new_ep
        return SaInterval(sp, ep, toehold)

    def toehold_sa_sp(self, pattern: bytes) -> int:
        """SA[sp] of the final interval of pattern.

        Raises:
            PreconditionError: If pattern does not occur
        """
        interval = self.sa_interval(pattern)
        if interval.empty or interval.sa_sp is None:
            raise PreconditionError(f"pattern {pattern!r} does not occur")
        return interval.sa_sp

    def count(self, pattern: bytes) -> int:
        """Number of occurrences of pattern in the text (sentinel excluded)."""
        if not pattern:
            raise ArgumentError("pattern must not be empty")
        if SENTINEL in pattern:
            return 0
        return self.sa_interval(pattern).size

    def iter_locate(self, pattern: bytes) -> Iterator[int]:
        """Yield occurrence positions in suffix-array order."""
        if not pattern:
            raise ArgumentError("pattern must not be empty")
        if SENTINEL in pattern:
            return
        interval = self.sa_interval(pattern)
        if interval.empty or interval.sa_sp is None:
            return
        value = interval.sa_sp
        yield value
        for _ in range(interval.size - 1):
            value = self.phi_inverse(value)
            yield value

    def locate(self, pattern: bytes) -> set[int]:
        """Set of text positions where pattern starts."""
        return set(self.iter_locate(pattern))

    # ------------------------------------------------------------ updates

    def apply(self, op: EditOp) -> UpdateStats:
        """Apply one edit, validating it before anything is mutated."""
        op.validate(self.n)
        started = time.perf_counter()
        tracer = self._start_trace(op)
        engine = UpdateEngine(self, observer=tracer.check if tracer else self.observer)
        if op.is_insertion:
            engine.insert(op.kind, op.i, op.text)
        else:
            engine.delete(op.i, op.length)
        if tracer is not None:
            tracer.finish(self)

        stats = UpdateStats(
            kind=op.kind,
            i=op.i,
            m=op.m,
            k=engine.k,
            iterations=engine.iterations,
            isa_walk=engine.isa_walk,
            micros=(time.perf_counter() - started) * 1e6,
        )
        logger.debug(f"{op.describe()}: {stats.summary()} (n={self.n}, r={self.r})")
        return stats

    def _start_trace(self, op: EditOp) -> "UpdateTracer | None":
        if not self.debug_trace:
            return None
        if self.n + op.m > self.debug_trace_cap:
            logger.warning(f"Debug trace skipped: text length {self.n} exceeds cap")
            return None
        from src.oracle.tracer import UpdateTracer

        return UpdateTracer(self.text(), op).bind(self)

    def insert_char(self, i: int, ch: int | bytes) -> UpdateStats:
        """Insert one byte before text position i."""
        return self.apply(EditOp.insert_char(i, ch))

    def insert_string(self, i: int, pattern: bytes) -> UpdateStats:
        """Insert pattern before text position i."""
        return self.apply(EditOp.insert_string(i, pattern))

    def delete_substring(self, i: int, m: int) -> UpdateStats:
        """Delete the m bytes starting at text position i."""
        return self.apply(EditOp.delete(i, m))

    # ------------------------------------------------------------ checking

    def sampled_values(self) -> tuple[list[int], list[int]]:
        return self.sa_s.values(), self.sa_e.values()

    def check_invariants(self) -> None:
        """Structural self-check (does not need the text)."""
        self.rlbwt.check_invariants()
        if self.rlbwt.occurrences(SENTINEL) != 1:
            raise InvariantViolation("BWT must contain exactly one sentinel")
        if len(self.sa_s) != self.r or len(self.sa_e) != self.r:
            raise InvariantViolation("sample arrays do not have one value per run")
        if self.sa_s.universe != self.n or self.sa_e.universe != self.n:
            raise InvariantViolation("sample universe differs from the text length")

