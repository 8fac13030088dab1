"""Tests for the dynamic run-length BWT."""

# Add src to path for imports
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.index.rlbwt import RlbwtIndex, Run, RunEdit, RunEditKind, encode_runs
from src.utils.errors import InvariantViolation, PreconditionError, RangeError

A, B, C, END = ord("a"), ord("b"), ord("c"), 0
BWT = b"abbbba\x00"  # BWT of bbabba$


@pytest.fixture
def rlbwt():
    """RLBWT of bbabba$."""
    return RlbwtIndex.from_bwt(BWT, fanout=4)


def test_runs_and_decode(rlbwt):
    """Four runs that decode back to L."""
    assert list(rlbwt.runs()) == [Run(A, 1), Run(B, 4), Run(A, 1), Run(END, 1)]
    assert rlbwt.decode() == BWT
    assert rlbwt.n == 7
    assert rlbwt.r == 4
    rlbwt.check_invariants()


def test_rank(rlbwt):
    """rank counts occurrences in a prefix of L."""
    assert rlbwt.rank(4, B) == 3
    assert rlbwt.rank(0, A) == 0
    assert rlbwt.rank(7, END) == 1
    assert rlbwt.rank(7, C) == 0
    with pytest.raises(RangeError):
        rlbwt.rank(8, A)


def test_select(rlbwt):
    """select finds the k-th occurrence or returns -1."""
    assert rlbwt.select(2, B) == 3
    assert rlbwt.select(2, A) == 6
    assert rlbwt.select(5, B) == -1
    assert rlbwt.select(1, C) == -1


def test_lex_count_and_search(rlbwt):
    """Buckets are $:1, a:2-3, b:4-7."""
    assert rlbwt.lex_count(B) == 3
    assert rlbwt.lex_count(END) == 0
    assert rlbwt.lex_count(A) == 1
    assert rlbwt.lex_search(4) == B
    assert rlbwt.lex_search(1) == END
    assert rlbwt.lex_search(2) == A
    assert rlbwt.lex_count(B) + rlbwt.rank(7, B) == 7


def test_run_access_and_index(rlbwt):
    """Runs are addressed by index and by BWT position."""
    assert rlbwt.run_access(2) == (Run(B, 4), 2)
    assert rlbwt.run_access(1) == (Run(A, 1), 1)
    assert rlbwt.run_access(4) == (Run(END, 1), 7)
    assert rlbwt.run_index(4) == 2
    assert rlbwt.run_index(1) == 1
    assert rlbwt.run_index(7) == 4
    with pytest.raises(RangeError):
        rlbwt.run_access(5)


def test_lf_and_inverse(rlbwt):
    """LF follows SA = 7,6,3,5,2,4,1 and is inverted by lf_inverse."""
    assert rlbwt.lf(5) == 7
    assert rlbwt.lf(7) == 1
    assert rlbwt.lf(1) == 2
    assert rlbwt.lf_inverse(7) == 5
    assert rlbwt.lf_inverse(1) == 7
    for t in range(1, 8):
        assert rlbwt.lf_inverse(rlbwt.lf(t)) == t


def test_lf_walk_spells_text_backwards(rlbwt):
    """Following LF from the sentinel row reads T right to left."""
    row, out = 1, []
    for _ in range(6):
        out.append(rlbwt.char_at(row))
        row = rlbwt.lf(row)
    assert bytes(reversed(out)) == b"bbabba"


def test_insert_char_cases(rlbwt):
    """Growing a run, opening a new run and splitting a run."""
    edit = rlbwt.insert_char(B, 3)
    assert edit.kind is RunEditKind.GREW_INSIDE
    assert list(rlbwt.runs()) == [Run(A, 1), Run(B, 5), Run(A, 1), Run(END, 1)]

    rlbwt = RlbwtIndex.from_bwt(BWT)
    edit = rlbwt.insert_char(C, 6)
    assert edit.kind is RunEditKind.NEW
    assert list(rlbwt.runs()) == [Run(A, 1), Run(B, 4), Run(C, 1), Run(A, 1), Run(END, 1)]
    rlbwt.check_invariants()

    rlbwt = RlbwtIndex.from_bwt(BWT)
    edit = rlbwt.insert_char(A, 4)
    assert edit == RunEdit(RunEditKind.SPLIT, 3)
    assert rlbwt.decode() == b"abbabba\x00"
    rlbwt.check_invariants()


def test_insert_into_empty():
    """The first character opens the first run."""
    rlbwt = RlbwtIndex()
    rlbwt.insert_char(END, 1)
    assert list(rlbwt.runs()) == [Run(END, 1)]


def test_delete_char_cases():
    """Shrinking, removing, and removing with a merge of the neighbours."""
    rlbwt = RlbwtIndex.from_bwt(BWT)
    assert rlbwt.delete_char(3).kind is RunEditKind.SHRANK_INSIDE
    assert list(rlbwt.runs()) == [Run(A, 1), Run(B, 3), Run(A, 1), Run(END, 1)]

    rlbwt = RlbwtIndex.from_bwt(b"aba")
    edit = rlbwt.delete_char(2)
    assert edit.kind is RunEditKind.REMOVED_MERGED
    assert list(rlbwt.runs()) == [Run(A, 2)]

    rlbwt = RlbwtIndex.from_bwt(b"\x00")
    assert rlbwt.delete_char(1).kind is RunEditKind.REMOVED
    assert rlbwt.r == 0
    assert rlbwt.n == 0


def test_split_and_merge(rlbwt):
    """split_run leaves equal adjacent heads until merge_runs joins them."""
    rlbwt.split_run(2, 1)
    assert list(rlbwt.runs())[1:3] == [Run(B, 1), Run(B, 3)]
    with pytest.raises(InvariantViolation, match="share head"):
        rlbwt.check_invariants()
    rlbwt.merge_runs(2)
    assert list(rlbwt.runs())[1] == Run(B, 4)
    rlbwt.check_invariants()

    with pytest.raises(PreconditionError, match="different heads"):
        rlbwt.merge_runs(1)
    with pytest.raises(RangeError, match="cannot split"):
        rlbwt.split_run(1, 1)


def test_encode_runs():
    """Run-length encoding of a byte string."""
    assert encode_runs(b"aabccc") == [Run(A, 2), Run(B, 1), Run(C, 3)]
    assert encode_runs(b"") == []


@settings(max_examples=50, deadline=None)
@given(
    st.binary(min_size=1, max_size=60).map(lambda b: bytes(x % 4 for x in b)),
    st.lists(st.tuples(st.booleans(), st.integers(0, 10**6), st.integers(0, 3)), max_size=80),
)
def test_rlbwt_matches_flat_string(data, ops):
    """Random char inserts/deletes agree with a flat byte model."""
    rlbwt = RlbwtIndex.from_bwt(data, fanout=4)
    model = bytearray(data)
    for insert, where, ch in ops:
        if insert or not model:
            i = where % (len(model) + 1) + 1
            rlbwt.insert_char(ch, i)
            model.insert(i - 1, ch)
        else:
            i = where % len(model) + 1
            rlbwt.delete_char(i)
            del model[i - 1]
        assert rlbwt.decode() == bytes(model)
        if model:
            rlbwt.check_invariants()
            prefix = where % (len(model) + 1)
            assert rlbwt.rank(prefix, ch) == model[:prefix].count(ch)
            assert rlbwt.lex_count(ch) == sum(1 for x in model if x < ch)


if __name__ == "__main__":
    pytest.main([__file__, "-v", "-s"])
