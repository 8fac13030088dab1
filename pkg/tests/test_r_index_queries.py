"""Tests for count, locate, phi and the ISA helpers of the dynamic r-index."""

import random

# Add src to path for imports
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.index import DynamicRIndex, Run
from src.oracle import build_snapshot, naive_count, naive_locate
from src.utils.errors import ArgumentError, PreconditionError, RangeError

TEXT = b"bbabba"
SA = [7, 6, 3, 5, 2, 4, 1]
ISA = [7, 5, 3, 6, 4, 2, 1]


@pytest.fixture(params=["updates", "snapshot"])
def index(request):
    """Index of bbabba$, built by block insertion or from the oracle."""
    if request.param == "updates":
        return DynamicRIndex.from_text(TEXT, block_size=2, fanout=4, debug_trace=False)
    return DynamicRIndex.from_snapshot(build_snapshot(TEXT + b"\x00"), fanout=4)


def test_built_structures(index):
    """Runs and samples of bbabba$."""
    assert index.n == 7
    assert index.r == 4
    assert index.rlbwt.decode() == b"abbbba\x00"
    assert index.runs()[1] == Run(ord("b"), 4)
    assert index.sampled_values() == ([7, 6, 4, 1], [7, 2, 4, 1])
    index.check_invariants()


def test_text_extraction(index):
    """The text decodes back, sentinel included."""
    assert index.text() == TEXT + b"\x00"
    assert index.extract() == index.text()


def test_count(index):
    """count matches a naive scan."""
    assert index.count(b"ab") == 1
    assert index.count(b"b") == 4
    assert index.count(b"zz") == 0
    assert index.count(b"\x00") == 0
    with pytest.raises(ArgumentError, match="empty"):
        index.count(b"")


def test_locate(index):
    """locate returns the exact occurrence set."""
    assert index.locate(b"ab") == {3}
    assert index.locate(b"bb") == {1, 4}
    assert index.locate(b"$x") == set()
    assert index.locate(b"bbabba") == {1}


def test_toehold(index):
    """The toehold equals SA[sp] of the final interval."""
    assert index.toehold_sa_sp(b"ab") == 3
    assert index.toehold_sa_sp(b"\x00") == 7
    assert index.toehold_sa_sp(b"bbabba") == 1
    with pytest.raises(PreconditionError, match="does not occur"):
        index.toehold_sa_sp(b"aa")


def test_sa_interval(index):
    """Backward search produces the SA interval and its first value."""
    interval = index.sa_interval(b"b")
    assert (interval.sp, interval.ep, interval.sa_sp) == (4, 7, 5)
    assert interval.size == 4
    assert index.sa_interval(b"aa").empty


def test_phi_and_phi_inverse(index):
    """phi and its inverse walk the suffix array one row at a time."""
    assert index.phi_inverse(5) == 2
    assert index.phi_inverse(7) == 6
    assert index.phi(2) == 5
    assert index.phi(6) == 7
    assert index.phi(index.phi_inverse(5)) == 5

    value, walked = SA[0], [SA[0]]
    for _ in range(6):
        value = index.phi_inverse(value)
        walked.append(value)
    assert walked == SA
    with pytest.raises(RangeError):
        index.phi(8)


def test_isa_helpers(index):
    """ISA[i], ISA[i-1] and T[i-1] from the samples and LF."""
    assert index.comp_isa2(6) == 2
    assert index.comp_isa1(6) == 4
    assert index.comp_t(6) == ord("b")
    assert index.comp_isa1(1) == ISA[-1]
    assert index.comp_t(1) == 0
    for i in range(1, 8):
        assert index.comp_isa2(i) == ISA[i - 1]
    assert index.isa_walk(6) == 0
    with pytest.raises(RangeError):
        index.comp_isa2(0)


def test_stats(index):
    """sigma excludes the sentinel."""
    assert index.stats() == {"sigma": 2, "n": 7, "r": 4, "n_over_r": 1.75}


def test_sentinel_only_index():
    """The empty text indexes as the lone sentinel."""
    index = DynamicRIndex.from_text(b"")
    assert index.n == 1
    assert index.r == 1
    assert index.text() == b"\x00"
    assert index.count(b"a") == 0
    assert index.locate(b"a") == set()


def test_from_text_rejects_sentinel():
    """Input bytes may not contain 0x00."""
    with pytest.raises(ArgumentError, match="sentinel"):
        DynamicRIndex.from_text(b"ab\x00c")
    with pytest.raises(ArgumentError, match="block size"):
        DynamicRIndex.from_text(b"abc", block_size=0)


@pytest.mark.parametrize("seed", range(8))
def test_queries_match_naive_scan(seed):
    """Random texts and patterns, present and absent."""
    rng = random.Random(seed)
    alphabet = b"acgt"[: rng.choice([2, 4])]
    body = bytes(rng.choice(alphabet) for _ in range(rng.randint(20, 400)))
    text = body + b"\x00"
    index = DynamicRIndex.from_text(body, block_size=rng.choice([1, 7, 64]), debug_trace=False)
    for _ in range(60):
        if rng.random() < 0.7:
            start = rng.randrange(len(body))
            pattern = body[start : start + rng.randint(1, 12)]
        else:
            pattern = bytes(rng.choice(b"acgtx") for _ in range(rng.randint(1, 6)))
        assert index.count(pattern) == naive_count(text, pattern)
        expected = naive_locate(text, pattern)
        assert index.locate(pattern) == expected
        if expected:
            assert index.toehold_sa_sp(pattern) in expected
            assert list(index.iter_locate(pattern))[0] == index.toehold_sa_sp(pattern)


if __name__ == "__main__":
    pytest.main([__file__, "-v", "-s"])
