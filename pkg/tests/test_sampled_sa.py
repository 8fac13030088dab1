"""Tests for the dynamic sampled suffix array."""

import math

# Add src to path for imports
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.index.sampled_sa import SampledSa
from src.utils.errors import PreconditionError, RangeError

SA_S = [7, 6, 4, 1]  # run-start samples of bbabba$
SA_E = [7, 2, 4, 1]  # run-end samples of bbabba$


def test_access():
    """Values come back in run order."""
    assert SampledSa(SA_E, universe=7).access(3) == 4
    assert SampledSa(SA_S, universe=7).access(1) == 7
    assert SampledSa([5], universe=5).access(1) == 5


def test_order_and_count():
    """order names the run of the k-th smallest value; count is a rank by value."""
    sa = SampledSa(SA_E, universe=7)
    assert sa.order(1) == 4
    assert sa.order(4) == 1
    assert SampledSa([5], universe=5).order(1) == 1
    assert sa.count(5) == 3
    assert sa.count(1) == 0
    assert sa.count(100) == 4


def test_insert_and_delete():
    """Insert at a run index shifts later runs; delete undoes it."""
    sa = SampledSa(SA_S, universe=7)
    sa.insert(3, 5)
    assert sa.values() == [7, 6, 5, 4, 1]
    assert sa.delete(3) == 5
    assert sa.values() == [7, 6, 4, 1]

    empty = SampledSa([], universe=1)
    empty.insert(1, 1)
    assert empty.values() == [1]


def test_insert_rejects_duplicates_and_range():
    """Values are distinct and bounded by the universe."""
    sa = SampledSa(SA_S, universe=7)
    with pytest.raises(PreconditionError, match="already sampled"):
        sa.insert(2, 4)
    with pytest.raises(RangeError):
        sa.insert(1, 8)
    with pytest.raises(RangeError):
        sa.insert(6, 3)
    with pytest.raises(PreconditionError, match="distinct"):
        SampledSa([3, 3], universe=5)


def test_increment_and_decrement():
    """Shifting every value above t costs one gap update."""
    sa = SampledSa(SA_S, universe=7)
    sa.increment(5, 1)
    assert sa.values() == [8, 7, 4, 1]
    assert sa.universe == 8
    sa.increment(100, 5)
    assert sa.values() == [8, 7, 4, 1]
    sa.decrement(105, 5)
    sa.decrement(5, 1)
    assert sa.values() == SA_S
    assert sa.universe == 7


def test_decrement_refuses_reordering():
    """A decrement that would collide values is a precondition error."""
    sa = SampledSa(SA_S, universe=7)
    with pytest.raises(PreconditionError, match="reorder"):
        sa.decrement(4, 2)


def test_increment_touches_few_nodes():
    """increment visits O(log r) nodes however many values move."""
    r = 4096
    sa = SampledSa(range(1, 2 * r, 2), universe=2 * r, fanout=8)
    sa.reset_visits()
    sa.increment(10, 3)
    assert sa.node_visits() <= 8 * math.log2(r)
    assert sa.access(r) == 2 * r - 1 + 3


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(0, 3), st.integers(0, 10**6), st.integers(1, 200)), max_size=120
    )
)
def test_matches_naive_model(ops):
    """access, order and count agree with a flat list after random updates."""
    universe = 400
    sa = SampledSa([], universe=universe, fanout=4)
    model: list[int] = []
    for op, where, value in ops:
        if op == 0 or not model:
            if value in model or value > universe:
                continue
            i = where % (len(model) + 1) + 1
            sa.insert(i, value)
            model.insert(i - 1, value)
        elif op == 1:
            i = where % len(model) + 1
            assert sa.delete(i) == model.pop(i - 1)
        elif op == 2:
            t, k = value, where % 5
            sa.increment(t, k)
            model = [v + k if v > t else v for v in model]
            universe += k
        else:
            t = value
            above = [v for v in model if v > t]
            below = [v for v in model if v <= t]
            room = min(above) - max(below, default=0) - 1 if above else universe - t
            k = max(0, min(where % 5, room))
            sa.decrement(t, k)
            model = [v - k if v > t else v for v in model]
            universe -= k
        assert sa.values() == model
        assert sa.universe == universe
        ordered = sorted(model)
        for rank, expected in enumerate(ordered, start=1):
            assert sa.access(sa.order(rank)) == expected
        assert sa.count(value) == sum(1 for v in model if v < value)


if __name__ == "__main__":
    pytest.main([__file__, "-v", "-s"])
