"""Dynamic sampled suffix array (one value per BWT run).

Values are stored as a sorted gap sequence plus a permutation from sorted
order to run index, so shifting every value above a threshold costs a single
gap update instead of touching each value.
"""

import logging
from collections.abc import Iterable

from src.structures.block_tree import DEFAULT_FANOUT
from src.structures.permutation import DynPermutation
from src.structures.psum import PartialSumList
from src.utils.errors import PreconditionError, RangeError

logger = logging.getLogger(__name__)


class SampledSa:
    """Distinct positive integers indexed by run, with order and count queries.

    Args:
        values: Initial values, in run order
        universe: Largest value that may be stored (the text length)
        fanout: B-tree fanout of the backing sequences
    """

    def __init__(
        self, values: Iterable[int] = (), universe: int = 0, fanout: int = DEFAULT_FANOUT
    ):
        values = list(values)
        order = sorted(range(len(values)), key=values.__getitem__)
        gaps = []
        previous = 0
        for run in order:
            value = values[run]
            if value <= previous:
                raise PreconditionError(f"sample values must be distinct and positive: {value}")
            gaps.append(value - previous)
            previous = value
        if universe < previous:
            raise RangeError(f"universe {universe} is smaller than the largest value {previous}")
        gaps.append(universe - previous)
        self.gaps = PartialSumList(gaps, fanout=fanout)
        self.pi = DynPermutation([run + 1 for run in order], fanout=fanout)

    def __len__(self) -> int:
        return len(self.pi)

    def __repr__(self) -> str:
        return f"SampledSa({self.values()}, universe={self.universe})"

    @property
    def universe(self) -> int:
        return self.gaps.total

    def values(self) -> list[int]:
        return [self.access(i) for i in range(1, len(self) + 1)]

    def node_visits(self) -> int:
        return self.gaps.tree.visits + self.pi.visits

    def reset_visits(self) -> None:
        self.gaps.tree.reset_visits()
        self.pi.reset_visits()

    def access(self, i: int) -> int:
        """Return the value sampled for run i."""
        return self.gaps.sum(self.pi.inv_access(i))

    def order(self, k: int) -> int:
        """Return the run index holding the k-th smallest value."""
        return self.pi.access(k)

    def count(self, t: int) -> int:
        """Return how many stored values are smaller than t."""
        return min(self.gaps.search(t) - 1, len(self))

    def insert(self, i: int, t: int) -> None:
        """Insert value t as run i, shifting later run indices up."""
        r = len(self)
        if not 1 <= i <= r + 1:
            raise RangeError(f"run index {i} outside [1, {r + 1}]")
        if not 1 <= t <= self.universe:
            raise RangeError(f"value {t} outside [1, {self.universe}]")
        u = self.count(t)
        if u < r and self.gaps.sum(u + 1) == t:
            raise PreconditionError(f"value {t} is already sampled")
        self.gaps.divide(u + 1, t - self.gaps.sum(u))
        self.pi.increment_insert(u + 1, i)

    def delete(self, i: int) -> int:
        """Remove the value of run i and return it."""
        if not 1 <= i <= len(self):
            raise RangeError(f"run index {i} outside [1, {len(self)}]")
        k = self.pi.inv_access(i)
        value = self.gaps.sum(k)
        self.gaps.merge(k)
        self.pi.decrement_delete(k)
        return value

    def replace(self, i: int, t: int) -> None:
        self.delete(i)
        self.insert(i, t)

    def increment(self, t: int, k: int) -> None:
        """Add k to every value larger than t; the universe grows by k."""
        if k < 0:
            raise RangeError(f"increment must be non-negative, got {k}")
        v = self.count(t + 1)
        self.gaps.add(v + 1, k)

    def decrement(self, t: int, k: int) -> None:
        """Subtract k from every value larger than t; the universe shrinks by k.

        Raises:
            PreconditionError: If the shift would reorder or collide values
        """
        if k < 0:
            raise RangeError(f"decrement must be non-negative, got {k}")
        v = self.count(t + 1)
        gap = self.gaps.get(v + 1)
        needed = k + 1 if v < len(self) else k
        if gap < needed:
            raise PreconditionError(
                f"decrement of values above {t} by {k} would reorder samples (gap {gap})"
            )
        self.gaps.add(v + 1, -k)
