"""Dynamic partial-sum list over non-negative integers (1-based positions)."""

from collections.abc import Iterable, Iterator

from src.structures.block_tree import DEFAULT_FANOUT, BlockTree
from src.utils.errors import RangeError


class PartialSumList:
    """Sequence of non-negative integers with prefix sums and search.

    Supports sum, search, insert, delete, merge, divide and add, each in
    O(log N) node visits.
    """

    def __init__(self, values: Iterable[int] = (), fanout: int = DEFAULT_FANOUT):
        self._tree = BlockTree(fanout=fanout, weighted=True)
        for value in values:
            self.insert(len(self) + 1, value)

    def __len__(self) -> int:
        return len(self._tree)

    def __iter__(self) -> Iterator[int]:
        return iter(self._tree)

    def __repr__(self) -> str:
        return f"PartialSumList({list(self)})"

    @property
    def tree(self) -> BlockTree:
        return self._tree

    @property
    def total(self) -> int:
        return self._tree.total

    def _check_position(self, i: int, upper: int) -> None:
        if not 1 <= i <= upper:
            raise RangeError(f"position {i} outside [1, {upper}]")

    def get(self, i: int) -> int:
        self._check_position(i, len(self))
        return int(self._tree.get(i - 1))

    def sum(self, i: int) -> int:
        """Return the sum of the first i elements; sum(0) is 0."""
        if not 0 <= i <= len(self):
            raise RangeError(f"prefix length {i} outside [0, {len(self)}]")
        return self._tree.prefix_total(i)

    def search(self, t: int) -> int:
        """Return the smallest i >= 1 with sum(i) >= t, or len + 1 if none."""
        return self._tree.search_total(t)

    def insert(self, i: int, value: int) -> None:
        self._check_position(i, len(self) + 1)
        if value < 0:
            raise RangeError(f"partial-sum elements must be non-negative, got {value}")
        self._tree.insert(i - 1, value)

    def delete(self, i: int) -> int:
        self._check_position(i, len(self))
        return int(self._tree.pop(i - 1))

    def merge(self, i: int) -> None:
        """Replace elements i and i+1 with their sum."""
        self._check_position(i, len(self) - 1)
        following = self._tree.pop(i)
        self.add(i, following)

    def divide(self, i: int, t: int) -> None:
        """Replace element i with t followed by (element - t)."""
        self._check_position(i, len(self))
        value = self._tree.get(i - 1)
        if not 0 <= t <= value:
            raise RangeError(f"cannot divide element {value} at {i} by {t}")
        self._tree.replace(i - 1, t)
        self._tree.insert(i, value - t)

    def add(self, i: int, delta: int) -> None:
        """Add delta to element i (the result must stay non-negative)."""
        self._check_position(i, len(self))
        value = self._tree.get(i - 1) + delta
        if value < 0:
            raise RangeError(f"element {i} would become negative ({value})")
        self._tree.replace(i - 1, value)
