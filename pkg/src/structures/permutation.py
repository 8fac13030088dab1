"""Dynamic permutation with access, inverse access and shifting updates.

The permutation is stored twice as B-trees over shared entry handles: once
in position order and once in value order. A handle's value is its index in
the value-order tree, so inserting or removing an entry implicitly shifts
every larger value by one.
"""

from collections.abc import Iterable, Iterator

from src.structures.block_tree import DEFAULT_FANOUT, BlockTree, _Node
from src.utils.errors import RangeError


class _Entry:
    __slots__ = ("by_position", "by_value")

    def __init__(self) -> None:
        self.by_position: _Node | None = None
        self.by_value: _Node | None = None


class DynPermutation:
    """Permutation of {1..r} supporting increment-insert and decrement-delete."""

    def __init__(self, values: Iterable[int] = (), fanout: int = DEFAULT_FANOUT):
        self._by_position = BlockTree(fanout=fanout, handle_attr="by_position")
        self._by_value = BlockTree(fanout=fanout, handle_attr="by_value")
        values = list(values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise RangeError(f"values do not form a permutation of 1..{len(values)}")
        entries = [_Entry() for _ in values]
        for entry in entries:
            self._by_position.append(entry)
        for position in sorted(range(len(values)), key=values.__getitem__):
            self._by_value.append(entries[position])

    def __len__(self) -> int:
        return len(self._by_position)

    def __iter__(self) -> Iterator[int]:
        for entry in self._by_position:
            yield self._by_value.index_of(entry) + 1

    def __repr__(self) -> str:
        return f"DynPermutation({list(self)})"

    @property
    def visits(self) -> int:
        return self._by_position.visits + self._by_value.visits

    def reset_visits(self) -> None:
        self._by_position.reset_visits()
        self._by_value.reset_visits()

    def _check(self, i: int, upper: int) -> None:
        if not 1 <= i <= upper:
            raise RangeError(f"position {i} outside [1, {upper}]")

    def access(self, i: int) -> int:
        self._check(i, len(self))
        return self._by_value.index_of(self._by_position.get(i - 1)) + 1

    def inv_access(self, value: int) -> int:
        self._check(value, len(self))
        return self._by_position.index_of(self._by_value.get(value - 1)) + 1

    def increment_insert(self, i: int, value: int) -> None:
        """Shift every value >= value up by one, then place value at position i."""
        self._check(i, len(self) + 1)
        self._check(value, len(self) + 1)
        entry = _Entry()
        self._by_position.insert(i - 1, entry)
        self._by_value.insert(value - 1, entry)

    def decrement_delete(self, i: int) -> int:
        """Remove position i and shift every larger value down by one."""
        self._check(i, len(self))
        entry = self._by_position.pop(i - 1)
        value = self._by_value.index_of(entry)
        self._by_value.pop(value)
        return value + 1
