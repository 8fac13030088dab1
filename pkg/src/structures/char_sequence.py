"""Dynamic byte sequence with rank and select (1-based positions)."""

from collections.abc import Iterable, Iterator

from src.structures.block_tree import DEFAULT_FANOUT, BlockTree
from src.utils.errors import RangeError

ALPHABET_SIZE = 256


class CharSequence:
    """Sequence of byte symbols answering access, rank and select.

    Each tree node carries a symbol-count table sized to the symbols seen
    beneath it, so rank and select descend one path.
    """

    def __init__(self, symbols: Iterable[int] = (), fanout: int = DEFAULT_FANOUT):
        self._tree = BlockTree(fanout=fanout, symbols=True)
        for symbol in symbols:
            self.insert(len(self) + 1, symbol)

    def __len__(self) -> int:
        return len(self._tree)

    def __iter__(self) -> Iterator[int]:
        return iter(self._tree)

    def __repr__(self) -> str:
        return f"CharSequence({bytes(self)!r})"

    def __bytes__(self) -> bytes:
        return bytes(self._tree)

    @property
    def tree(self) -> BlockTree:
        return self._tree

    def access(self, i: int) -> int:
        if not 1 <= i <= len(self):
            raise RangeError(f"position {i} outside [1, {len(self)}]")
        return int(self._tree.get(i - 1))

    def rank(self, i: int, symbol: int) -> int:
        """Occurrences of symbol in the first i positions."""
        if not 0 <= i <= len(self):
            raise RangeError(f"prefix length {i} outside [0, {len(self)}]")
        return self._tree.prefix_count(i, symbol)

    def select(self, k: int, symbol: int) -> int:
        """Position of the k-th occurrence of symbol, or -1 if absent."""
        position = self._tree.select_symbol(k, symbol)
        return position + 1 if position >= 0 else -1

    def count(self, symbol: int) -> int:
        return self._tree.symbol_count(symbol)

    def insert(self, i: int, symbol: int) -> None:
        if not 1 <= i <= len(self) + 1:
            raise RangeError(f"position {i} outside [1, {len(self) + 1}]")
        if not 0 <= symbol < ALPHABET_SIZE:
            raise RangeError(f"symbol {symbol} is not a byte")
        self._tree.insert(i - 1, symbol)

    def delete(self, i: int) -> int:
        if not 1 <= i <= len(self):
            raise RangeError(f"position {i} outside [1, {len(self)}]")
        return int(self._tree.pop(i - 1))
