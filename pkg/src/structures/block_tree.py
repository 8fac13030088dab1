"""Order-maintained B-tree with per-subtree aggregates.

All three dynamic sequences (partial sums, byte sequences, permutations)
are leaf lists of a fixed-fanout tree. Every node keeps the number of items
below it and, depending on the mode, the sum of integer items or per-symbol
occurrence counts, so positional queries descend a single root-to-leaf path.

Positions are 0-based here; the public sequence types translate to 1-based.
"""

import logging
from collections.abc import Iterator
from typing import Any

from src.utils.errors import RangeError

logger = logging.getLogger(__name__)

DEFAULT_FANOUT = 32  # maximum items per leaf / children per internal node
MIN_FANOUT = 4


class _Node:
    __slots__ = ("parent", "leaf", "items", "children", "size", "total", "counts")

    def __init__(self, leaf: bool):
        self.parent: _Node | None = None
        self.leaf = leaf
        self.items: list[Any] = []
        self.children: list[_Node] = []
        self.size = 0
        self.total = 0
        self.counts: dict[int, int] = {}

    def width(self) -> int:
        return len(self.items) if self.leaf else len(self.children)


class BlockTree:
    """B-tree keeping a sequence of items in order.

    Args:
        fanout: Node capacity; nodes hold between fanout // 2 and fanout entries
        weighted: Items are non-negative ints and nodes track their sum
        symbols: Items are byte symbols and nodes track per-symbol counts
        handle_attr: If set, items are objects whose attribute of this name
            always points at the leaf holding them (enables index_of)
    """

    def __init__(
        self,
        fanout: int = DEFAULT_FANOUT,
        weighted: bool = False,
        symbols: bool = False,
        handle_attr: str | None = None,
    ):
        if fanout < MIN_FANOUT:
            raise ValueError(f"fanout must be at least {MIN_FANOUT}, got {fanout}")
        self.fanout = fanout
        self.min_width = fanout // 2
        self.weighted = weighted
        self.symbols = symbols
        self.handle_attr = handle_attr
        self.root = _Node(leaf=True)
        self.visits = 0

    # ------------------------------------------------------------------ basics

    def __len__(self) -> int:
        return self.root.size

    def __iter__(self) -> Iterator[Any]:
        yield from self._iter_node(self.root)

    def _iter_node(self, node: _Node) -> Iterator[Any]:
        if node.leaf:
            yield from node.items
        else:
            for child in node.children:
                yield from self._iter_node(child)

    @property
    def total(self) -> int:
        return self.root.total

    def symbol_count(self, symbol: int) -> int:
        return self.root.counts.get(symbol, 0)

    def reset_visits(self) -> None:
        self.visits = 0

    def _check_index(self, i: int, upper: int) -> None:
        if not 0 <= i < upper:
            raise RangeError(f"position {i} outside [0, {upper})")

    # ------------------------------------------------------------- navigation

    def _locate(self, i: int, inserting: bool = False) -> tuple[_Node, int]:
        node = self.root
        self.visits += 1
        while not node.leaf:
            for child in node.children:
                if i < child.size or (inserting and i == child.size):
                    node = child
                    break
                i -= child.size
            else:
                node = node.children[-1]
                i += node.size
            self.visits += 1
        return node, i

    def _bubble(
        self, node: _Node | None, size: int, weight: int, symbol: int | None, delta: int = 0
    ) -> None:
        while node is not None:
            self.visits += 1
            node.size += size
            node.total += weight
            if symbol is not None:
                count = node.counts.get(symbol, 0) + delta
                if count:
                    node.counts[symbol] = count
                else:
                    node.counts.pop(symbol, None)
            node = node.parent

    def _recompute(self, node: _Node) -> None:
        node.counts = {}
        if node.leaf:
            node.size = len(node.items)
            node.total = sum(node.items) if self.weighted else 0
            if self.symbols:
                for symbol in node.items:
                    node.counts[symbol] = node.counts.get(symbol, 0) + 1
            if self.handle_attr:
                for item in node.items:
                    setattr(item, self.handle_attr, node)
        else:
            node.size = sum(child.size for child in node.children)
            node.total = sum(child.total for child in node.children)
            for child in node.children:
                child.parent = node
                for symbol, count in child.counts.items():
                    node.counts[symbol] = node.counts.get(symbol, 0) + count

    # ---------------------------------------------------------------- updates

    def get(self, i: int) -> Any:
        self._check_index(i, len(self))
        leaf, offset = self._locate(i)
        return leaf.items[offset]

    def insert(self, i: int, item: Any) -> None:
        self._check_index(i, len(self) + 1)
        leaf, offset = self._locate(i, inserting=True)
        leaf.items.insert(offset, item)
        if self.handle_attr:
            setattr(item, self.handle_attr, leaf)
        self._bubble(
            leaf, 1, item if self.weighted else 0, item if self.symbols else None, 1
        )
        if leaf.width() > self.fanout:
            self._split(leaf)

    def append(self, item: Any) -> None:
        self.insert(len(self), item)

    def pop(self, i: int) -> Any:
        self._check_index(i, len(self))
        leaf, offset = self._locate(i)
        item = leaf.items.pop(offset)
        self._bubble(
            leaf, -1, -item if self.weighted else 0, item if self.symbols else None, -1
        )
        self._rebalance(leaf)
        return item

    def replace(self, i: int, item: Any) -> Any:
        self._check_index(i, len(self))
        leaf, offset = self._locate(i)
        old = leaf.items[offset]
        leaf.items[offset] = item
        if self.handle_attr:
            setattr(item, self.handle_attr, leaf)
        if self.weighted:
            self._bubble(leaf, 0, item - old, None)
        if self.symbols and item != old:
            self._bubble(leaf, 0, 0, old, -1)
            self._bubble(leaf, 0, 0, item, 1)
        return old

    def _split(self, node: _Node) -> None:
        while node.width() > self.fanout:
            sibling = _Node(leaf=node.leaf)
            half = node.width() // 2
            if node.leaf:
                sibling.items = node.items[half:]
                node.items = node.items[:half]
            else:
                sibling.children = node.children[half:]
                node.children = node.children[:half]
            self._recompute(node)
            self._recompute(sibling)

            parent = node.parent
            if parent is None:
                parent = _Node(leaf=False)
                parent.children = [node, sibling]
                self._recompute(parent)
                self.root = parent
                return
            parent.children.insert(parent.children.index(node) + 1, sibling)
            sibling.parent = parent
            self.visits += 1
            node = parent

    def _rebalance(self, node: _Node) -> None:
        while True:
            parent = node.parent
            if parent is None:
                while not self.root.leaf and len(self.root.children) == 1:
                    self.root = self.root.children[0]
                    self.root.parent = None
                return
            if node.width() >= self.min_width:
                return

            position = parent.children.index(node)
            if position > 0:
                left, right = parent.children[position - 1], node
            else:
                left, right = node, parent.children[position + 1]
            if left.leaf:
                left.items.extend(right.items)
            else:
                left.children.extend(right.children)
            parent.children.remove(right)
            self._recompute(left)
            self.visits += 1
            if left.width() > self.fanout:
                self._split(left)
            node = parent

    # ---------------------------------------------------------------- queries

    def prefix_total(self, i: int) -> int:
        """Sum of the first i items (weighted trees)."""
        self._check_index(i, len(self) + 1)
        node = self.root
        acc = 0
        self.visits += 1
        while not node.leaf:
            for child in node.children:
                if i <= child.size:
                    node = child
                    break
                acc += child.total
                i -= child.size
            self.visits += 1
        return acc + sum(node.items[:i])

    def search_total(self, t: int) -> int:
        """Smallest k >= 1 with prefix_total(k) >= t, or len + 1 if none."""
        if t > self.root.total:
            return len(self) + 1
        if t <= 0:
            return 1
        node = self.root
        before = 0
        self.visits += 1
        while not node.leaf:
            for child in node.children:
                if child.total >= t:
                    node = child
                    break
                t -= child.total
                before += child.size
            self.visits += 1
        for k, value in enumerate(node.items):
            t -= value
            if t <= 0:
                return before + k + 1
        raise AssertionError("search_total descended into a leaf without enough weight")

    def prefix_count(self, i: int, symbol: int) -> int:
        """Occurrences of symbol among the first i items (symbol trees)."""
        self._check_index(i, len(self) + 1)
        node = self.root
        acc = 0
        self.visits += 1
        while not node.leaf:
            for child in node.children:
                if i <= child.size:
                    node = child
                    break
                acc += child.counts.get(symbol, 0)
                i -= child.size
            self.visits += 1
        return acc + node.items[:i].count(symbol)

    def select_symbol(self, k: int, symbol: int) -> int:
        """0-based position of the k-th occurrence of symbol, or -1."""
        if k < 1 or self.root.counts.get(symbol, 0) < k:
            return -1
        node = self.root
        before = 0
        self.visits += 1
        while not node.leaf:
            for child in node.children:
                count = child.counts.get(symbol, 0)
                if count >= k:
                    node = child
                    break
                k -= count
                before += child.size
            self.visits += 1
        for offset, item in enumerate(node.items):
            if item == symbol:
                k -= 1
                if k == 0:
                    return before + offset
        raise AssertionError("select_symbol descended into a leaf without enough symbols")

    def index_of(self, handle: Any) -> int:
        """0-based position of a handle item (handle trees)."""
        if not self.handle_attr:
            raise TypeError("index_of requires a tree built with handle_attr")
        node: _Node = getattr(handle, self.handle_attr)
        position = next(k for k, item in enumerate(node.items) if item is handle)
        self.visits += 1
        while node.parent is not None:
            for sibling in node.parent.children:
                if sibling is node:
                    break
                position += sibling.size
            node = node.parent
            self.visits += 1
        return position
