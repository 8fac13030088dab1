"""Dynamic sequence primitives backed by a shared B-tree."""

from .block_tree import BlockTree
from .char_sequence import CharSequence
from .permutation import DynPermutation
from .psum import PartialSumList

__all__ = ["BlockTree", "CharSequence", "DynPermutation", "PartialSumList"]
