"""Value types shared by the index, the oracle and the CLI."""

from dataclasses import dataclass
from enum import Enum

from src.utils.errors import ArgumentError


class EditKind(Enum):
    INSERT_CHAR = "insert_char"
    INSERT_STRING = "insert_string"
    DELETE_SUBSTRING = "delete_substring"


@dataclass(frozen=True)
class EditOp:
    """One text mutation at 1-based position i.

    Insertions carry the inserted bytes in ``text``; deletions carry the
    number of removed bytes in ``length``.
    """

    kind: EditKind
    i: int
    text: bytes = b""
    length: int = 0

    @classmethod
    def insert_char(cls, i: int, ch: int | bytes) -> "EditOp":
        if isinstance(ch, int):
            ch = bytes([ch])
        if len(ch) != 1:
            raise ArgumentError(f"insert_char takes exactly one byte, got {len(ch)}")
        return cls(EditKind.INSERT_CHAR, i, text=ch)

    @classmethod
    def insert_string(cls, i: int, pattern: bytes) -> "EditOp":
        return cls(EditKind.INSERT_STRING, i, text=bytes(pattern))

    @classmethod
    def delete(cls, i: int, length: int) -> "EditOp":
        return cls(EditKind.DELETE_SUBSTRING, i, length=length)

    @property
    def m(self) -> int:
        """Number of bytes inserted or removed."""
        return self.length if self.kind is EditKind.DELETE_SUBSTRING else len(self.text)

    @property
    def is_insertion(self) -> bool:
        return self.kind is not EditKind.DELETE_SUBSTRING

    def validate(self, n: int) -> None:
        """Check the op against a text of length n (sentinel included).

        Raises:
            ArgumentError: If the op would touch the sentinel or is empty
        """
        if self.is_insertion:
            if not self.text:
                raise ArgumentError("cannot insert an empty string")
            if 0 in self.text:
                raise ArgumentError("inserted text must not contain the 0x00 sentinel")
            if not 1 <= self.i <= n:
                raise ArgumentError(f"insert position {self.i} outside [1, {n}]")
        else:
            if self.length < 1:
                raise ArgumentError(f"deletion length must be positive, got {self.length}")
            if not 1 <= self.i <= n - self.length:
                raise ArgumentError(
                    f"deletion of {self.length} at {self.i} would reach the sentinel (n={n})"
                )

    def describe(self) -> str:
        if self.is_insertion:
            return f"{self.kind.value}@{self.i}+{self.m}"
        return f"{self.kind.value}@{self.i}-{self.m}"


@dataclass(frozen=True)
class SaInterval:
    """Suffix-array interval [sp, ep] of a pattern; empty when sp = ep + 1."""

    sp: int
    ep: int
    sa_sp: int | None = None

    @property
    def size(self) -> int:
        return max(0, self.ep - self.sp + 1)

    @property
    def empty(self) -> bool:
        return self.ep < self.sp


@dataclass
class UpdateStats:
    """Diagnostics for one update.

    Attributes:
        k: Reordering iterations executed after the inserted/removed block
        iterations: Total iterations executed (1 + m + k)
        isa_walk: LF-inverse steps spent locating the edit row
        micros: Wall-clock time of the update
    """

    kind: EditKind
    i: int
    m: int
    k: int = 0
    iterations: int = 0
    isa_walk: int = 0
    micros: float = 0.0

    def summary(self) -> str:
        return f"K={self.k} iters={self.iterations} micros={self.micros:.0f}"
