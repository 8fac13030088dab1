"""Literal replay of an update through every intermediate matrix.

Each iteration j removes the old row of T[j..] (if it is still part of the
new text's matrix) and inserts the row of the new text that carries label j.
Rows are ordered by suffix, old rows before new rows on equal suffixes, and
labelled with text positions the same way the update engine labels them:

* insertion of P at i: old row T[k..] has label k, new row T'[k..] label k;
* deletion of m bytes at i: new row T'[k..] has label k for k < i and
  k + m otherwise (the label of the old row it replaces).
"""

from collections.abc import Callable
from dataclasses import dataclass

from src.index.edits import EditOp
from src.oracle.snapshot import apply_edit, validate_text
from src.utils.errors import ArgumentError

DEFAULT_REPLAY_CAP = 64

# (suffix, is_new, label, last character)
_Row = tuple[bytes, int, int, int]


@dataclass(frozen=True)
class IterationTrace:
    """One iteration of the replay.

    ``x`` is the row of the removed row in the matrix before the iteration,
    ``y`` the row of the inserted row in the matrix after it; ``lf[t-1]`` is
    the row after the iteration holding the predecessor of row t, or -1.
    """

    j: int
    before_labels: list[int]
    before_bwt: bytes
    after_labels: list[int]
    after_bwt: bytes
    x: int | None
    y: int | None
    lf: list[int]

    def sampled(self, after: bool = False) -> tuple[list[int], list[int]]:
        """Labels at run starts and run ends of one side of the iteration."""
        labels = self.after_labels if after else self.before_labels
        bwt = self.after_bwt if after else self.before_bwt
        starts: list[int] = []
        ends: list[int] = []
        for row, ch in enumerate(bwt):
            if row == 0 or bwt[row - 1] != ch:
                starts.append(labels[row])
            if row == len(bwt) - 1 or bwt[row + 1] != ch:
                ends.append(labels[row])
        return starts, ends


def _make_row(text: bytes, k: int, is_new: int, label: int) -> _Row:
    return (text[k - 1 :], is_new, label, text[(k - 2) % len(text)])


def _position(rows: list[_Row], row: _Row) -> int:
    return rows.index(row) + 1


def replay_iterations(
    text: bytes, op: EditOp, cap: int = DEFAULT_REPLAY_CAP
) -> list[IterationTrace]:
    """Replay op on text through all iterations, j descending.

    Raises:
        ArgumentError: If the text is longer than cap
    """
    validate_text(text)
    if len(text) > cap:
        raise ArgumentError(f"replay is limited to texts of {cap} bytes, got {len(text)}")
    new_text = apply_edit(text, op)
    n, total, i, m = len(text), len(new_text), op.i, op.m

    if op.is_insertion:
        top = n + m

        def step(j: int) -> tuple[int | None, int | None]:
            if j >= i + m:
                return j - m, j
            if j >= i:
                return None, j
            return j, j

        def new_label(k: int) -> int:
            return k

        def pred_for(j: int) -> Callable[[int], int]:
            return lambda v: v - 1 if v > 1 else total

    else:
        top = n

        def step(j: int) -> tuple[int | None, int | None]:
            if j >= i + m:
                return j, j - m
            if j >= i:
                return j, None
            return j, j

        def new_label(k: int) -> int:
            return k + m if k >= i else k

        def pred_for(j: int) -> Callable[[int], int]:
            def pred(v: int) -> int:
                if v == i + m and j < i:
                    return i - 1
                return v - 1 if v > 1 else n

            return pred

    rows = sorted(_make_row(text, k, 0, k) for k in range(1, n + 1))
    trace: list[IterationTrace] = []
    for j in range(top, 0, -1):
        old_k, new_k = step(j)
        before = list(rows)
        x = None
        if old_k is not None:
            removed = _make_row(text, old_k, 0, old_k)
            x = _position(before, removed)
            rows.remove(removed)
        y = None
        if new_k is not None:
            inserted = _make_row(new_text, new_k, 1, new_label(new_k))
            rows.append(inserted)
            rows.sort()
            y = _position(rows, inserted)

        pred = pred_for(j)
        after_rows = {row[2]: position for position, row in enumerate(rows, start=1)}
        trace.append(
            IterationTrace(
                j=j,
                before_labels=[row[2] for row in before],
                before_bwt=bytes(row[3] for row in before),
                after_labels=[row[2] for row in rows],
                after_bwt=bytes(row[3] for row in rows),
                x=x,
                y=y,
                lf=[after_rows.get(pred(row[2]), -1) for row in before],
            )
        )
    return trace
