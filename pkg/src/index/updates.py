"""Update engine: string insertion and substring deletion on the r-index.

An update walks the intermediate matrices between the old and the new text,
one iteration per text position, from the edit boundary towards the start
of the text. Iterations above the edit boundary change nothing but suffix
array values and are replaced by a single shift of both sample sets.
Iterations below it stop as soon as the row being replaced and the row
being inserted coincide (the count of those iterations is K).

Row labels are text positions. Only labels at run boundaries are stored;
the labels of a few rows around the moving rows are carried from one
iteration to the next in ``IterationState.labels``.

Insertion of P (length m) at i:
    substitute   the row of T[i..] becomes the row of T'[i+m..]
    insert       new rows T'[j..] for j = i+m-1 .. i
    reorder      old row T[j..] replaced by T'[j..] for j = i-1 .. 1

Deletion of T[i..i+m-1]:
    substitute   the row of T[i+m..] takes T[i-1] as its last character
    remove       old rows T[j..] for j = i+m-1 .. i
    reorder      as for insertion, then labels above i+m-1 drop by m
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING

from src.index.edits import EditKind
from src.index.rlbwt import RunEditKind
from src.index.slot_view import VIRTUAL, SlotView
from src.utils.errors import InvariantViolation

if TYPE_CHECKING:
    from src.index.r_index import DynamicRIndex

logger = logging.getLogger(__name__)

Pred = Callable[[int], int]


class Phase(Enum):
    SUBSTITUTE = "substitute"
    INSERT = "insert"
    REMOVE = "remove"
    REORDER = "reorder"


@dataclass
class IterationState:
    """Everything one iteration reads before it mutates the index.

    Rows ``x`` and ``y_prev`` are in the current matrix; ``y`` and
    ``x_next`` are in the matrix produced by this iteration.
    """

    kind: EditKind
    phase: Phase
    j: int
    view: SlotView | None = None
    x: int | None = None
    y: int | None = None
    y_prev: int | None = None
    x_next: int | None = None
    labels: dict[int, int] = field(default_factory=dict)
    comp_sa_x1: int | None = None
    comp_sa_x2: int | None = None
    comp_sa_y1: int | None = None
    comp_sa_y2: int | None = None


def dynamic_lf(state: IterationState, t: int) -> int:
    """Row of the next matrix holding the predecessor of row t, or -1.

    Raises:
        InvariantViolation: If the iteration has no LF view
    """
    if state.view is None:
        raise InvariantViolation(f"{state.phase.value} iteration has no dynamic LF")
    return state.view.lf_row(t)


def comp_sa_x1(state: IterationState) -> int | None:
    """Label of the row below the next removal row."""
    return state.comp_sa_x1


def comp_sa_x2(state: IterationState) -> int | None:
    """Label of the row above the next removal row."""
    return state.comp_sa_x2


def comp_sa_y1(state: IterationState) -> int | None:
    """Label of the row below the inserted row."""
    return state.comp_sa_y1


def comp_sa_y2(state: IterationState) -> int | None:
    """Label of the row above the inserted row."""
    return state.comp_sa_y2


Observer = Callable[[IterationState], None]


class UpdateEngine:
    """Runs one update against a DynamicRIndex in place."""

    def __init__(self, index: "DynamicRIndex", observer: Observer | None = None):
        self.index = index
        self.rlbwt = index.rlbwt
        self.sa_s = index.sa_s
        self.sa_e = index.sa_e
        self.observer = observer
        self.k = 0
        self.iterations = 0
        self.isa_walk = 0

    # ----------------------------------------------------------- bookkeeping

    def _notify(self, state: IterationState) -> None:
        if self.observer is not None:
            self.observer(state)

    @staticmethod
    def _known(*entries: tuple[int, int | None, int, int | None]) -> dict[int, int]:
        known: dict[int, int] = {}
        for row, prev_label, label, next_label in entries:
            if prev_label is not None:
                known[row - 1] = prev_label
            known[row] = label
            if next_label is not None:
                known[row + 1] = next_label
        return known

    def _label_at(self, row: int, known: dict[int, int]) -> int:
        if row in known:
            return known[row]
        x = self.rlbwt.run_index(row)
        run, start = self.rlbwt.run_access(x)
        if row == start:
            return self.sa_s.access(x)
        if row == start + run.length - 1:
            return self.sa_e.access(x)
        raise InvariantViolation(f"label of interior row {row} is not known")

    def _neighbours(
        self,
        view: SlotView,
        row: int,
        known: dict[int, int],
        pred: Pred,
        virtual_label: int | None = None,
    ) -> tuple[int | None, int | None]:
        """Labels of rows row-1 and row+1 in the matrix after this iteration."""

        def label_of(slot: int) -> int:
            t = view.from_slot(slot)
            if t == VIRTUAL:
                if virtual_label is None:
                    raise InvariantViolation("virtual slot has no label")
                return virtual_label
            return self._label_at(t, known)

        before = pred(label_of(view.preimage(row - 1))) if row > 1 else None
        after = pred(label_of(view.preimage(row + 1))) if row < view.height else None
        return before, after

    def _remove_row(self, x: int, prev_label: int | None, next_label: int | None) -> None:
        edit = self.rlbwt.delete_char(x)
        w = edit.run
        if edit.kind is RunEditKind.REMOVED:
            self.sa_s.delete(w)
            self.sa_e.delete(w)
        elif edit.kind is RunEditKind.REMOVED_MERGED:
            self.sa_s.delete(w)
            self.sa_s.delete(w)
            self.sa_e.delete(w)
            self.sa_e.delete(w - 1)
        elif edit.kind is RunEditKind.SHRANK_AT_START:
            assert next_label is not None
            self.sa_s.replace(w, next_label)
        elif edit.kind is RunEditKind.SHRANK_AT_END:
            assert prev_label is not None
            self.sa_e.replace(w, prev_label)

    def _insert_row(
        self, y: int, ch: int, label: int, prev_label: int | None, next_label: int | None
    ) -> None:
        edit = self.rlbwt.insert_char(ch, y)
        w = edit.run
        if edit.kind is RunEditKind.NEW:
            self.sa_s.insert(w, label)
            self.sa_e.insert(w, label)
        elif edit.kind is RunEditKind.GREW_AT_START:
            self.sa_s.replace(w, label)
        elif edit.kind is RunEditKind.GREW_AT_END:
            self.sa_e.replace(w, label)
        elif edit.kind is RunEditKind.SPLIT:
            assert prev_label is not None and next_label is not None
            self.sa_e.insert(w - 1, prev_label)
            self.sa_e.insert(w, label)
            self.sa_s.insert(w, next_label)
            self.sa_s.insert(w, label)

    # -------------------------------------------------------------- reorder

    def _reorder(
        self,
        kind: EditKind,
        j_start: int,
        removal: tuple[int, int | None, int | None],
        inserted: tuple[int, int | None, int | None],
        inserted_label: int,
        pred: Pred,
    ) -> None:
        x, x_prev, x_next_label = removal
        y_prev, y_prev_before, y_prev_after = inserted
        for j in range(j_start, 0, -1):
            view = SlotView(self.rlbwt)
            known = self._known(
                (x, x_prev, j, x_next_label), (y_prev, y_prev_before, inserted_label, y_prev_after)
            )
            y = view.image(y_prev)
            self.k += 1
            self.iterations += 1
            state = IterationState(kind, Phase.REORDER, j, view, x=x, y=y, y_prev=y_prev)
            state.labels = known
            if x == y:
                # Row x is relabelled in place; its neighbours keep their labels
                state.comp_sa_y1, state.comp_sa_y2 = x_next_label, x_prev
                self._notify(state)
                logger.debug(f"reorder stopped at j={j} (row {x})")
                return

            before, after = self._neighbours(view, y, known, pred)
            x_following = view.image(x)
            following_before, following_after = self._neighbours(view, x_following, known, pred)
            state.x_next = x_following
            state.comp_sa_y1, state.comp_sa_y2 = after, before
            state.comp_sa_x1, state.comp_sa_x2 = following_after, following_before
            self._notify(state)

            ch = self.rlbwt.char_at(x)
            self._remove_row(x, x_prev, x_next_label)
            self._insert_row(y, ch, j, before, after)

            x, x_prev, x_next_label = x_following, following_before, following_after
            y_prev, y_prev_before, y_prev_after = y, before, after
            inserted_label = j

    # ------------------------------------------------------------ insertion

    def insert(self, kind: EditKind, i: int, pattern: bytes) -> None:
        """Insert pattern before text position i."""
        index = self.index
        rlbwt = self.rlbwt
        n = rlbwt.n
        m = len(pattern)
        top = i + m
        total = n + m

        z, self.isa_walk = index.isa_with_walk(i)
        d = rlbwt.char_at(z)

        def relabel(v: int) -> int:
            return v + m if v >= i else v

        z_prev = relabel(index.phi(i)) if z > 1 else None
        z_next = relabel(index.phi_inverse(i)) if z < n else None
        self.sa_s.increment(i - 1, m)
        self.sa_e.increment(i - 1, m)

        state = IterationState(kind, Phase.SUBSTITUTE, top, x=z, y=z, y_prev=z)
        state.comp_sa_y1, state.comp_sa_y2 = z_next, z_prev
        self._notify(state)
        self._remove_row(z, z_prev, z_next)
        self._insert_row(z, pattern[m - 1], top, z_prev, z_next)
        self.iterations = 1

        def pred(v: int) -> int:
            return v - 1 if v > 1 else total

        y_prev, y_before, y_after = z, z_prev, z_next
        x: int | None = None
        x_before: int | None = None
        x_after: int | None = None
        for j in range(top - 1, i - 1, -1):
            view = SlotView(rlbwt, virtual=(z, d))
            known = self._known((z, z_prev, top, z_next), (y_prev, y_before, j + 1, y_after))
            y = view.image(view.to_slot(y_prev))
            before, after = self._neighbours(view, y, known, pred, virtual_label=i)
            state = IterationState(kind, Phase.INSERT, j, view, y=y, y_prev=y_prev)
            state.labels = known
            state.comp_sa_y1, state.comp_sa_y2 = after, before
            if j == i and i > 1:
                x = view.image(z)
                x_before, x_after = self._neighbours(view, x, known, pred, virtual_label=i)
                state.x_next = x
                state.comp_sa_x1, state.comp_sa_x2 = x_after, x_before
            self._notify(state)

            ch = pattern[j - i - 1] if j > i else d
            self._insert_row(y, ch, j, before, after)
            self.iterations += 1

            if y <= z:
                if y == z:
                    z_prev = j
                z += 1
            elif y == z + 1:
                z_next = j
            y_prev, y_before, y_after = y, before, after

        if i > 1:
            assert x is not None
            self._reorder(kind, i - 1, (x, x_before, x_after), (y_prev, y_before, y_after), i, pred)

    # ------------------------------------------------------------- deletion

    def delete(self, i: int, m: int) -> None:
        """Delete T[i..i+m-1]."""
        index = self.index
        rlbwt = self.rlbwt
        n = rlbwt.n
        top = i + m

        z, self.isa_walk = index.isa_with_walk(top)
        x = rlbwt.lf(z)
        z_prev = index.phi(top) if z > 1 else None
        z_next = index.phi_inverse(top) if z < n else None
        x_prev = index.phi(top - 1) if x > 1 else None
        x_next = index.phi_inverse(top - 1) if x < n else None
        replacement = index.comp_t(i)

        kind = EditKind.DELETE_SUBSTRING
        state = IterationState(kind, Phase.SUBSTITUTE, top, x=z, y=z, y_prev=z)
        state.comp_sa_y1, state.comp_sa_y2 = z_next, z_prev
        self._notify(state)
        self._remove_row(z, z_prev, z_next)
        self._insert_row(z, replacement, top, z_prev, z_next)
        self.iterations = 1

        def pred(v: int) -> int:
            return v - 1 if v > 1 else n

        for j in range(top - 1, i - 1, -1):
            view = SlotView(rlbwt, hole=z)
            known = self._known((x, x_prev, j, x_next), (z, z_prev, top, z_next))
            state = IterationState(kind, Phase.REMOVE, j, view, x=x)
            state.labels = known
            follow = j > i or i > 1
            if follow:
                x_following = view.image(view.to_slot(x))
                following_before, following_after = self._neighbours(view, x_following, known, pred)
                state.x_next = x_following
                state.comp_sa_x1, state.comp_sa_x2 = following_after, following_before
            self._notify(state)

            if x < z:
                if x == z - 1:
                    z_prev = x_prev
                z -= 1
            elif x == z + 1:
                z_next = x_next
            self._remove_row(x, x_prev, x_next)
            self.iterations += 1
            if follow:
                x, x_prev, x_next = x_following, following_before, following_after

        if i > 1:

            def pred_reorder(v: int) -> int:
                return i - 1 if v == top else pred(v)

            self._reorder(
                kind, i - 1, (x, x_prev, x_next), (z, z_prev, z_next), top, pred_reorder
            )

        self.sa_s.decrement(top - 1, m)
        self.sa_e.decrement(top - 1, m)

