"""Cross-check a running update against the literal replay.

Installed as the update engine's observer when debug tracing is on. Each
executed iteration is compared with the replayed iteration of the same j:
the current BWT and samples, the removal and insertion rows, the dynamic LF
of every row, and the neighbour labels the engine derived.
"""

import logging
from typing import TYPE_CHECKING

from src.index.edits import EditOp
from src.index.updates import IterationState, Phase, dynamic_lf
from src.oracle.replay import IterationTrace, replay_iterations
from src.oracle.snapshot import apply_edit, build_snapshot
from src.utils.errors import InvariantViolation

if TYPE_CHECKING:
    from src.index.r_index import DynamicRIndex

logger = logging.getLogger(__name__)


class UpdateTracer:
    """Observer comparing every iteration of one update with the oracle."""

    def __init__(self, text: bytes, op: EditOp):
        self.op = op
        self.new_text = apply_edit(text, op)
        cap = max(len(text), len(self.new_text))
        self.steps: dict[int, IterationTrace] = {
            step.j: step for step in replay_iterations(text, op, cap=cap)
        }
        self.checked: list[int] = []
        self._index: "DynamicRIndex | None" = None

    def bind(self, index: "DynamicRIndex") -> "UpdateTracer":
        self._index = index
        return self

    def _fail(self, j: int, message: str) -> None:
        raise InvariantViolation(f"{self.op.describe()} iteration j={j}: {message}")

    def check(self, state: IterationState) -> None:
        """Compare one iteration (before it mutates the index)."""
        step = self.steps[state.j]
        self.checked.append(state.j)
        if state.x is not None and state.x != step.x:
            self._fail(state.j, f"removal row {state.x}, oracle {step.x}")
        if state.y is not None and state.y != step.y:
            self._fail(state.j, f"insertion row {state.y}, oracle {step.y}")

        if self._index is not None:
            bwt = self._index.rlbwt.decode()
            if bwt != step.before_bwt:
                self._fail(state.j, f"BWT {bwt!r}, oracle {step.before_bwt!r}")
            relabelled = self.op.is_insertion and state.phase is Phase.SUBSTITUTE
            if not relabelled and self._index.sampled_values() != step.sampled():
                self._fail(state.j, "sampled labels disagree with the oracle")

        if state.view is not None:
            for t in range(1, len(step.before_labels) + 1):
                value = dynamic_lf(state, t)
                if value != step.lf[t - 1]:
                    self._fail(state.j, f"dynamic LF({t}) = {value}, oracle {step.lf[t - 1]}")

        self._check_label(state.j, step, state.y, 1, state.comp_sa_y1, "y+1")
        self._check_label(state.j, step, state.y, -1, state.comp_sa_y2, "y-1")
        if state.x_next is not None:
            following = self.steps.get(state.j - 1)
            if following is not None and following.x is not None and following.x != state.x_next:
                self._fail(state.j, f"next removal row {state.x_next}, oracle {following.x}")
            self._check_label(state.j, step, state.x_next, 1, state.comp_sa_x1, "x+1")
            self._check_label(state.j, step, state.x_next, -1, state.comp_sa_x2, "x-1")

    def _check_label(
        self,
        j: int,
        step: IterationTrace,
        row: int | None,
        offset: int,
        value: int | None,
        name: str,
    ) -> None:
        if row is None:
            return
        target = row + offset
        expected = (
            step.after_labels[target - 1] if 1 <= target <= len(step.after_labels) else None
        )
        if value != expected:
            self._fail(j, f"label at {name} is {value}, oracle {expected}")

    def finish(self, index: "DynamicRIndex") -> None:
        """Compare the finished index with a snapshot of the new text."""
        snapshot = build_snapshot(self.new_text)
        if index.rlbwt.decode() != snapshot.bwt:
            raise InvariantViolation(f"{self.op.describe()}: final BWT differs from the oracle")
        if index.sampled_values() != (snapshot.sa_s, snapshot.sa_e):
            raise InvariantViolation(f"{self.op.describe()}: final samples differ from the oracle")
        logger.debug(f"Trace verified {len(self.checked)} iterations of {self.op.describe()}")
