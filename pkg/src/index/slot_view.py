"""View of L used while an update is half-way through the matrix.

During an update the current BWT is not the BWT of any text: one character
is missing (insertion) or one is surplus (deletion). SlotView restores the
balance between first and last columns so that LF becomes a bijection onto
the next intermediate matrix:

* a *virtual* slot holds a character d that is not stored in L, placed
  directly before real row z (real row t sits at slot t + [t >= z]);
* a *hole* hides real row z (real row t sits at slot t - [t > z]).

``image`` is the LF function of the view and ``preimage`` its inverse.
"""

from src.index.rlbwt import RlbwtIndex
from src.utils.errors import InvariantViolation, RangeError

VIRTUAL = -1  # from_slot() result for the virtual slot


class SlotView:
    """LF navigation over L with at most one virtual slot or one hole."""

    def __init__(
        self,
        rlbwt: RlbwtIndex,
        virtual: tuple[int, int] | None = None,
        hole: int | None = None,
    ):
        if virtual is not None and hole is not None:
            raise ValueError("a view has either a virtual slot or a hole, not both")
        self.rlbwt = rlbwt
        self.n = rlbwt.n
        self.z = 0
        self.d: int | None = None
        self.hole: int | None = None
        self.e: int | None = None
        if virtual is not None:
            self.z, self.d = virtual
            if not 1 <= self.z <= self.n + 1:
                raise RangeError(f"virtual slot {self.z} outside [1, {self.n + 1}]")
        elif hole is not None:
            self.z = hole
            self.hole = hole
            self.e = rlbwt.char_at(hole)

    @property
    def height(self) -> int:
        if self.d is not None:
            return self.n + 1
        if self.hole is not None:
            return self.n - 1
        return self.n

    # -------------------------------------------------------- coordinates

    def to_slot(self, t: int) -> int:
        """Slot of real row t."""
        if self.d is not None:
            return t + 1 if t >= self.z else t
        if self.hole is not None:
            if t == self.hole:
                raise InvariantViolation(f"row {t} is the hole of this view")
            return t - 1 if t > self.z else t
        return t

    def from_slot(self, s: int) -> int:
        """Real row of slot s, or VIRTUAL."""
        if not 1 <= s <= self.height:
            raise RangeError(f"slot {s} outside [1, {self.height}]")
        if self.d is not None:
            if s == self.z:
                return VIRTUAL
            return s - 1 if s > self.z else s
        if self.hole is not None:
            return s + 1 if s >= self.z else s
        return s

    def char(self, s: int) -> int:
        t = self.from_slot(s)
        if t == VIRTUAL:
            assert self.d is not None
            return self.d
        return self.rlbwt.char_at(t)

    # ------------------------------------------------------------ counting

    def lex_count(self, ch: int) -> int:
        value = self.rlbwt.lex_count(ch)
        if self.d is not None and self.d < ch:
            value += 1
        if self.e is not None and self.e < ch:
            value -= 1
        return value

    def occurrences(self, ch: int) -> int:
        value = self.rlbwt.occurrences(ch)
        if self.d == ch:
            value += 1
        if self.e == ch:
            value -= 1
        return value

    def rank(self, s: int, ch: int) -> int:
        """Occurrences of ch in slots 1..s."""
        if s <= 0:
            return 0
        rb = self.rlbwt
        if self.d is not None:
            if s < self.z:
                return rb.rank(s, ch)
            return rb.rank(s - 1, ch) + (1 if self.d == ch else 0)
        if self.hole is not None:
            if s < self.z:
                return rb.rank(s, ch)
            return rb.rank(s + 1, ch) - (1 if self.e == ch else 0)
        return rb.rank(s, ch)

    def select(self, k: int, ch: int) -> int:
        """Slot of the k-th ch, or -1."""
        rb = self.rlbwt
        if self.d is not None:
            if ch == self.d:
                before = rb.rank(self.z - 1, ch)
                if k <= before:
                    return rb.select(k, ch)
                if k == before + 1:
                    return self.z
                t = rb.select(k - 1, ch)
                return t + 1 if t > 0 else -1
            t = rb.select(k, ch)
            return self.to_slot(t) if t > 0 else -1
        if self.hole is not None:
            if ch == self.e:
                before = rb.rank(self.z - 1, ch)
                t = rb.select(k if k <= before else k + 1, ch)
            else:
                t = rb.select(k, ch)
            return self.to_slot(t) if t > 0 else -1
        return rb.select(k, ch)

    def lex_search(self, p: int) -> int:
        """Symbol whose bucket in the view's first column contains rank p."""
        rb = self.rlbwt
        if self.d is not None:
            low = rb.lex_count(self.d)
            high = low + rb.occurrences(self.d) + 1
            if p <= low:
                return rb.lex_search(p)
            if p <= high:
                return self.d
            return rb.lex_search(p - 1)
        if self.e is not None:
            low = rb.lex_count(self.e)
            high = low + rb.occurrences(self.e) - 1
            if p <= low:
                return rb.lex_search(p)
            if p <= high:
                return self.e
            return rb.lex_search(p + 1)
        return rb.lex_search(p)

    # ------------------------------------------------------------------ LF

    def image(self, s: int) -> int:
        """LF of slot s: its row in the next matrix."""
        ch = self.char(s)
        return self.lex_count(ch) + self.rank(s, ch)

    def preimage(self, p: int) -> int:
        """Slot whose LF is row p of the next matrix."""
        if not 1 <= p <= self.height:
            raise RangeError(f"row {p} outside [1, {self.height}]")
        ch = self.lex_search(p)
        s = self.select(p - self.lex_count(ch), ch)
        if s < 1:
            raise InvariantViolation(f"no slot maps onto row {p}")
        return s

    def lf_row(self, t: int) -> int:
        """LF of real row t, or -1 for the hole (it has no image)."""
        if self.hole is not None and t == self.hole:
            return -1
        return self.image(self.to_slot(t))
