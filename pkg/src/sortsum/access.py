"""Metered read-only access to sorted sequences.

Every algorithm in this package works against a :class:`SortedView`: a
1-based, read-only window onto a nondecreasing number sequence.  Each
in-range read is counted by a :class:`QueryLedger`, which is the cost model
used throughout (query complexity, not wall time, is the primary metric).

Positions ``i <= 0`` return ``-inf`` and are free: they are not positions of
the underlying list, only a boundary convention that lets search loops probe
below the left edge without special-casing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import OutOfRangeError, UnsortedInputError

NEG_INF = float("-inf")

# An "extended number" is a plain float: -inf serves as the below-range
# sentinel and compares strictly less than every finite value.
ExtendedNumber = float


@dataclass
class QueryLedger:
    """Counts in-range element reads; optionally records a transcript.

    ``count`` equals the number of reads at positions >= 1 since the last
    reset.  When transcript recording is enabled, the transcript holds one
    ``(position, answer)`` pair per counted read, in order.
    """

    count: int = 0
    transcript: list[tuple[int, float]] | None = None

    def reset(self, *, record_transcript: bool | None = None) -> None:
        self.count = 0
        if record_transcript is True:
            self.transcript = []
        elif record_transcript is False:
            self.transcript = None
        elif self.transcript is not None:
            self.transcript = []


class SortedView:
    """Read-only random access to a nondecreasing sequence, with metering.

    The source is either an in-memory sequence or a pure function from
    position to value.  Both behave identically; function sources allow
    views of effectively unbounded length without O(n) memory.

    Validation modes for in-memory sources:

    * ``"full"``  - check every adjacent pair at construction (default).
    * ``"spot"``  - sample O(log n) adjacent pairs.
    * ``"none"``  - trust the caller (benchmark mode; full validation of a
      large array would dominate a sublinear run).

    Function sources default to ``"none"`` and may be spot-checked.
    """

    __slots__ = ("_data", "_fn", "length", "ledger")

    def __init__(
        self,
        data: Sequence[float] | None = None,
        *,
        fn: Callable[[int], float] | None = None,
        n: int | None = None,
        ledger: QueryLedger | None = None,
        validate: str | None = None,
        record_transcript: bool = False,
    ):
        if (data is None) == (fn is None):
            raise ValueError("provide exactly one of data= or fn=")
        self._data = data
        self._fn = fn
        if data is not None:
            self.length = len(data) if n is None else int(n)
            if self.length > len(data):
                raise ValueError("declared length exceeds data length")
        else:
            if n is None:
                raise ValueError("function-backed views need an explicit length")
            self.length = int(n)
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        self.ledger = ledger if ledger is not None else QueryLedger()
        if record_transcript and self.ledger.transcript is None:
            self.ledger.transcript = []

        mode = validate if validate is not None else ("full" if data is not None else "none")
        if mode == "full":
            if data is not None:
                self._validate_full()
        elif mode == "spot":
            self.spot_check()
        elif mode != "none":
            raise ValueError(f"unknown validation mode: {mode!r}")

    @classmethod
    def from_array(cls, data: Sequence[float], **kw) -> "SortedView":
        return cls(data=data, **kw)

    @classmethod
    def from_function(cls, fn: Callable[[int], float], n: int, **kw) -> "SortedView":
        return cls(fn=fn, n=n, **kw)

    def fork(self, **kw) -> "SortedView":
        """A fresh view over the same source with its own ledger."""
        kw.setdefault("validate", "none")
        if self._data is not None:
            return SortedView(data=self._data, n=self.length, **kw)
        return SortedView(fn=self._fn, n=self.length, **kw)

    # -- access ---------------------------------------------------------

    def get(self, i: int) -> float:
        """Return the i-th element (1-based).

        ``i <= 0`` yields ``-inf`` without touching the ledger; an in-range
        read increments the ledger by exactly one.  ``i > length`` is a
        contract violation: the algorithms never ask for it.
        """
        if i < 1:
            return NEG_INF
        if i > self.length:
            raise OutOfRangeError(f"position {i} beyond view length {self.length}")
        ledger = self.ledger
        ledger.count += 1
        value = self._data[i - 1] if self._fn is None else self._fn(i)
        if ledger.transcript is not None:
            ledger.transcript.append((i, value))
        return value

    @property
    def queries(self) -> int:
        return self.ledger.count

    def reset_ledger(self) -> None:
        self.ledger.reset()

    # -- validation -----------------------------------------------------

    def _raw(self, i: int) -> float:
        # Unmetered read, for validation only.
        return self._data[i - 1] if self._fn is None else self._fn(i)

    def _validate_full(self) -> None:
        data = self._data
        for i in range(1, self.length):
            if data[i] < data[i - 1]:
                raise UnsortedInputError(i + 1)

    def spot_check(self, rng: random.Random | None = None) -> None:
        """Sample O(log n) adjacent pairs and verify monotonicity."""
        n = self.length
        if n < 2:
            return
        rng = rng or random.Random(0)
        samples = max(1, n.bit_length())
        for _ in range(samples):
            i = rng.randrange(1, n)
            if self._raw(i + 1) < self._raw(i):
                raise UnsortedInputError(i + 1)


@dataclass(frozen=True)
class Region:
    """Closed interval [lo, hi] of 1-based positions; ``hi < lo`` is empty.

    The canonical empty value is :data:`EMPTY`.
    """

    lo: int
    hi: int

    @property
    def is_empty(self) -> bool:
        return self.hi < self.lo

    @property
    def size(self) -> int:
        return 0 if self.hi < self.lo else self.hi - self.lo + 1

    def __contains__(self, position: int) -> bool:
        return self.lo <= position <= self.hi

    def positions(self) -> range:
        return range(self.lo, self.hi + 1)

    def contains_region(self, other: "Region") -> bool:
        """True when ``other`` (possibly empty) lies inside this region."""
        return other.is_empty or (self.lo <= other.lo and other.hi <= self.hi)


EMPTY = Region(1, 0)


def region_size(r: Region) -> int:
    """Number of integer positions in ``r`` (0 for the empty region)."""
    return r.size
