"""Threshold-region search in O(log 1/delta + log log n) queries.

Given a sorted view, a threshold ``b`` and slack ``delta``, find a suffix
region ``[s, n]`` that contains every position holding a value >= b and in
which at least a 1/(1+delta) fraction of positions hold values >= b.

The search has two phases.  Phase one grows a width ``m`` by repeated
squaring (m = 2^(2^k)) until the suffix of width m^2 overshoots the
threshold boundary, which takes O(log log n) probes.  Phase two shrinks the
overshoot factor back down along an exact ladder

    2^(2^k) -> 2^(2^(k-1)) -> ... -> 2 -> 3/2 -> 5/4 -> ... -> 1 + 2^-j

whose step ``g`` satisfies g(m)^2 >= m, so the bracketing invariant survives
each shrink without ever computing a real square root.  All widths are
dyadic rationals held as (numerator, power-of-two exponent) pairs, so every
floor is an exact integer operation regardless of magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .access import EMPTY, Region, SortedView
from .errors import InternalInvariantError, ParameterError


@dataclass(frozen=True)
class LadderValue:
    """One rung of the shrink ladder, stored exactly.

    ``tower`` rungs hold 2^(2^index); ``fraction`` rungs hold 1 + 2^-index.
    Every rung is > 1, and stepping down satisfies step(v)^2 >= v.
    """

    phase: str  # "tower" or "fraction"
    index: int

    @classmethod
    def tower(cls, k: int) -> "LadderValue":
        if k < 0:
            raise ValueError("tower exponent must be nonnegative")
        return cls("tower", k)

    @classmethod
    def fraction(cls, j: int) -> "LadderValue":
        if j < 1:
            raise ValueError("fraction index must be positive")
        return cls("fraction", j)

    @property
    def is_tower(self) -> bool:
        return self.phase == "tower"

    def as_fraction(self) -> Fraction:
        if self.is_tower:
            return Fraction(1 << (1 << self.index), 1)
        return Fraction((1 << self.index) + 1, 1 << self.index)

    def numeric(self) -> float:
        return float(self.as_fraction())

    def step(self) -> "LadderValue":
        """Approximate square root: the next rung down the ladder."""
        if self.is_tower:
            if self.index > 0:
                return LadderValue("tower", self.index - 1)
            return LadderValue("fraction", 1)  # g(2) = 3/2, and (3/2)^2 >= 2
        return LadderValue("fraction", self.index + 1)

    def scale_dyadic(self, num: int, exp: int) -> tuple[int, int]:
        """Multiply the dyadic value num/2^exp by this rung, exactly."""
        if self.is_tower:
            return num << (1 << self.index), exp
        j = self.index
        return num * ((1 << j) + 1), exp + j


def ladder_step(v: LadderValue) -> LadderValue:
    """Functional form of :meth:`LadderValue.step`."""
    return v.step()


@dataclass
class CycleRecord:
    """One phase-two cycle, for offline exactness and invariant checks."""

    m: LadderValue          # m_{i+1}, the rung used by this cycle
    r_num: int              # r_i before the cycle, as num/2^exp
    r_exp: int
    probe_floor: int        # floor(m_{i+1} * r_i), computed dyadically
    accepted: bool          # whether r was advanced to m_{i+1} * r_i


@dataclass
class RegionTrace:
    """Optional instrumentation collected by :func:`approximate_region`."""

    phase1_tower_exponent: int | None = None
    cycles: list[CycleRecord] = field(default_factory=list)
    final_r_floor: int | None = None
    final_product_floor: int | None = None
    adjustment: str | None = None  # "as-computed", "shrink-one", or "clamp-head"


def _fraction_stop_index(delta: float) -> int:
    """Smallest j with 2^-j < delta, decided exactly for a binary64 delta."""
    j = max(0, -math.frexp(delta)[1])
    d = Fraction(delta)
    while Fraction(1, 1 << j) >= d:
        j += 1
    return j


def approximate_region(
    view: SortedView,
    b: float,
    delta: float,
    n: int | None = None,
    *,
    known: dict[int, float] | None = None,
    trace: RegionTrace | None = None,
) -> Region:
    """Find a (1+delta)-approximate b-region of ``view[1..n]``.

    Returns the empty region iff ``view[n] < b``.  Otherwise returns a
    suffix ``[s, n]`` such that

    * every position ``j`` in ``[1, n]`` with ``view[j] >= b`` lies in it, and
    * at least ``size/(1+delta)`` of its positions hold values >= b.

    Query count is O(log(1/delta) + log log n).  ``known`` may seed an
    internal position->value cache with values the caller has already read;
    the cache also absorbs repeated probes of one position, so no position
    is charged to the ledger twice within a call.
    """
    if not (0.0 < delta < 1.0):
        raise ParameterError(f"delta must lie in (0, 1), got {delta}")
    if not b > 0.0:
        raise ParameterError(f"threshold b must be positive, got {b}")
    n = view.length if n is None else int(n)
    if n < 1:
        raise ParameterError("n must be positive")
    if n > view.length:
        raise ParameterError(f"n={n} exceeds view length {view.length}")

    cache = known if known is not None else {}

    def probe(i: int) -> float:
        if i < 1:
            return float("-inf")
        v = cache.get(i)
        if v is None:
            v = view.get(i)
            cache[i] = v
        return v

    if probe(n) < b:
        return EMPTY
    if probe(n - 1) < b:
        return Region(n, n)
    if probe(1) >= b:
        return Region(1, n)

    # Phase one: m = 2^(2^k); widen while the m^2-wide suffix is all >= b.
    k = 0
    while probe(n - (1 << (1 << (k + 1))) + 1) >= b:
        k += 1
    # Here view[n - m + 1] >= b and view[n - m^2 + 1] < b for m = 2^(2^k).
    if trace is not None:
        trace.phase1_tower_exponent = k

    # Phase two: shrink the factor down the ladder while m_i >= 1 + delta,
    # advancing the certified-width r whenever the probe stays >= b.
    j_stop = _fraction_stop_index(delta)
    m = LadderValue.tower(k)
    r_num, r_exp = 1 << (1 << k), 0  # r = m, an exact integer

    while m.is_tower or m.index < j_stop:
        m_next = m.step()
        cand_num, cand_exp = m_next.scale_dyadic(r_num, r_exp)
        cand_floor = cand_num >> cand_exp
        accepted = probe(n - cand_floor + 1) >= b
        if trace is not None:
            trace.cycles.append(CycleRecord(m_next, r_num, r_exp, cand_floor, accepted))
        if accepted:
            r_num, r_exp = cand_num, cand_exp
        m = m_next

    # Exit state: m is the first rung below 1 + delta; floor(r) positions
    # are certified >= b and the position below floor(m * r) is < b.
    certified = r_num >> r_exp
    prod_num, prod_exp = m.scale_dyadic(r_num, r_exp)
    width = prod_num >> prod_exp
    if trace is not None:
        trace.final_r_floor = certified
        trace.final_product_floor = width

    # Select the left endpoint so the certificate holds for every list
    # consistent with the probes made:
    #   width <= (1+delta) * certified  ->  [n - width + 1, n] is safe;
    #   otherwise shrink by one position (still contains all hits, since
    #   the value at n - width + 1 is known to be < b);
    #   if width overruns the list head, all hits lie in [2, n] because
    #   position 1 tested < b above.
    adjustment = "as-computed"
    if width > n:
        s = 2
        adjustment = "clamp-head"
    else:
        # Exact test: width <= certified + delta * certified.
        if Fraction(width - certified) <= Fraction(delta) * certified:
            s = n - width + 1
        else:
            s = n - width + 2
            adjustment = "shrink-one"
    if trace is not None:
        trace.adjustment = adjustment

    if not 1 <= s <= n:
        raise InternalInvariantError(f"region start {s} outside [1, {n}]")
    return Region(s, n)
