"""Hard-instance referees: executable lower-bound games.

Three games, each packaging a classic adversary argument as a referee that
plays against a query-budgeted algorithm and produces a concrete defeat
certificate when the algorithm's answer cannot be right:

* the *block game*: a geometric block list where every block an estimator
  fails to touch can be silently inflated by a factor of the block ratio,
  so any estimator making at most 3/4 of one query per block is wrong on
  one of two indistinguishable lists;
* the *region game*: an adaptive referee that answers 0/1 probes while
  keeping a pair of consistent sorted lists whose threshold regions differ
  by a squared factor per round, defeating any region finder that stops
  before roughly log log n queries;
* the *negative pair*: two lists differing in a single element with sums
  0 and 1, showing that one unqueried position is fatal once negative
  elements are allowed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable, Sequence

from .access import EMPTY, Region, SortedView
from .errors import BudgetExceededError, ParameterError
from .region import approximate_region
from .sums import approximate_sum

# -- query channel --------------------------------------------------------


class QueryChannel:
    """Referee-owned query pipe.  Budgets are enforced here, centrally,
    so a contending algorithm cannot misreport its own usage."""

    def __init__(self, answer: Callable[[int], float], budget: int | None):
        self._answer = answer
        self.budget = budget
        self.transcript: list[tuple[int, float]] = []

    @property
    def used(self) -> int:
        return len(self.transcript)

    def query(self, p: int) -> float:
        if self.budget is not None and self.used >= self.budget:
            raise BudgetExceededError(f"budget of {self.budget} queries exhausted")
        value = self._answer(p)
        self.transcript.append((p, value))
        return value


# -- exact root comparisons ------------------------------------------------


def ratio_power_at_least(num: int, den: int, stage: int, target: int) -> bool:
    """Decide ``(num/den) ** (2**stage) >= target`` exactly.

    Small stages use integer powers directly.  Larger stages square a
    dyadic enclosure of num/den with outward rounding, escalating precision
    until the comparison is decided; perfect-square targets are peeled
    first so that exact equality (which an enclosure can never decide)
    reduces to the integer-power path.
    """
    if num <= 0 or den <= 0 or target < 1:
        raise ValueError("ratio_power_at_least needs positive operands")
    if target == 1:
        return num >= den
    while stage > 5:
        root = isqrt(target)
        if root * root != target:
            break
        target = root
        stage -= 1
    if stage <= 5:
        e = 1 << stage
        return num**e >= target * den**e

    prec = 128
    while True:
        goal = target << prec
        lo = (num << prec) // den
        hi = -((-num << prec) // den)
        decided: bool | None = None
        for _ in range(stage):
            if lo >= goal:  # num/den > 1, so further squaring keeps it >= target
                decided = True
                break
            lo = (lo * lo) >> prec
            hi = -(-(hi * hi) >> prec)
        if decided is None:
            if lo >= goal:
                decided = True
            elif hi < goal:
                decided = False
        if decided is not None:
            return decided
        prec *= 2


# -- lazy 0/1 and block lists ----------------------------------------------


@dataclass(frozen=True)
class ThresholdList:
    """Sorted 0/1 list of length n: zeros below ``first_one``, ones from it."""

    n: int
    first_one: int  # in [1, n+1]; n+1 means all zeros

    def __len__(self) -> int:
        return self.n

    def value_at(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} outside [1, {self.n}]")
        return 1 if i >= self.first_one else 0

    def ones(self) -> int:
        return self.n - self.first_one + 1 if self.first_one <= self.n else 0

    def ones_in(self, lo: int, hi: int) -> int:
        lo = max(lo, self.first_one)
        return max(0, hi - lo + 1)

    def materialize(self) -> list[int]:
        return [self.value_at(i) for i in range(1, self.n + 1)]


class BlockList:
    """Lazy sorted list: an optional prefix run plus geometric value blocks.

    Block ``i`` holds ``counts[i]`` copies of ``values[i]``; lengths can far
    exceed memory, so access is positional.  ``value_at`` returns binary64
    (huge block values may round); exact arithmetic uses ``exact_value_at``
    and ``exact_sum``.
    """

    def __init__(
        self,
        prefix_len: int,
        prefix_value: Fraction,
        counts: Sequence[int],
        values: Sequence[int],
    ):
        if len(counts) != len(values):
            raise ValueError("counts and values must align")
        self.prefix_len = prefix_len
        self.prefix_value = Fraction(prefix_value)
        self.counts = list(counts)
        self.values = list(values)
        self._ends = []
        total = prefix_len
        for c in self.counts:
            total += c
            self._ends.append(total)
        self.length = total

    def __len__(self) -> int:
        return self.length

    def block_of(self, i: int) -> int | None:
        """0-based block index at position i, or None inside the prefix."""
        if not 1 <= i <= self.length:
            raise IndexError(f"position {i} outside [1, {self.length}]")
        if i <= self.prefix_len:
            return None
        lo, hi = 0, len(self._ends) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if i <= self._ends[mid]:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def exact_value_at(self, i: int) -> Fraction | int:
        k = self.block_of(i)
        return self.prefix_value if k is None else self.values[k]

    def value_at(self, i: int) -> float:
        return float(self.exact_value_at(i))

    def exact_sum(self) -> Fraction:
        total = Fraction(self.prefix_len) * self.prefix_value
        for c, v in zip(self.counts, self.values):
            total += c * v
        return total

    def materialize(self, limit: int = 10**6) -> list[float]:
        if self.length > limit:
            raise ValueError(f"refusing to materialize {self.length} elements")
        return [self.value_at(i) for i in range(1, self.length + 1)]


# -- block game (sum estimators) --------------------------------------------

BETA = Fraction(3, 4)  # fraction of one query per block that is provably too few


@dataclass(frozen=True)
class BlockListSpec:
    """Parameters of the hard block pair.

    ``c`` must be the exact integer (4 + delta) * d**2; blocks i = 1..m hold
    c^(m-i) copies of c^i.  The prefix is either ``t`` zeros (length
    regime) or one tiny element delta*c/n^2 (value-ratio regime).
    """

    d: float
    delta: Fraction
    m: int
    c: int
    prefix_kind: str  # "zeros", "single", or "none"
    prefix_len: int
    prefix_value: Fraction

    @classmethod
    def build(
        cls,
        d: float,
        delta: Fraction | float | str,
        m: int,
        *,
        prefix: str = "zeros",
        n: int | None = None,
    ) -> "BlockListSpec":
        if d <= 1:
            raise ParameterError("d must exceed 1")
        if m < 1:
            raise ParameterError("m must be positive")
        delta = Fraction(delta)
        if not 0 < delta < 1:
            raise ParameterError("delta must lie in (0, 1)")
        c_exact = (4 + delta) * Fraction(d) ** 2
        if c_exact.denominator != 1:
            raise ParameterError(
                f"(4 + delta) * d^2 = {c_exact} is not an integer; pick delta so the "
                f"block ratio is integral (e.g. d=2, delta=1/2 gives 18)"
            )
        c = int(c_exact)
        if c < 5:
            raise ParameterError(f"block ratio c={c} too small; need c >= 5")
        core = (c**m - 1) // (c - 1)
        if prefix == "none":
            return cls(d, delta, m, c, "none", 0, Fraction(0))
        if prefix == "zeros":
            total = n if n is not None else 2 * core
            if total < core:
                raise ParameterError(f"n={total} smaller than the block core {core}")
            return cls(d, delta, m, c, "zeros", total - core, Fraction(0))
        if prefix == "single":
            total = core + 1
            h = delta * c / Fraction(total) ** 2
            return cls(d, delta, m, c, "single", 1, h)
        raise ParameterError(f"unknown prefix kind: {prefix!r}")

    @property
    def core_len(self) -> int:
        return (self.c**self.m - 1) // (self.c - 1)

    @property
    def n(self) -> int:
        return self.prefix_len + self.core_len


def build_block_lists(
    spec: BlockListSpec, transcript: set[int] | Sequence[int]
) -> tuple[BlockList, BlockList]:
    """The base list and its counterpart under the given query transcript.

    The counterpart keeps every block that was queried and lifts every
    untouched block to the next block's value, which multiplies that
    block's mass by c while preserving sorted order and all queried
    answers.
    """
    c, m = spec.c, spec.m
    counts = [c ** (m - i) for i in range(1, m + 1)]
    values1 = [c**i for i in range(1, m + 1)]
    base = BlockList(spec.prefix_len, spec.prefix_value, counts, values1)

    touched = set()
    for p in transcript:
        if not 1 <= p <= base.length:
            raise ParameterError(f"transcript position {p} outside the list")
        k = base.block_of(p)
        if k is not None:
            touched.add(k)
    values2 = [values1[k] if k in touched else c ** (k + 2) for k in range(m)]
    other = BlockList(spec.prefix_len, spec.prefix_value, counts, values2)
    return base, other


# -- reports ----------------------------------------------------------------


@dataclass
class DefeatReport:
    """Outcome of one refereed game."""

    game: str
    n: int
    budget: int | None
    queries: int
    defeated: bool
    aborted: bool
    answer: object
    guaranteed: bool            # budget small enough that defeat was provable
    bound: float | None         # the guarantee threshold on the budget
    exhibit: str | None         # which list the answer fails on
    details: dict = field(default_factory=dict)
    transcript: list = field(default_factory=list)
    lists: tuple | None = None  # the concrete pair, for replay


def _d_sandwich_ok(total: Fraction, answer: float, d: float) -> bool:
    if not math.isfinite(answer):
        return False
    s = Fraction(answer)
    df = Fraction(d)
    return total / df <= s <= total * df


def referee_block_game(
    algorithm: str | Callable,
    spec: BlockListSpec,
    budget: int | None,
) -> DefeatReport:
    """Run a sum estimator against the block pair.

    With ``budget <= floor(3m/4)`` the estimator must leave blocks
    untouched, and its single answer cannot satisfy the d-sandwich for
    both lists; ``budget=None`` lifts the cap (no guarantee) so full
    algorithms can be run for contrast.
    """
    algo = SUM_ALGORITHMS[algorithm] if isinstance(algorithm, str) else algorithm
    base, _ = build_block_lists(spec, ())
    n = base.length
    channel = QueryChannel(lambda p: base.value_at(p), budget)

    answer: float | None = None
    aborted = False
    try:
        answer = algo(n, channel.query, spec.d, budget)
    except BudgetExceededError:
        aborted = True

    positions = {p for p, _ in channel.transcript}
    _, other = build_block_lists(spec, positions)
    s1 = base.exact_sum()
    s2 = other.exact_sum()

    cap = int(BETA * spec.m)
    guaranteed = budget is not None and budget <= cap
    if aborted:
        defeated, exhibit = True, None
        ok1 = ok2 = False
    else:
        ok1 = _d_sandwich_ok(s1, answer, spec.d)
        ok2 = _d_sandwich_ok(s2, answer, spec.d)
        defeated = not (ok1 and ok2)
        exhibit = None if not defeated else ("base" if not ok1 else "counterpart")

    return DefeatReport(
        game="block",
        n=n,
        budget=budget,
        queries=channel.used,
        defeated=defeated,
        aborted=aborted,
        answer=answer,
        guaranteed=guaranteed,
        bound=float(cap),
        exhibit=exhibit,
        details={
            "d": spec.d,
            "m": spec.m,
            "c": spec.c,
            "prefix": spec.prefix_kind,
            "sum_base": s1,
            "sum_counterpart": s2,
            "valid_on_base": ok1,
            "valid_on_counterpart": ok2,
            "untouched_blocks": spec.m - len({base.block_of(p) for p in positions} - {None}),
        },
        transcript=list(channel.transcript),
        lists=(base, other),
    )


# -- region game (adaptive 0/1 referee) --------------------------------------


@dataclass
class AdversaryState:
    """Referee state for the adaptive 0/1 region game.

    Positions at or below ``zero_end`` are committed to 0, positions at or
    above ``one_start`` to 1, everything between is undecided.  The live
    interval is [zero_end, n] and its committed right part [one_start, n];
    after j answers their sizes keep ratio at least n^(1/2^j).
    """

    n: int
    zero_end: int = 1
    one_start: int = 0  # set in __post_init__
    stage: int = 0
    transcript: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError("the region game needs n >= 2")
        if self.one_start == 0:
            self.one_start = self.n

    @property
    def interval_size(self) -> int:
        return self.n - self.zero_end + 1

    @property
    def right_size(self) -> int:
        return self.n - self.one_start + 1

    def decided(self, p: int) -> int | None:
        if p <= self.zero_end:
            return 0
        if p >= self.one_start:
            return 1
        return None

    def satisfies_size_invariant(self) -> bool:
        return ratio_power_at_least(self.interval_size, self.right_size, self.stage, self.n)


def adversary_answer(state: AdversaryState, p: int) -> int:
    """Answer one probe, keeping both candidate lists alive.

    Probes in committed territory replay the committed bit.  An undecided
    probe is answered 0 when the suffix [p, n] is still large relative to
    the committed right part (the live interval shrinks to [p, n]), and 1
    otherwise (the committed right part grows to [p, n]); either way the
    interval/right-part size ratio loses at most a square root.
    """
    n = state.n
    if not 1 <= p <= n:
        raise ParameterError(f"query position {p} outside [1, {n}]")
    if p <= state.zero_end:
        bit = 0
    elif p >= state.one_start:
        bit = 1
    else:
        suffix = n - p + 1
        interval = state.interval_size
        right = state.right_size
        # suffix/right >= sqrt(interval/right), squared to stay in integers
        if suffix * suffix * right >= interval * right * right:
            state.zero_end = p
            bit = 0
        else:
            state.one_start = p
            bit = 1
    state.stage += 1
    state.transcript.append((p, bit))
    return bit


def adversary_finalize(state: AdversaryState) -> tuple[ThresholdList, ThresholdList]:
    """Commit the undecided gap both ways.

    The first list keeps only the committed right part as ones; the second
    turns the whole undecided gap into ones.  Both replay the recorded
    transcript identically and differ as much as the invariant allows.
    """
    lean = ThresholdList(state.n, state.one_start)
    full = ThresholdList(state.n, state.zero_end + 1)
    return lean, full


def validate_01_region(lst: ThresholdList, region: Region, d: float) -> tuple[bool, str]:
    """Is ``region`` a valid d-approximate 1-region for the 0/1 list?"""
    if lst.ones() == 0:
        return (region.is_empty, "empty list of ones")
    if region.is_empty:
        return (False, "empty region but ones exist")
    if region.hi != lst.n or region.lo < 1:
        return (False, "region is not a suffix ending at n")
    if region.lo > lst.first_one:
        return (False, f"one at position {lst.first_one} excluded")
    ones = lst.ones_in(region.lo, region.hi)
    if Fraction(ones) * Fraction(d) >= region.size:
        return (True, "ok")
    return (False, f"{ones} ones cannot cover size {region.size} at factor {d}")


def region_game_bound(n: int, d: float) -> float:
    """Query floor below which no d-approximate region finder can be right."""
    return math.log2(math.log2(n)) - math.log2(math.log2(d + 1))


def referee_region_game(
    algorithm: str | Callable,
    n: int,
    d: float,
    budget: int | None,
) -> DefeatReport:
    """Play the adaptive referee against a 1-region finder."""
    algo = REGION_ALGORITHMS[algorithm] if isinstance(algorithm, str) else algorithm
    state = AdversaryState(n)
    channel = QueryChannel(lambda p: adversary_answer(state, p), budget)

    answer: Region | None = None
    aborted = False
    try:
        answer = algo(n, channel.query, d, budget)
    except BudgetExceededError:
        aborted = True

    lean, full = adversary_finalize(state)
    bound = region_game_bound(n, d)
    guaranteed = budget is not None and budget < math.floor(bound)

    if aborted:
        defeated, exhibit = True, None
        ok_lean = ok_full = False
        reason_lean = reason_full = "no answer produced within budget"
    else:
        ok_lean, reason_lean = validate_01_region(lean, answer, d)
        ok_full, reason_full = validate_01_region(full, answer, d)
        defeated = not (ok_lean and ok_full)
        exhibit = None if not defeated else ("lean" if not ok_lean else "full")

    size = None if answer is None else answer.size
    return DefeatReport(
        game="region",
        n=n,
        budget=budget,
        queries=channel.used,
        defeated=defeated,
        aborted=aborted,
        answer=answer,
        guaranteed=guaranteed,
        bound=bound,
        exhibit=exhibit,
        details={
            "d": d,
            "interval_size": state.interval_size,
            "right_size": state.right_size,
            # the two requirements no small-budget answer can meet at once:
            "needs_size_at_most": float(d) * state.right_size,
            "needs_size_at_least": state.interval_size - 1,
            "answer_size": size,
            "valid_on_lean": ok_lean,
            "valid_on_full": ok_full,
            "reason_lean": reason_lean,
            "reason_full": reason_full,
        },
        transcript=list(state.transcript),
        lists=(lean, full),
    )


# -- negative pair -----------------------------------------------------------


def negative_list_pair(m: int, skipped: int) -> tuple[list[float], list[float]]:
    """Two sorted lists of length m+1 with sums exactly 0 and 1.

    The base list is [-m(m+1), 2, 4, ..., 2m].  The twin increments the
    element at position ``skipped`` (1-based) by one; both stay sorted and
    agree everywhere else, so an algorithm that never reads that position
    answers identically for a sum of 0 and a sum of 1.
    """
    if m < 1:
        raise ParameterError("m must be positive")
    if not 1 <= skipped <= m + 1:
        raise ParameterError(f"skipped position {skipped} outside [1, {m + 1}]")
    base = [-float(m * (m + 1))] + [float(2 * i) for i in range(1, m + 1)]
    twin = list(base)
    twin[skipped - 1] += 1.0
    return base, twin


# -- built-in contenders ------------------------------------------------------


def _binary_search_region(n: int, query, limit: int | None) -> Region:
    """Binary search for the first 1, stopping after ``limit`` probes.

    Returns the containment-safe suffix starting just above the deepest
    position known to hold 0.
    """
    used = 0

    def ask(p: int) -> float:
        nonlocal used
        used += 1
        return query(p)

    if limit is not None and limit <= 0:
        return Region(1, n)
    if ask(n) < 1:
        return EMPTY
    lo, hi = 0, n  # ones start in (lo, hi]
    while hi - lo > 1 and (limit is None or used < limit):
        mid = (lo + hi) // 2
        if ask(mid) >= 1:
            hi = mid
        else:
            lo = mid
    return Region(lo + 1, n)


def truncated_binsearch(n, query, d, budget) -> Region:
    return _binary_search_region(n, query, budget if budget is not None else 0)


def full_binsearch(n, query, d, budget) -> Region:
    return _binary_search_region(n, query, None)


def approx_region_finder(n, query, d, budget) -> Region:
    delta = min(d - 1.0, 0.96875)
    view = SortedView.from_function(lambda i: float(query(i)), n, validate="none")
    return approximate_region(view, 1.0, delta, n)


def constant_output(n, query, d, budget) -> Region:
    return Region(1, n)


REGION_ALGORITHMS: dict[str, Callable] = {
    "truncated-binsearch": truncated_binsearch,
    "full-binsearch": full_binsearch,
    "approx-region": approx_region_finder,
    "constant-output": constant_output,
}


def scanner(n, query, d, budget) -> float:
    total = 0.0
    for i in range(1, n + 1):
        total += query(i)
    return total


def constant_zero(n, query, d, budget) -> float:
    return 0.0


def prefix_sampler(n, query, d, budget) -> float:
    k = min(budget if budget is not None else 64, n)
    if k <= 0:
        return 0.0
    total = sum(query(i) for i in range(1, k + 1))
    return total / k * n


def truncated_scanner(n, query, d, budget) -> float:
    k = min(budget if budget is not None else 64, n)
    return sum(query(i) for i in range(1, k + 1))


def approx_sum_estimator(n, query, d, budget) -> float:
    epsilon = min(d - 1.0, 0.999)
    view = SortedView.from_function(lambda i: float(query(i)), n, validate="none")
    return approximate_sum(view, epsilon, n).estimate


SUM_ALGORITHMS: dict[str, Callable] = {
    "scanner": scanner,
    "constant-0": constant_zero,
    "prefix-sampler": prefix_sampler,
    "truncated-scanner": truncated_scanner,
    "approx-sum": approx_sum_estimator,
}
