"""(1+epsilon)-approximate summation of a sorted nonnegative list.

The estimator peels certified threshold regions off the right end of the
list.  Each cycle finds an approximate region of positions holding at least
the current threshold, credits that region with size * threshold, then
restarts just below it with a threshold read from the new right end.  The
thresholds decay at least geometrically, so for accuracy epsilon the number
of cycles is O((1/epsilon) * min(log n, log(x_max/x_min))) and each cycle
costs O(log(1/epsilon) + log log n) queries.
"""

from __future__ import annotations

from dataclasses import dataclass

from .access import Region, SortedView
from .errors import InternalInvariantError, NegativeElementError, ParameterError
from .region import approximate_region


@dataclass(frozen=True)
class RegionSum:
    """One cascade entry: a region, its threshold, and its credited mass."""

    region: Region
    threshold: float
    contribution: float


@dataclass
class SumBreakdown:
    """Result of :func:`approximate_sum`.

    ``entries`` lists the regions right-to-left as produced; consecutive
    regions tile the suffix of the list they cover (each next region ends
    one position left of the previous region's start), and consecutive
    thresholds decay strictly faster than 1/(1+delta).
    """

    entries: list[RegionSum]
    estimate: float
    cycles: int
    delta: float
    epsilon: float
    n: int


def approximate_sum(view: SortedView, epsilon: float, n: int | None = None) -> SumBreakdown:
    """Estimate ``sum(view[1..n])`` within a (1+epsilon) factor.

    Requires the view to be nondecreasing and nonnegative on [1, n].  A
    negative value observed at any threshold anchor aborts the run: with
    even one negative element, no sublinear algorithm can bound the relative
    error, so refusing is the only honest answer.
    """
    if not (0.0 < epsilon < 1.0):
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    n = view.length if n is None else int(n)
    if n < 1:
        raise ParameterError("n must be positive")
    if n > view.length:
        raise ParameterError(f"n={n} exceeds view length {view.length}")

    delta = 0.75 * epsilon
    cache: dict[int, float] = {}

    top = view.get(n)
    cache[n] = top
    if top < 0.0:
        raise NegativeElementError(f"negative element {top} at position {n}")
    if top == 0.0:
        return SumBreakdown([], 0.0, 0, delta, epsilon, n)

    # Positions whose values fall below this cutoff may be dropped: at most
    # n of them exist, so their total is below delta * top / (3 * (1+epsilon)),
    # which is exactly what the (1+epsilon) lower bound can absorb next to
    # the (1+delta) per-region slack.
    cutoff = delta * top / (3.0 * n * (1.0 + epsilon))
    one_plus_delta = 1.0 + delta

    entries: list[RegionSum] = []
    estimate = 0.0
    right_end = n
    anchor = top  # value at the current right end; always cached already

    # Loop while the anchor value itself clears the cutoff.  This makes the
    # drop bound above hold verbatim: once the anchor falls below the
    # cutoff, so does everything left of it.
    while anchor >= cutoff:
        b = anchor / one_plus_delta
        region = approximate_region(view, b, delta, right_end, known=cache)
        if region.is_empty:
            # b <= anchor = view[right_end], so the region cannot be empty.
            raise InternalInvariantError("region search returned empty inside the cascade")
        if region.hi != right_end:
            raise InternalInvariantError("region does not end at the current right end")
        contribution = region.size * b
        entries.append(RegionSum(region, b, contribution))
        estimate += contribution

        right_end = region.lo - 1
        if right_end < 1:
            break
        anchor = cache.get(right_end)
        if anchor is None:
            anchor = view.get(right_end)
            cache[right_end] = anchor
        if anchor < 0.0:
            raise NegativeElementError(f"negative element {anchor} at position {right_end}")

    return SumBreakdown(entries, estimate, len(entries), delta, epsilon, n)
