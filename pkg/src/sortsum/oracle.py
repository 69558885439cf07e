"""Brute-force references and certificate checkers.

Everything here is deliberately simple and independent of the sublinear
search machinery, so it can vouch for it: exact summation by plain
accumulation, exact threshold regions by scanning, and checkers that take a
claimed answer apart against the definitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .access import EMPTY, Region, SortedView
from .errors import MalformedCertificateError


def exact_sum(view: SortedView, n: int | None = None) -> float:
    """Sum of view[1..n] by left-to-right binary64 accumulation.

    Makes exactly n queries; n = 0 yields 0.0.
    """
    n = view.length if n is None else int(n)
    total = 0.0
    get = view.get
    for i in range(1, n + 1):
        total += get(i)
    return total


def exact_b_region(
    view: SortedView,
    b: float,
    n: int | None = None,
    *,
    method: str = "binary",
) -> Region:
    """The maximal suffix [n', n] with view[n'] >= b, or empty if none.

    ``method`` is "binary" (default) or "linear"; both are exact, the
    linear scan exists as a cross-check for the binary one.  Query counts
    are irrelevant for oracle use.
    """
    n = view.length if n is None else int(n)
    if n < 1:
        return EMPTY
    if view.get(n) < b:
        return EMPTY
    if method == "linear":
        start = n
        while start > 1 and view.get(start - 1) >= b:
            start -= 1
        return Region(start, n)
    if method != "binary":
        raise ValueError(f"unknown method: {method!r}")
    # Invariant: view[hi] >= b, and view[lo] < b whenever lo >= 1.
    lo, hi = 0, n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if view.get(mid) >= b:
            hi = mid
        else:
            lo = mid
    return Region(hi, n)


@dataclass(frozen=True)
class RegionCertificate:
    """Outcome of :func:`verify_region_certificate`."""

    passed: bool
    counterexample: int | None  # offending position when the check fails
    hits: int                   # positions in the region with value >= b
    size: int                   # region size (0 for empty)
    reason: str


def verify_region_certificate(
    view: SortedView,
    b: float,
    delta: float,
    region: Region,
    n: int | None = None,
) -> RegionCertificate:
    """Check that ``region`` is a valid (1+delta)-approximate b-region.

    Passes iff either the region is empty and view[n] < b, or the region is
    a suffix [s, n] that contains every position with value >= b and in
    which hits * (1+delta) >= size.  The count comparison is exact
    (integer count, rational delta), so boundary cases cannot be lost to
    division rounding.
    """
    n = view.length if n is None else int(n)
    if region.is_empty:
        if view.get(n) < b:
            return RegionCertificate(True, None, 0, 0, "empty region, maximum below threshold")
        return RegionCertificate(False, n, 0, 0, "empty region but view[n] >= b")
    if region.hi != n:
        raise MalformedCertificateError(f"region must end at n={n}, got {region}")
    if region.lo < 1:
        raise MalformedCertificateError(f"region start must be >= 1, got {region}")

    s = region.lo
    # Containment: sorted order makes the single position below the region
    # decisive. (view[s-1] for s = 1 is the free -inf sentinel.)
    below = view.get(s - 1)
    if below >= b:
        return RegionCertificate(False, s - 1, 0, region.size, "position below region holds >= b")

    exact = exact_b_region(view, b, n)
    hits = 0 if exact.is_empty else exact.size  # exact region is a suffix inside [s, n]
    size = region.size
    if Fraction(hits) * (1 + Fraction(delta)) >= size:
        return RegionCertificate(True, None, hits, size, "ok")
    return RegionCertificate(
        False, s, hits, size, f"only {hits} hits in a region of {size} (1+delta coverage fails)"
    )


@dataclass(frozen=True)
class SumCertificate:
    """Outcome of :func:`verify_sum`: the exact sum next to the estimate."""

    exact: float
    estimate: float
    epsilon: float
    ratio: float  # estimate / exact (inf when exact == 0 and estimate != 0)
    passed: bool


def verify_sum(view: SortedView, n: int, estimate: float, epsilon: float) -> SumCertificate:
    """Check exact/(1+eps) <= estimate <= (1+eps)*exact (0 must match 0)."""
    total = exact_sum(view, n)
    if total == 0.0:
        passed = estimate == 0.0
        ratio = 1.0 if passed else float("inf")
        return SumCertificate(total, estimate, epsilon, ratio, passed)
    bound = 1.0 + epsilon
    passed = total / bound <= estimate <= total * bound
    return SumCertificate(total, estimate, epsilon, estimate / total, passed)
