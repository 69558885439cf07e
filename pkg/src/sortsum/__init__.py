"""sortsum: sublinear approximate summation of sorted lists.

The package provides a query-metered access layer over sorted data, a
threshold-region search running in O(log(1/delta) + log log n) element
reads, a (1+epsilon)-approximate summation built on top of it, brute-force
oracles and certificate checkers, and executable adversary games that
demonstrate the matching query lower bounds.
"""

from .access import EMPTY, NEG_INF, QueryLedger, Region, SortedView, region_size
from .adversary import (
    AdversaryState,
    BlockListSpec,
    DefeatReport,
    adversary_answer,
    adversary_finalize,
    build_block_lists,
    negative_list_pair,
    referee_block_game,
    referee_region_game,
)
from .errors import (
    BudgetExceededError,
    MalformedCertificateError,
    NegativeElementError,
    OutOfRangeError,
    ParameterError,
    SortsumError,
    UnsortedInputError,
)
from .generators import GeneratorSpec, make_view, parse_generator
from .oracle import (
    RegionCertificate,
    SumCertificate,
    exact_b_region,
    exact_sum,
    verify_region_certificate,
    verify_sum,
)
from .region import LadderValue, RegionTrace, approximate_region, ladder_step
from .sums import RegionSum, SumBreakdown, approximate_sum

__version__ = "0.1.0"

__all__ = [
    "EMPTY",
    "NEG_INF",
    "QueryLedger",
    "Region",
    "SortedView",
    "region_size",
    "LadderValue",
    "RegionTrace",
    "approximate_region",
    "ladder_step",
    "RegionSum",
    "SumBreakdown",
    "approximate_sum",
    "RegionCertificate",
    "SumCertificate",
    "exact_b_region",
    "exact_sum",
    "verify_region_certificate",
    "verify_sum",
    "GeneratorSpec",
    "make_view",
    "parse_generator",
    "AdversaryState",
    "BlockListSpec",
    "DefeatReport",
    "adversary_answer",
    "adversary_finalize",
    "build_block_lists",
    "negative_list_pair",
    "referee_block_game",
    "referee_region_game",
    "SortsumError",
    "ParameterError",
    "OutOfRangeError",
    "UnsortedInputError",
    "NegativeElementError",
    "MalformedCertificateError",
    "BudgetExceededError",
]
