"""Acceptance gate: one test per shipped guarantee, each printing a
PASS/FAIL line with its measurements (run with ``pytest -s`` to see them).

Criterion 5 reproduces the classic n = 10^7 benchmark in query-count form;
two of its frozen thresholds sit below what the algorithm's own complexity
delivers at the smallest accuracy settings, so that test reports FAIL with
the measured numbers rather than a loosened assertion.
"""

import math
import random
import statistics
import time
from fractions import Fraction

from sortsum import (
    AdversaryState,
    BlockListSpec,
    RegionTrace,
    SortedView,
    adversary_answer,
    adversary_finalize,
    approximate_region,
    approximate_sum,
    build_block_lists,
    exact_b_region,
    exact_sum,
    negative_list_pair,
    referee_block_game,
    referee_region_game,
    verify_region_certificate,
    verify_sum,
)
from sortsum.adversary import BETA, REGION_ALGORITHMS, QueryChannel
from util import FAMILIES, log_uniform_int, random_sorted_list, random_threshold


def report(number: int, name: str, ok: bool, detail: str) -> bool:
    print(f"ACCEPTANCE {number} [{name}]: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


def test_criterion_1_approximation_sandwich():
    rng = random.Random(10**6 + 1)
    epsilons = [0.5, 0.1, 0.01, 0.001]
    failures = 0
    instances = 10_000
    start = time.perf_counter()
    for i in range(instances):
        n = log_uniform_int(rng, 1, 10**5)
        family = FAMILIES[i % len(FAMILIES)]
        eps = epsilons[i % len(epsilons)]
        values = random_sorted_list(rng, n, family)
        view = SortedView.from_array(values, validate="none")
        breakdown = approximate_sum(view, eps)
        cert = verify_sum(SortedView.from_array(values, validate="none"), n, breakdown.estimate, eps)
        if not cert.passed:
            failures += 1
            if failures <= 3:
                print("sandwich failure:", family, n, eps, cert)
    elapsed = time.perf_counter() - start
    ok = report(
        1,
        "approximation sandwich",
        failures == 0,
        f"{instances - failures}/{instances} inside the (1+eps) sandwich, {elapsed:.1f}s",
    )
    assert ok


def test_criterion_2_region_certificates():
    rng = random.Random(10**6 + 2)
    instances = 10_000
    failures = 0
    start = time.perf_counter()
    for i in range(instances):
        n = log_uniform_int(rng, 1, 10**4)
        values = random_sorted_list(rng, n, FAMILIES[i % len(FAMILIES)])
        if values[-1] <= 0.0:
            values[-1] = rng.uniform(1e-6, 10.0)
        b = random_threshold(rng, values)
        delta = rng.choice([0.999, 0.5, 0.1, 0.01, 0.001])
        region = approximate_region(SortedView.from_array(values, validate="none"), b, delta)
        cert = verify_region_certificate(
            SortedView.from_array(values, validate="none"), b, delta, region
        )
        exact = exact_b_region(SortedView.from_array(values, validate="none"), b)
        if not cert.passed or not region.contains_region(exact):
            failures += 1
            if failures <= 3:
                print("certificate failure:", n, b, delta, region, cert)
    elapsed = time.perf_counter() - start
    ok = report(
        2,
        "region certificates",
        failures == 0,
        f"{instances - failures}/{instances} certified, {elapsed:.1f}s",
    )
    assert ok


def test_criterion_3_region_query_complexity():
    worst = 0.0
    worst_case = None
    all_ok = True
    for n in (2**20, 2**30, 2**40):
        views = {
            "linear": lambda i: float(i),
            "geometric": lambda i: 2.0 ** ((i - n) / 2**18),
            "spike-tail": lambda i: 1.0 if i > n - 7 else 0.0,
        }
        for delta in (0.5, 0.01):
            bound = 4 * (math.log2(1 / delta) + math.log2(math.log2(n))) + 12
            for label, fn in views.items():
                for q in (1e-9, 0.25, 0.5, 0.75, 1 - 1e-12):
                    view = SortedView.from_function(fn, n)
                    b = max(fn(max(1, int(q * n))), 1e-12)
                    approximate_region(view, b, delta, n)
                    ratio = view.queries / bound
                    if ratio > worst:
                        worst, worst_case = ratio, (n, delta, label, q, view.queries, bound)
                    if view.queries > bound:
                        all_ok = False
    ok = report(
        3,
        "region query complexity",
        all_ok,
        f"worst queries/bound = {worst:.2f} at {worst_case}",
    )
    assert ok


def test_criterion_4_sum_cycle_bound():
    all_ok = True
    details = []
    for n in (2**20, 2**30, 2**40):
        for eps in (0.1, 0.01):
            view = SortedView.from_function(float, n)
            breakdown = approximate_sum(view, eps)
            delta = breakdown.delta
            ratio_term = math.log2(float(n))  # x(i)=i gives x_max/x_min = n
            bound = 3 * (1 / delta) * min(math.log2(n), ratio_term) + 8
            details.append(f"n=2^{int(math.log2(n))},eps={eps}: t={breakdown.cycles} <= {bound:.0f}")
            if breakdown.cycles > bound:
                all_ok = False
    # two-valued list: the min(...) collapses to the value-ratio term
    n = 2**30
    half = n // 2
    view = SortedView.from_function(lambda i: 1.0 if i <= half else 2.0, n)
    breakdown = approximate_sum(view, 0.1)
    ratio_bound = 3 * (1 / breakdown.delta) * 1.0 + 8
    details.append(f"two-valued: t={breakdown.cycles} <= {ratio_bound:.0f}")
    if breakdown.cycles > ratio_bound:
        all_ok = False
    ok = report(4, "sum cycle bound", all_ok, "; ".join(details))
    assert ok


def test_criterion_5_benchmark_reproduction():
    n = 10**7
    repeats = 3
    budget = n // 100

    def timed(fn):
        times = []
        result = None
        for _ in range(repeats):
            t0 = time.perf_counter()
            result = fn()
            times.append(time.perf_counter() - t0)
        return result, statistics.median(times)

    exact_view = SortedView.from_function(float, n)

    def run_exact():
        exact_view.reset_ledger()
        return exact_sum(exact_view)

    exact_value, exact_wall = timed(run_exact)
    queries_exact = exact_view.queries

    measurements = {}
    walls = {}
    cycles = {}
    for eps in (0.1, 0.01, 0.001, 0.0001):
        view = SortedView.from_function(float, n)

        def run_approx():
            view.reset_ledger()
            return approximate_sum(view, eps)

        breakdown, wall = timed(run_approx)
        measurements[eps] = view.queries
        walls[eps] = wall
        cycles[eps] = breakdown.cycles
        assert exact_value / (1 + eps) <= breakdown.estimate <= exact_value * (1 + eps)

    tiny_view = SortedView.from_function(float, n)
    tiny_breakdown = approximate_sum(tiny_view, 1e-5)
    queries_tiny = tiny_view.queries

    ok_budget = all(q < budget for q in measurements.values())
    ok_exact_count = queries_exact == n
    ok_wall = all(walls[eps] < exact_wall for eps in (0.1, 0.01, 0.001))
    ratio = queries_tiny / measurements[0.0001]
    ok_blowup = ratio >= 5.0

    detail = (
        f"queries={ {e: q for e, q in measurements.items()} } vs n/100={budget}; "
        f"exact={queries_exact} queries, median {exact_wall:.2f}s; "
        f"approx medians { {e: round(w, 3) for e, w in walls.items()} }; "
        f"eps=1e-5 blowup x{ratio:.2f} in queries "
        f"(x{tiny_breakdown.cycles / cycles[0.0001]:.1f} in cycles)"
    )
    ok = report(
        5,
        "benchmark reproduction",
        ok_budget and ok_exact_count and ok_wall and ok_blowup,
        detail,
    )
    assert ok_exact_count and ok_wall, detail
    assert ok, detail


def test_criterion_6_region_adversary():
    n, d, budget = 2**32, 3.0, 3
    floor_bound = math.floor(math.log2(math.log2(n)) - math.log2(math.log2(d + 1)))
    assert budget < floor_bound == 4

    defeated_all = True
    for name in REGION_ALGORITHMS:
        rep = referee_region_game(name, n, d, budget)
        if not rep.defeated:
            defeated_all = False

    rng = random.Random(10**6 + 6)
    games = 100_000
    invariant_ok = True
    replay_ok = True
    start = time.perf_counter()
    for _ in range(games):
        size = rng.choice([2, 3, 64, 1024, 2**16, 2**32])
        state = AdversaryState(size)
        for _ in range(rng.randrange(0, 9)):
            adversary_answer(state, rng.randrange(1, size + 1))
            if not state.satisfies_size_invariant():
                invariant_ok = False
                print("invariant broken:", size, state.stage, state.zero_end, state.one_start)
        lean, full = adversary_finalize(state)
        for p, bit in state.transcript:
            if lean.value_at(p) != bit or full.value_at(p) != bit:
                replay_ok = False
    elapsed = time.perf_counter() - start
    ok = report(
        6,
        "adaptive region adversary",
        defeated_all and invariant_ok and replay_ok,
        f"builtins defeated at budget {budget} (bound {floor_bound}); "
        f"{games} fuzz games invariant+replay in {elapsed:.1f}s",
    )
    assert ok


def test_criterion_7_block_harness():
    spec = BlockListSpec.build(2.0, Fraction(1, 2), 16, prefix="zeros")
    assert spec.c == 18
    budget = int(BETA * spec.m)
    assert budget == 12

    defeated = {}
    for name in ("prefix-sampler", "truncated-scanner"):
        rep = referee_block_game(name, spec, budget)
        defeated[name] = rep.defeated and rep.guaranteed

    base, other = build_block_lists(spec, ())
    c, m = spec.c, spec.m
    s1 = base.exact_sum()
    s2 = other.exact_sum()
    arithmetic_ok = s1 <= (spec.delta + 1) * m * c**m and s2 >= (m - budget) * c ** (m + 1)

    # the pair produced inside an actual game must satisfy the same bounds
    rep = referee_block_game("prefix-sampler", spec, budget)
    game_s2 = rep.details["sum_counterpart"]
    arithmetic_ok = arithmetic_ok and game_s2 >= (m - budget) * c ** (m + 1)

    ok = report(
        7,
        "block-pair harness",
        all(defeated.values()) and arithmetic_ok,
        f"defeated={defeated}; S1={s1} <= {(spec.delta + 1) * m * c**m}; "
        f"S2={s2} >= {(m - budget) * c**(m + 1)}",
    )
    assert ok


def test_criterion_8_negative_pair():
    all_ok = True
    details = []
    for m in (10, 1000):
        for skipped in (1, 2, m + 1):
            base, twin = negative_list_pair(m, skipped)
            s0 = exact_sum(SortedView.from_array(base, validate="none"))
            s1 = exact_sum(SortedView.from_array(twin, validate="none"))
            agree = all(
                base[i] == twin[i] for i in range(m + 1) if i != skipped - 1
            )
            if s0 != 0.0 or s1 != 1.0 or not agree:
                all_ok = False
        details.append(f"m={m}: sums (0.0, 1.0), twins agree off the skipped slot")
    ok = report(8, "negative-element pair", all_ok, "; ".join(details))
    assert ok


def test_criterion_9_dyadic_exactness():
    rng = random.Random(10**6 + 9)
    runs = 0
    checked = 0
    mismatches = 0
    while runs < 1000:
        n = log_uniform_int(rng, 3, 10**6)
        view = SortedView.from_function(float, n)
        b = rng.uniform(1.0, float(n))
        delta = rng.choice([0.9, 0.5, 0.1, 0.01, 0.001, 0.0001])
        trace = RegionTrace()
        approximate_region(view, b, delta, trace=trace)
        if trace.phase1_tower_exponent is None:
            continue
        runs += 1
        k = trace.phase1_tower_exponent
        r = Fraction(1 << (1 << k))
        for rec in trace.cycles:
            assert Fraction(rec.r_num, 1 << rec.r_exp) == r
            product = rec.m.as_fraction() * r
            checked += 1
            if math.floor(product) != rec.probe_floor:
                mismatches += 1
            if rec.accepted:
                r = product
    ok = report(
        9,
        "exact dyadic arithmetic",
        mismatches == 0,
        f"{checked} floor products recomputed with rationals over {runs} runs, "
        f"{mismatches} mismatches",
    )
    assert ok
