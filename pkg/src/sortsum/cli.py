"""Command-line interface.

Subcommands:

* ``sum``       - approximate the sum of a generated or file-backed list
* ``region``    - find an approximate threshold region
* ``bench``     - compare the estimator against brute-force summation
* ``adversary`` - run the lower-bound games against built-in algorithms

Reports print as JSON (default) or CSV; wall-time fields are the only
nondeterministic part of any report.  Exit codes: 0 on success/pass, 1 when
a verification verdict fails or a game ends in defeat, 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import adversary as adv
from .access import QueryLedger, Region, SortedView
from .errors import (
    NegativeElementError,
    ParameterError,
    SortsumError,
    UnsortedInputError,
)
from .generators import (
    GeneratorSpec,
    first_inversion,
    load_file,
    make_view,
    parse_generator,
)
from .oracle import exact_b_region, exact_sum, verify_region_certificate, verify_sum
from .region import approximate_region
from .sums import approximate_sum

LADDER_NOTE = (
    "shrink factors use the exact two-phase ladder (2^(2^k) then 1 + 2^-j); "
    "no square roots or lookup tables are evaluated"
)


def _sanitize(value):
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, Region):
        return None if value.is_empty else [value.lo, value.hi]
    if isinstance(value, adv.ThresholdList):
        return {"n": value.n, "first_one": value.first_one}
    if isinstance(value, adv.BlockList):
        return {"n": len(value), "blocks": len(value.counts)}
    if isinstance(value, dict):
        return {k: _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    return value


def _emit(payload: dict, fmt: str) -> None:
    payload = _sanitize(payload)
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
        return
    flat: dict[str, object] = {}

    def flatten(prefix: str, obj) -> None:
        for k, v in obj.items():
            key = f"{prefix}{k}"
            if isinstance(v, dict):
                flatten(f"{key}.", v)
            elif isinstance(v, list):
                flat[key] = ";".join(str(x) for x in v)
            else:
                flat[key] = v

    flatten("", payload)
    keys = sorted(flat)
    print(",".join(keys))
    print(",".join(str(flat[k]) for k in keys))


def _build_view(args, *, need_nonnegative: bool) -> tuple[SortedView, str]:
    ledger = QueryLedger()
    if args.generator and args.input:
        raise ParameterError("pass either --generator or --input, not both")
    if args.generator:
        spec = parse_generator(args.generator)
        if args.n is not None and spec.kind != "powerblocks":
            spec = GeneratorSpec(spec.kind, args.n, spec.params, args.seed)
        return make_view(spec, ledger=ledger), spec.label()
    if args.input:
        values = load_file(args.input)
        idx = first_inversion(values)
        if idx is not None:
            raise UnsortedInputError(idx)
        if need_nonnegative and values and values[0] < 0:
            raise NegativeElementError(
                f"input holds a negative element at position 1 ({values[0]}); no "
                "sublinear-time approximation can bound the error once negative "
                "elements appear (see `sortsum adversary negative`)"
            )
        return SortedView.from_array(values, ledger=ledger, validate="none"), str(args.input)
    raise ParameterError("an input is required: --generator or --input")


@dataclass
class RunReport:
    command: str
    source: str
    n: int
    queries: int
    walltime: float
    fields: dict

    def to_dict(self) -> dict:
        payload = {
            "command": self.command,
            "source": self.source,
            "n": self.n,
            "queries": self.queries,
            "walltime": self.walltime,
        }
        payload.update(self.fields)
        return payload


def cmd_sum(args) -> int:
    view, label = _build_view(args, need_nonnegative=True)
    start = time.perf_counter()
    breakdown = approximate_sum(view, args.epsilon)
    elapsed = time.perf_counter() - start
    fields: dict = {
        "epsilon": args.epsilon,
        "estimate": breakdown.estimate,
        "cycles": breakdown.cycles,
        "regions": len(breakdown.entries),
    }
    exit_code = 0
    if args.exact:
        oracle_view = SortedView(
            data=view._data, fn=view._fn, n=view.length, validate="none"
        )
        cert = verify_sum(oracle_view, view.length, breakdown.estimate, args.epsilon)
        fields["exact"] = cert.exact
        fields["ratio"] = cert.ratio
        fields["verdict"] = "pass" if cert.passed else "fail"
        if not cert.passed:
            exit_code = 1
    report = RunReport("sum", label, view.length, view.queries, elapsed, fields)
    _emit(report.to_dict(), args.format)
    return exit_code


def cmd_region(args) -> int:
    view, label = _build_view(args, need_nonnegative=False)
    start = time.perf_counter()
    region = approximate_region(view, args.b, args.delta)
    elapsed = time.perf_counter() - start
    fields: dict = {
        "b": args.b,
        "delta": args.delta,
        "region": region,
        "size": region.size,
    }
    exit_code = 0
    if args.exact:
        oracle_view = SortedView(
            data=view._data, fn=view._fn, n=view.length, validate="none"
        )
        cert = verify_region_certificate(oracle_view, args.b, args.delta, region)
        exact = exact_b_region(oracle_view, args.b)
        fields["exact_region"] = exact
        fields["hits"] = cert.hits
        fields["verdict"] = "pass" if cert.passed else "fail"
        if not cert.passed:
            exit_code = 1
    report = RunReport("region", label, view.length, view.queries, elapsed, fields)
    _emit(report.to_dict(), args.format)
    return exit_code


def _timed_runs(fn, repeats: int) -> tuple[object, float]:
    times = []
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return result, statistics.median(times)


def cmd_bench(args) -> int:
    epsilons = [float(e) for e in args.epsilons.split(",") if e]
    n = args.n
    spec = parse_generator(args.generator) if args.generator else GeneratorSpec("linear", n)
    if spec.n != n:
        spec = GeneratorSpec(spec.kind, n, spec.params, args.seed)

    # The exact pass does not depend on epsilon; time it once and reuse.
    exact_ledger = QueryLedger()
    exact_view = make_view(spec, ledger=exact_ledger)

    def run_exact():
        exact_ledger.reset()
        return exact_sum(exact_view)

    exact_value, exact_wall = _timed_runs(run_exact, args.repeats)
    exact_queries = exact_ledger.count

    rows = []
    worst_exit = 0
    for eps in epsilons:
        ledger = QueryLedger()
        view = make_view(spec, ledger=ledger)

        def run_approx():
            ledger.reset()
            return approximate_sum(view, eps)

        breakdown, approx_wall = _timed_runs(run_approx, args.repeats)
        queries = ledger.count
        bound = 1.0 + eps
        passed = exact_value / bound <= breakdown.estimate <= exact_value * bound
        if not passed:
            worst_exit = 1
        rows.append(
            {
                "epsilon": eps,
                "n": n,
                "estimate": breakdown.estimate,
                "exact": exact_value,
                "cycles": breakdown.cycles,
                "queries": queries,
                "exact_queries": exact_queries,
                "walltime_approx": approx_wall,
                "walltime_exact": exact_wall,
                "speedup": exact_wall / approx_wall if approx_wall > 0 else float("inf"),
                "verdict": "pass" if passed else "fail",
                "note": "may exceed brute force" if queries >= n else "",
            }
        )
    payload = {
        "command": "bench",
        "generator": spec.label(),
        "repeats": args.repeats,
        "ladder": LADDER_NOTE,
        "rows": rows,
    }
    if args.format == "csv":
        keys = sorted(rows[0])
        print(",".join(keys))
        for row in rows:
            print(",".join(str(row[k]) for k in keys))
    else:
        print(json.dumps(_sanitize(payload), sort_keys=True))
    return worst_exit


def cmd_adversary(args) -> int:
    game = args.game
    if game == "block":
        delta = Fraction(args.block_delta)
        spec = adv.BlockListSpec.build(args.d, delta, args.m, prefix=args.prefix)
        budget = args.budget if args.budget is not None else int(adv.BETA * args.m)
        if args.algo not in adv.SUM_ALGORITHMS:
            raise ParameterError(
                f"unknown block-game algorithm {args.algo!r}; "
                f"choose from {sorted(adv.SUM_ALGORITHMS)}"
            )
        report = adv.referee_block_game(args.algo, spec, budget)
    elif game == "region":
        budget = args.budget if args.budget is not None else 3
        if args.algo not in adv.REGION_ALGORITHMS:
            raise ParameterError(
                f"unknown region-game algorithm {args.algo!r}; "
                f"choose from {sorted(adv.REGION_ALGORITHMS)}"
            )
        report = adv.referee_region_game(args.algo, args.n, args.d, budget)
    elif game == "negative":
        skipped = args.skipped if args.skipped is not None else args.m + 1
        base, twin = adv.negative_list_pair(args.m, skipped)
        view1 = SortedView.from_array(base, validate="none")
        view2 = SortedView.from_array(twin, validate="none")
        payload = {
            "command": "adversary",
            "game": "negative",
            "m": args.m,
            "n": args.m + 1,
            "skipped": skipped,
            "sum_base": exact_sum(view1),
            "sum_twin": exact_sum(view2),
            "head": base[0],
            "differing_value": (base[skipped - 1], twin[skipped - 1]),
        }
        _emit(payload, args.format)
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise ParameterError(f"unknown game {game!r}")

    payload = {
        "command": "adversary",
        "game": report.game,
        "algo": args.algo,
        "n": report.n,
        "budget": report.budget,
        "queries": report.queries,
        "defeated": report.defeated,
        "aborted": report.aborted,
        "guaranteed": report.guaranteed,
        "bound": report.bound,
        "exhibit": report.exhibit,
        "answer": report.answer,
        "details": report.details,
    }
    _emit(payload, args.format)
    return 1 if report.defeated else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sortsum",
        description="Sublinear approximate summation of sorted lists, "
        "with oracles and lower-bound games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, *, epsilon=False):
        p.add_argument("--generator", help="synthetic input, e.g. linear:1000")
        p.add_argument("--input", help="path to a text or .bin number file")
        p.add_argument("--n", type=int, default=None, help="override input length")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--exact", action="store_true", help="also run the brute-force oracle")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if epsilon:
            p.add_argument("--epsilon", type=float, default=0.1)

    p_sum = sub.add_parser("sum", help="approximate the sum of a sorted list")
    add_io(p_sum, epsilon=True)
    p_sum.set_defaults(fn=cmd_sum)

    p_region = sub.add_parser("region", help="find an approximate threshold region")
    add_io(p_region)
    p_region.add_argument("--b", type=float, required=True, help="threshold")
    p_region.add_argument("--delta", type=float, default=0.5, help="slack in (0,1)")
    p_region.set_defaults(fn=cmd_region)

    p_bench = sub.add_parser("bench", help="estimator vs brute force on x(i)=i")
    p_bench.add_argument("--epsilons", default="0.1,0.01,0.001,0.0001")
    p_bench.add_argument("--n", type=int, default=10**7)
    p_bench.add_argument(
        "--repeats",
        type=int,
        default=3,
        help="timing repeats per row (the classic setup uses 100)",
    )
    p_bench.add_argument("--generator", default=None)
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument("--format", choices=("json", "csv"), default="json")
    p_bench.set_defaults(fn=cmd_bench)

    p_adv = sub.add_parser("adversary", help="run a lower-bound game")
    p_adv.add_argument("game", choices=("block", "region", "negative"))
    p_adv.add_argument("--d", type=float, default=None, help="approximation factor")
    p_adv.add_argument("--m", type=int, default=None)
    p_adv.add_argument("--n", type=int, default=2**32)
    p_adv.add_argument("--budget", type=int, default=None)
    p_adv.add_argument("--algo", default=None)
    p_adv.add_argument(
        "--block-delta", default="1/2", help="rational slack for the block ratio"
    )
    p_adv.add_argument("--prefix", choices=("zeros", "single", "none"), default="zeros")
    p_adv.add_argument("--skipped", type=int, default=None)
    p_adv.add_argument("--format", choices=("json", "csv"), default="json")
    p_adv.set_defaults(fn=cmd_adversary)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "adversary":
        if args.d is None:
            args.d = 2.0 if args.game == "block" else 3.0
        if args.m is None:
            args.m = 16 if args.game == "block" else 1000
        if args.algo is None:
            args.algo = "prefix-sampler" if args.game == "block" else "truncated-binsearch"
    try:
        return args.fn(args)
    except (SortsumError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
