"""Shared helpers for the test suite: randomized sorted-instance factories."""

from __future__ import annotations

import math
import random

FAMILIES = ("linear", "constant", "geometric", "power-blocks", "single-spike", "many-zeros")


def log_uniform_int(rng: random.Random, lo: int, hi: int) -> int:
    return int(math.exp(rng.uniform(math.log(lo), math.log(hi + 1))))


def random_sorted_list(rng: random.Random, n: int, family: str | None = None) -> list[float]:
    """A nondecreasing nonnegative list of length n from one of six shapes."""
    family = family or rng.choice(FAMILIES)
    if n == 0:
        return []
    if family == "linear":
        slope = rng.uniform(0.0, 10.0)
        offset = rng.uniform(0.0, 100.0)
        return [offset + slope * i for i in range(1, n + 1)]
    if family == "constant":
        value = rng.choice([0.0, rng.uniform(0.0, 100.0)])
        return [value] * n
    if family == "geometric":
        ratio = rng.uniform(1.0005, 4.0)
        top = rng.uniform(1.0, 1e6)
        return [top * ratio ** float(i - n) for i in range(1, n + 1)]
    if family == "power-blocks":
        values: list[float] = []
        value = rng.uniform(1e-3, 1.0)
        while len(values) < n:
            width = rng.randrange(1, max(2, n // 3 + 1))
            values.extend([value] * width)
            value *= rng.uniform(1.5, 8.0)
        return values[:n]
    if family == "single-spike":
        spike = rng.uniform(0.5, 1e6)
        return [0.0] * (n - 1) + [spike]
    if family == "many-zeros":
        tail = rng.randrange(1, n + 1)
        value = rng.uniform(1e-6, 1e3)
        return [0.0] * (n - tail) + [value] * tail
    raise ValueError(f"unknown family {family!r}")


def random_threshold(rng: random.Random, values: list[float]) -> float:
    """A positive threshold that lands in, around, or past the value range."""
    top = values[-1]
    choice = rng.randrange(5)
    if choice == 0:
        return rng.uniform(1e-9, max(top, 1.0) * 1.5) or 1e-9
    if choice == 1:  # exactly at an element (ties matter)
        v = values[rng.randrange(len(values))]
        if v > 0:
            return v
        return rng.uniform(1e-9, 1.0)
    if choice == 2:  # just above the maximum
        return top * 1.0000001 + 1e-9
    if choice == 3:  # minuscule: everything qualifies
        return 1e-12
    mid = values[rng.randrange(len(values))]
    return mid + rng.uniform(1e-9, 1.0)
