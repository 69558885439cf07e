"""Synthetic input generators and file ingestion.

Synthetic inputs are function-backed: a view over ``x(i)`` never allocates
O(n) memory, which is what makes billion-element benchmark runs possible.
Files come in two formats: text with one number per line (``#`` comments
allowed) and raw binary (8-byte little-endian length header followed by
binary64 values).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .access import QueryLedger, SortedView
from .errors import UnsortedInputError

KINDS = (
    "linear",
    "constant",
    "geometric",
    "powerblocks",
    "zipf",
    "single-spike",
    "many-zeros",
    "file",
)

_ALIASES = {
    "zipf-like": "zipf",
    "spike": "single-spike",
    "zeros": "many-zeros",
}


@dataclass(frozen=True)
class GeneratorSpec:
    """A parsed generator description: kind, declared length, parameters."""

    kind: str
    n: int
    params: tuple[float, ...] = ()
    seed: int | None = None

    def label(self) -> str:
        bits = [self.kind, str(self.n)] + [repr(p) for p in self.params]
        return ":".join(bits)


def parse_generator(text: str) -> GeneratorSpec:
    """Parse ``kind:n[:param...]`` strings, e.g. ``linear:100``."""
    parts = text.split(":")
    kind = _ALIASES.get(parts[0], parts[0])
    if kind not in KINDS or kind == "file":
        raise ValueError(f"unknown generator kind: {parts[0]!r}")
    if kind == "constant":
        # constant:value:n
        if len(parts) != 3:
            raise ValueError("constant generator takes constant:<value>:<n>")
        return GeneratorSpec(kind, int(parts[2]), (float(parts[1]),))
    if kind == "powerblocks":
        # powerblocks:c:m builds m blocks; block i holds c^(m-i) copies of c^i.
        if len(parts) != 3:
            raise ValueError("powerblocks takes powerblocks:<c>:<m>")
        c, m = int(parts[1]), int(parts[2])
        n = (c**m - 1) // (c - 1)
        return GeneratorSpec(kind, n, (float(c), float(m)))
    if len(parts) < 2:
        raise ValueError(f"generator {kind!r} needs a length: {kind}:<n>[:params]")
    n = int(parts[1])
    params = tuple(float(p) for p in parts[2:])
    return GeneratorSpec(kind, n, params)


def generator_function(spec: GeneratorSpec) -> Callable[[int], float]:
    """Build the pure position->value function for a synthetic spec."""
    kind, n, params = spec.kind, spec.n, spec.params
    if kind == "linear":
        slope = params[0] if len(params) > 0 else 1.0
        offset = params[1] if len(params) > 1 else 0.0
        return lambda i: offset + slope * i
    if kind == "constant":
        value = params[0]
        return lambda i: value
    if kind == "geometric":
        ratio = params[0] if len(params) > 0 else 2.0
        scale = params[1] if len(params) > 1 else 1.0
        if ratio <= 1.0:
            raise ValueError("geometric ratio must exceed 1")
        # Largest value is `scale`, decaying by `ratio` toward the head.
        return lambda i: scale * ratio ** float(i - n)
    if kind == "powerblocks":
        c, m = int(params[0]), int(params[1])
        if c < 2 or m < 1:
            raise ValueError("powerblocks needs c >= 2 and m >= 1")
        # Cumulative block ends: block i (1-based) covers c^(m-i) positions.
        ends = []
        total = 0
        for i in range(1, m + 1):
            total += c ** (m - i)
            ends.append(total)

        def block_value(i: int, _ends=ends, _c=c) -> float:
            lo, hi = 0, len(_ends) - 1
            while lo < hi:
                mid = (lo + hi) // 2
                if i <= _ends[mid]:
                    hi = mid
                else:
                    lo = mid + 1
            return float(_c ** (lo + 1))

        return block_value
    if kind == "zipf":
        exponent = params[0] if len(params) > 0 else 1.0
        scale = params[1] if len(params) > 1 else 1.0
        return lambda i: scale / float(n - i + 1) ** exponent
    if kind == "single-spike":
        spike = params[0] if len(params) > 0 else 1.0
        return lambda i: spike if i == n else 0.0
    if kind == "many-zeros":
        tail = int(params[0]) if len(params) > 0 else max(1, n // 100)
        value = params[1] if len(params) > 1 else 1.0
        return lambda i: value if i > n - tail else 0.0
    raise ValueError(f"no function form for generator kind {kind!r}")


def make_view(
    spec: GeneratorSpec,
    *,
    ledger: QueryLedger | None = None,
    record_transcript: bool = False,
) -> SortedView:
    fn = generator_function(spec)
    return SortedView.from_function(
        fn, spec.n, ledger=ledger, record_transcript=record_transcript
    )


# -- files ---------------------------------------------------------------


def load_text_file(path: str | Path) -> list[float]:
    """One number per line; blank lines and ``#`` comments are skipped."""
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            body = line.split("#", 1)[0].strip()
            if body:
                values.append(float(body))
    return values


def load_binary_file(path: str | Path) -> list[float]:
    """Little-endian: uint64 count header, then that many binary64 values."""
    with open(path, "rb") as fh:
        header = fh.read(8)
        if len(header) != 8:
            raise ValueError("binary input shorter than its 8-byte header")
        (count,) = struct.unpack("<Q", header)
        payload = fh.read(8 * count)
        if len(payload) != 8 * count:
            raise ValueError(f"binary input truncated: expected {count} values")
        return list(struct.unpack(f"<{count}d", payload))


def write_binary_file(path: str | Path, values: Sequence[float]) -> None:
    with open(path, "wb") as fh:
        fh.write(struct.pack("<Q", len(values)))
        fh.write(struct.pack(f"<{len(values)}d", *values))


def load_file(path: str | Path) -> list[float]:
    """Dispatch on extension: ``.bin``/``.f64`` binary, anything else text."""
    suffix = Path(path).suffix.lower()
    if suffix in (".bin", ".f64"):
        return load_binary_file(path)
    return load_text_file(path)


def first_inversion(values: Sequence[float]) -> int | None:
    """1-based position of the first element below its predecessor."""
    for i in range(1, len(values)):
        if values[i] < values[i - 1]:
            return i + 1
    return None


def require_sorted(values: Sequence[float]) -> None:
    idx = first_inversion(values)
    if idx is not None:
        raise UnsortedInputError(idx)
