"""Timing the window exchange against a square-and-multiply baseline.

The baseline stands in for Diffie-Hellman: a random odd modulus of the
given width, with base and exponent of the same width. Both sides run in
pure Python on the same interpreter, so ratios compare like with like.
"""

from __future__ import annotations

import statistics
import timeit
from dataclasses import dataclass, field

from .arith import EntropySource, ParamError, make_params, random_nbit, share
from .kex import derive_window

BENCH_R = 128


def modexp_baseline(base: int, exp: int, modulus: int, counts: dict | None = None) -> int:
    """Left-to-right square-and-multiply. ``counts`` (optional) receives the
    number of squarings and multiplications performed."""
    if modulus < 2:
        raise ParamError("modulus must be >= 2")
    if exp < 0:
        raise ParamError("exponent must be non-negative")
    result = 1
    base %= modulus
    squarings = mults = 0
    for i in range(exp.bit_length() - 1, -1, -1):
        result = result * result % modulus
        squarings += 1
        if (exp >> i) & 1:
            result = result * base % modulus
            mults += 1
    if counts is not None:
        counts["squarings"] = squarings
        counts["multiplications"] = mults
    return result % modulus


def bench_params(width: int, rng: EntropySource):
    """Key-exchange parameters whose public multiplier ``Z`` is ``width`` bits:
    ``l = width``, ``m = width/4``, ``p = 9*width/8``, ``r = 128``."""
    l, m, p = width, width // 4, width + width // 8
    return make_params(l, m, p, l + m - p, BENCH_R, rng)


@dataclass
class BenchRow:
    width: int
    share_ns: float
    derive_ns: float
    modexp_ns: float
    modexp_squarings: int
    modexp_multiplications: int

    @property
    def ratio(self) -> float:
        return self.modexp_ns / self.derive_ns


@dataclass
class BenchReport:
    repeats: int
    rows: list[BenchRow] = field(default_factory=list)

    @property
    def widths(self) -> list[int]:
        return [row.width for row in self.rows]

    def ratios(self) -> list[float]:
        return [row.ratio for row in self.rows]

    def to_text(self) -> str:
        lines = [
            f"repeats={self.repeats}",
            "width share_ns derive_ns modexp_ns modexp_sq modexp_mul ratio",
        ]
        for r in self.rows:
            lines.append(
                f"{r.width} {r.share_ns:.1f} {r.derive_ns:.1f} {r.modexp_ns:.1f} "
                f"{r.modexp_squarings} {r.modexp_multiplications} {r.ratio:.1f}"
            )
        return "\n".join(lines) + "\n"


def _median_ns(stmt, repeats, budget=0.02):
    timer = timeit.Timer(stmt)
    number = 1
    while (elapsed := timer.timeit(number)) < budget:
        number *= 2 if elapsed * 20 > budget else 10
    return statistics.median(timer.repeat(repeat=repeats, number=number)) / number * 1e9


def bench_run(widths: list[int], repeats: int, rng: EntropySource) -> BenchReport:
    if repeats < 5:
        raise ParamError("repeats must be >= 5")
    if any(w < 256 for w in widths):
        raise ParamError("widths must be >= 256 bits")
    report = BenchReport(repeats)
    for width in widths:
        params = bench_params(width, rng)
        x, y = random_nbit(params.m, rng), random_nbit(params.m, rng)
        v = share(params, y)
        base = random_nbit(width, rng)
        exp = random_nbit(width, rng)
        modulus = random_nbit(width, rng) | 1
        counts = {}
        modexp_baseline(base, exp, modulus, counts)
        report.rows.append(
            BenchRow(
                width=width,
                share_ns=_median_ns(lambda: share(params, x), repeats),
                derive_ns=_median_ns(lambda: derive_window(params, x, v), repeats),
                modexp_ns=_median_ns(lambda: modexp_baseline(base, exp, modulus), repeats),
                modexp_squarings=counts["squarings"],
                modexp_multiplications=counts["multiplications"],
            )
        )
    return report
