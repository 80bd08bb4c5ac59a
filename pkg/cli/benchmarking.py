"""
Timing harness for the bench command.

Each (strategy, input) pair is timed `reps` times with the monotonic
perf_counter_ns clock and the minimum is kept. A scaling exponent is the
least-squares slope of ln(elapsed) against ln(input).
"""

from __future__ import annotations

import csv
import logging
import time
from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np

from formulas.counting import nth_prime_formula, pi_formula
from formulas.exceptions import DomainError
from formulas.limits import Caps, require_within
from formulas.strategies import Strategy, StrategyKind
from wheel.wheels import build_wheel

logger = logging.getLogger(__name__)

OPERATIONS = ("pi", "nth_prime")
CSV_HEADER = ("operation", "strategy", "input", "elapsed_ns", "repetitions")
MIN_LADDER = 4
MIN_RATIO = 2
POOR_FIT = 0.9


@dataclass(frozen=True)
class BenchRecord:
    operation: str
    strategy: str
    input: int
    elapsed_ns: int
    repetitions: int

    def __post_init__(self):
        if self.elapsed_ns <= 0:
            raise ValueError(f"elapsed_ns must be positive, got {self.elapsed_ns}")
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")

    def as_row(self) -> Tuple:
        return (self.operation, self.strategy, self.input, self.elapsed_ns, self.repetitions)


@dataclass(frozen=True)
class ScalingFit:
    operation: str
    strategy: str
    points: Tuple[Tuple[int, int], ...]
    exponent: float
    r_squared: float

    @property
    def is_poor(self) -> bool:
        return self.r_squared < POOR_FIT

    @classmethod
    def from_records(cls, records: Sequence[BenchRecord]) -> ScalingFit:
        if len(records) < MIN_LADDER:
            raise DomainError(f"a scaling fit needs at least {MIN_LADDER} points, got {len(records)}")
        first = records[0]
        points = tuple(sorted((r.input, r.elapsed_ns) for r in records))
        x = np.log(np.array([p[0] for p in points], dtype=float))
        y = np.log(np.array([p[1] for p in points], dtype=float))
        slope, intercept = np.polyfit(x, y, 1)
        residual = y - (slope * x + intercept)
        total = y - y.mean()
        ss_tot = float(np.dot(total, total))
        r_squared = 1.0 if ss_tot == 0 else 1.0 - float(np.dot(residual, residual)) / ss_tot
        return cls(
            operation=first.operation,
            strategy=first.strategy,
            points=points,
            exponent=float(slope),
            r_squared=r_squared,
        )


def parse_ladder(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise DomainError(f"ladder must be comma-separated integers, got '{text}'") from None


def parse_strategies(text: str, modulus: int | None = None) -> List[Strategy]:
    labels = [part for part in text.split(",") if part.strip()]
    if not labels:
        raise DomainError("at least one strategy is required")
    return [Strategy.parse(label, modulus if label.strip() == "wheel" else None) for label in labels]


def validate_ladder(ladder: Sequence[int], operation: str, strategies: Iterable[Strategy], caps: Caps | None = None):
    """At least MIN_LADDER sizes, each at least MIN_RATIO times the previous, all within caps."""
    if operation not in OPERATIONS:
        raise DomainError(f"unknown operation '{operation}', expected one of {', '.join(OPERATIONS)}")
    if len(ladder) < MIN_LADDER:
        raise DomainError(f"ladder needs at least {MIN_LADDER} sizes, got {len(ladder)}")
    if ladder[0] < 1:
        raise DomainError(f"ladder sizes must be positive, got {ladder[0]}")
    for smaller, larger in zip(ladder, ladder[1:]):
        if larger < MIN_RATIO * smaller:
            raise DomainError(f"ladder is not geometric: {larger} is less than {MIN_RATIO} x {smaller}")
    caps = caps or Caps.from_settings()
    for strategy in strategies:
        cap = caps.pi_cap(strategy.label) if operation == "pi" else caps.nth_prime_cap(strategy.label)
        require_within(max(ladder), cap, strategy=str(strategy), operation=operation)


def target(operation: str, strategy: Strategy) -> Callable[[int], int]:
    if operation == "pi":
        return lambda value: pi_formula(value, strategy)
    return lambda value: nth_prime_formula(value, strategy)


def time_call(fn: Callable[[], object], reps: int) -> int:
    """Minimum elapsed nanoseconds over reps calls."""
    best = None
    for _ in range(reps):
        start = time.perf_counter_ns()
        fn()
        elapsed = time.perf_counter_ns() - start
        best = elapsed if best is None else min(best, elapsed)
    # clock granularity can report 0 for trivial inputs
    return max(1, best)


def run_benchmark(operation: str, strategies: Sequence[Strategy], ladder: Sequence[int], reps: int) -> List[BenchRecord]:
    if reps < 1:
        raise DomainError(f"reps must be >= 1, got {reps}")
    records = []
    for strategy in strategies:
        fn = target(operation, strategy)
        for size in ladder:
            elapsed = time_call(lambda: fn(size), reps)
            logger.info(f"{operation} {strategy} {size}: {elapsed} ns (min of {reps})")
            records.append(BenchRecord(operation, str(strategy), size, elapsed, reps))
    return records


def fit_all(records: Sequence[BenchRecord]) -> List[ScalingFit]:
    """One fit per strategy, in the order strategies first appear."""
    grouped = {}
    for record in records:
        grouped.setdefault(record.strategy, []).append(record)
    fits = []
    for strategy, group in grouped.items():
        fit = ScalingFit.from_records(group)
        if fit.is_poor:
            logger.warning(f"{fit.operation} {strategy}: r_squared {fit.r_squared:.3f} below {POOR_FIT}, timing is noisy")
        fits.append(fit)
    return fits


def measured_speedup(
    operation: str,
    wheel_strategy: Strategy,
    size: int,
    reps: int,
    records: Sequence[BenchRecord],
) -> Tuple[float, float]:
    """(measured, theoretical) speedup of a wheel strategy over sqrt at `size`."""
    if wheel_strategy.kind is not StrategyKind.WHEEL:
        raise DomainError(f"speedup is only defined for wheel strategies, not {wheel_strategy}")
    timings = {(r.strategy, r.input): r.elapsed_ns for r in records}
    baseline = timings.get((str(Strategy.sqrt()), size))
    if baseline is None:
        fn = target(operation, Strategy.sqrt())
        baseline = time_call(lambda: fn(size), reps)
    wheeled = timings.get((str(wheel_strategy), size))
    if wheeled is None:
        fn = target(operation, wheel_strategy)
        wheeled = time_call(lambda: fn(size), reps)
    return baseline / wheeled, build_wheel(wheel_strategy.wheel_modulus).speedup


def write_csv(records: Iterable[BenchRecord], stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(record.as_row())
