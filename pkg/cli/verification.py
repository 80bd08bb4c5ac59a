"""
Verification suites run by the verify command.

Each suite checks one family of properties over an integer range [lo, hi] and
returns a ChunkResult. Range suites are split into chunks so they can be
dispatched as independent Celery tasks; single-shot suites run as one chunk.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Sequence

from formulas.counting import nth_prime_formula, pi_formula, search_bound
from formulas.divisors import divisor_count_naive, divisor_count_sqrt, prime_char
from formulas.exceptions import BoundSlackError
from formulas.strategies import PRIMORIALS, Strategy
from oracle.inequalities import check_lemma1, check_rosser, check_rosser_implies_lemma9, lemma_point
from oracle.sieve import build_sieve, divisor_count_table, sieve_for_index
from wheel.wheels import build_wheel, pi_wheel, wheel_candidates

logger = logging.getLogger(__name__)

# Failure descriptions kept per chunk; counts are always complete.
MAX_SAMPLES = 5

# Candidate density is compared with phi(m)/m at this x.
DENSITY_CHECK_X = 10**4
DENSITY_TOLERANCE = 0.10


def all_strategies() -> List[Strategy]:
    return [Strategy.naive(), Strategy.sqrt(), Strategy.recursive()] + [Strategy.wheel(m) for m in PRIMORIALS]


NTH_PRIME_STRATEGIES = (Strategy.sqrt(), Strategy.recursive())


@dataclass
class ChunkResult:
    suite: str
    lo: int
    hi: int
    checked: int = 0
    failures: int = 0
    near_equal: int = 0
    samples: List[str] = field(default_factory=list)

    def fail(self, description: str):
        self.failures += 1
        if len(self.samples) < MAX_SAMPLES:
            self.samples.append(description)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SuiteSummary:
    suite: str
    checked: int = 0
    failures: int = 0
    near_equal: int = 0
    samples: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0


def check_divisor_counts(lo: int, hi: int) -> ChunkResult:
    """naive = sqrt = oracle for every n in [lo, hi], plus 2 <= d(n) <= n."""
    result = ChunkResult("divisor_count", lo, hi)
    if hi < lo:
        return result
    table = divisor_count_table(hi)
    for n in range(lo, hi + 1):
        naive = divisor_count_naive(n)
        fast = divisor_count_sqrt(n)
        expected = int(table[n])
        result.checked += 1
        if not naive == fast == expected:
            result.fail(f"d({n}): naive={naive} sqrt={fast} oracle={expected}")
        elif n >= 2 and not 2 <= naive <= n:
            result.fail(f"d({n}) = {naive} outside [2, {n}]")
    return result


def check_prime_char(lo: int, hi: int) -> ChunkResult:
    """F(n) agrees with the sieve for every strategy."""
    result = ChunkResult("prime_char", lo, hi)
    if hi < lo:
        return result
    sieve = build_sieve(hi)
    strategies = all_strategies()
    for n in range(lo, hi + 1):
        expected = int(sieve.is_prime_at(n))
        for strategy in strategies:
            result.checked += 1
            got = prime_char(n, strategy)
            if got != expected:
                result.fail(f"F({n}) via {strategy} = {got}, oracle {expected}")
    return result


def check_pi_steps(lo: int, hi: int) -> ChunkResult:
    """
    pi(x) against the sieve at both chunk ends, for every strategy.

    The steps pi(x) - pi(x-1) = F(x) are checked telescoped: the running sum of
    F over the chunk must carry pi(lo - 1) to pi(hi). Individual steps are not
    evaluated through pi_formula.
    """
    result = ChunkResult("pi_formula", lo, hi)
    if hi < lo:
        return result
    sieve = build_sieve(hi)
    for strategy in all_strategies():
        previous = pi_formula(lo - 1, strategy) if lo >= 1 else 0
        result.checked += 1
        if lo >= 1 and previous != sieve.pi(lo - 1):
            result.fail(f"pi({lo - 1}) via {strategy} = {previous}, oracle {sieve.pi(lo - 1)}")
        for x in range(max(lo, 2), hi + 1):
            previous += prime_char(x, strategy)
        end = pi_formula(hi, strategy)
        result.checked += 1
        if end != sieve.pi(hi):
            result.fail(f"pi({hi}) via {strategy} = {end}, oracle {sieve.pi(hi)}")
        elif previous != end:
            result.fail(f"step sum over [{lo}, {hi}] via {strategy} = {previous}, formula {end}")
        result.checked += hi - lo + 1
    return result


def check_wheels(lo: int, hi: int) -> ChunkResult:
    """Candidate soundness and density, and pi_wheel at the range end."""
    result = ChunkResult("wheel", lo, hi)
    if hi < lo:
        return result
    sieve = build_sieve(hi)
    primes = set(int(p) for p in sieve.prime_list if p >= lo)
    for m in PRIMORIALS:
        wheel = build_wheel(m)
        in_range = [j for j in wheel_candidates(wheel, hi) if j >= lo]
        missing = primes.difference(in_range)
        result.checked += len(primes)
        for p in sorted(missing):
            result.fail(f"prime {p} missing from wheel {m} candidates")
        result.checked += 1
        counted = pi_wheel(hi, wheel)
        if counted != sieve.pi(hi):
            result.fail(f"pi_wheel({hi}, m={m}) = {counted}, oracle {sieve.pi(hi)}")
        if lo <= DENSITY_CHECK_X <= hi:
            density = sum(1 for _ in wheel_candidates(wheel, DENSITY_CHECK_X)) / DENSITY_CHECK_X
            result.checked += 1
            if abs(density - wheel.density) > DENSITY_TOLERANCE * wheel.density:
                result.fail(f"wheel {m} density {density:.4f} vs phi(m)/m {wheel.density:.4f}")
    return result


def check_nth_primes(lo: int, hi: int) -> ChunkResult:
    """p_n from the formula equals the sieve, with the summand partition intact."""
    result = ChunkResult("nth_prime", lo, hi)
    if hi < max(lo, 1):
        return result
    sieve = sieve_for_index(hi)
    for n in range(max(lo, 1), hi + 1):
        expected = sieve.nth_prime(n)
        for strategy in NTH_PRIME_STRATEGIES:
            misplaced = []

            def observe(summand, n=n, expected=expected, misplaced=misplaced):
                # quotient is 0 below p_n and 1 from p_n on
                if summand.quotient != (1 if summand.k >= expected else 0):
                    misplaced.append(summand.k)

            result.checked += 1
            try:
                got = nth_prime_formula(n, strategy, on_summand=observe)
            except BoundSlackError as e:
                result.fail(f"p_{n} via {strategy}: {e}")
                continue
            if got != expected:
                result.fail(f"p_{n} via {strategy} = {got}, oracle {expected}")
            elif misplaced:
                result.fail(f"p_{n} via {strategy}: quotient partition broken at k={misplaced[0]}")
    return result


def check_round_trips(lo: int, hi: int) -> ChunkResult:
    """pi(p_n) = n for n in [lo, hi] and p_{pi(p)} = p for the primes p_lo..p_hi."""
    result = ChunkResult("round_trip", lo, hi)
    if hi < max(lo, 1):
        return result
    strategy = Strategy.recursive()
    sieve = sieve_for_index(hi)
    for n in range(max(lo, 1), hi + 1):
        prime = sieve.nth_prime(n)
        result.checked += 2
        try:
            p_n = nth_prime_formula(n, strategy)
            back = pi_formula(p_n, strategy)
            index = pi_formula(prime, strategy)
            again = p_n if index == n else nth_prime_formula(max(index, 1), strategy)
        except BoundSlackError as e:
            result.fail(f"round trip at n={n} via {strategy}: {e}")
            continue
        if back != n:
            result.fail(f"pi(p_{n}) = pi({p_n}) = {back}")
        if again != prime:
            result.fail(f"p_pi({prime}) = {again}")
    return result


def _report_result(suite: str, lo: int, hi: int, reports) -> ChunkResult:
    result = ChunkResult(suite, lo, hi)
    for report in reports:
        result.checked += report.checked
        result.near_equal += len(report.near_equal)
        for n in report.violations:
            result.fail(f"{report.name} fails at n={n}")
    return result


def check_lemma(lo: int, hi: int) -> ChunkResult:
    if hi < 2:
        return ChunkResult("lemma1", lo, hi)
    result = _report_result("lemma1", lo, hi, check_lemma1(hi))
    # the oracle computes its bound independently; both must floor to the same limit
    for n in range(2, hi + 1):
        result.checked += 1
        if search_bound(n).limit != math.floor(lemma_point(n)):
            result.fail(f"search_bound({n}) disagrees with the oracle's limit")
    return result


def check_rosser_bounds(lo: int, hi: int) -> ChunkResult:
    if hi < 1:
        return ChunkResult("rosser", lo, hi)
    return _report_result("rosser", lo, hi, (*check_rosser(hi), check_rosser_implies_lemma9(hi)))


SUITES: Dict[str, Callable[[int, int], ChunkResult]] = {
    "divisor_count": check_divisor_counts,
    "prime_char": check_prime_char,
    "pi_formula": check_pi_steps,
    "wheel": check_wheels,
    "nth_prime": check_nth_primes,
    "round_trip": check_round_trips,
    "lemma1": check_lemma,
    "rosser": check_rosser_bounds,
}

# Suites whose ranges are split across tasks; the rest run once over the full range.
CHUNKED_SUITES = {"divisor_count", "prime_char", "pi_formula", "wheel", "nth_prime", "round_trip"}


def split_range(lo: int, hi: int, chunks: int) -> List[tuple]:
    """Split [lo, hi] into at most `chunks` contiguous pieces; an empty range stays one piece."""
    if hi < lo:
        return [(lo, hi)]
    size = hi - lo + 1
    chunks = max(1, min(chunks, size))
    step, extra = divmod(size, chunks)
    pieces = []
    start = lo
    for i in range(chunks):
        end = start + step - 1 + (1 if i < extra else 0)
        pieces.append((start, end))
        start = end + 1
    return pieces


def plan(max_x: int, max_n: int, max_d: int, chunks: int) -> List[tuple]:
    """(suite, lo, hi) work items for the given bounds."""
    ranges = {
        "divisor_count": (1, max_d),
        "prime_char": (2, max_d),
        "pi_formula": (0, max_x),
        "wheel": (0, max_x),
        "nth_prime": (1, max_n),
        "round_trip": (1, max_n),
        "lemma1": (2, max_n),
        "rosser": (1, max_n),
    }
    items = []
    for suite, (lo, hi) in ranges.items():
        if suite in CHUNKED_SUITES:
            items.extend((suite, a, b) for a, b in split_range(lo, hi, chunks))
        else:
            items.append((suite, lo, hi))
    return items


def run_chunk(suite: str, lo: int, hi: int) -> ChunkResult:
    logger.info(f"Running {suite} over [{lo}, {hi}]")
    return SUITES[suite](lo, hi)


def merge(results: Sequence[dict]) -> List[SuiteSummary]:
    """Fold chunk results into one summary per suite, in plan order."""
    summaries: Dict[str, SuiteSummary] = {}
    for item in sorted(results, key=lambda r: (list(SUITES).index(r["suite"]), r["lo"])):
        summary = summaries.setdefault(item["suite"], SuiteSummary(item["suite"]))
        summary.checked += item["checked"]
        summary.failures += item["failures"]
        summary.near_equal += item["near_equal"]
        room = MAX_SAMPLES - len(summary.samples)
        summary.samples.extend(item["samples"][:room])
    return list(summaries.values())
