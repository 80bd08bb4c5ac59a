"""
Finite-range checks of the bounds that make the nth-prime formula exact.

    lemma8:        pi(2n ln n + 2) < 2n                      n >= 2
    lemma9:        p_n < 2n ln n + 2                         n >= 2
    rosser_lower:  p_n > n ln n                              n >= 1
    rosser_upper:  p_n < n ln n + n (ln ln n - 1/2)          n >= 21

Violations are returned as data. Comparisons on doubles that land within
NEAR_EQUALITY of the boundary are listed separately in near_equal.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .exceptions import OracleDomainError
from .sieve import SieveTable, build_sieve, sieve_for_index

logger = logging.getLogger(__name__)

NEAR_EQUALITY = 1e-9

ROSSER_UPPER_FROM = 21


@dataclass(frozen=True)
class InequalityReport:
    name: str
    range_checked: Tuple[int, int]
    violations: Tuple[int, ...] = ()
    near_equal: Tuple[int, ...] = ()

    @property
    def checked(self) -> int:
        lo, hi = self.range_checked
        return max(0, hi - lo + 1)

    @property
    def holds(self) -> bool:
        return not self.violations


@dataclass
class _Sweep:
    name: str
    lo: int
    hi: int
    violations: List[int] = field(default_factory=list)
    near_equal: List[int] = field(default_factory=list)

    def strict_less(self, n: int, lhs: float, rhs: float):
        if not lhs < rhs:
            self.violations.append(n)
        elif rhs - lhs < NEAR_EQUALITY:
            self.near_equal.append(n)

    def report(self) -> InequalityReport:
        report = InequalityReport(
            name=self.name,
            range_checked=(self.lo, self.hi),
            violations=tuple(self.violations),
            near_equal=tuple(self.near_equal),
        )
        if report.violations:
            logger.warning(f"{self.name}: {len(report.violations)} violations in [{self.lo}, {self.hi}]")
        if report.near_equal:
            logger.warning(f"{self.name}: {len(report.near_equal)} comparisons within {NEAR_EQUALITY} of equality")
        return report


def lemma_point(n: int) -> float:
    """2n ln n + 2 in double precision."""
    return 2 * n * math.log(n) + 2


def rosser_upper_bound(n: int) -> float:
    return n * math.log(n) + n * (math.log(math.log(n)) - 0.5)


def _table_for(n_max: int, table: Optional[SieveTable]) -> SieveTable:
    # lemma8 reads pi at floor(2 n_max ln n_max + 2), beyond p_{n_max}
    needed = math.floor(lemma_point(n_max)) if n_max >= 2 else 2
    if table is not None and table.limit >= needed and len(table.prime_list) >= n_max:
        return table
    table = sieve_for_index(max(n_max, 1))
    if table.limit < needed:
        table = build_sieve(needed)
    return table


def check_lemma1(n_max: int, table: Optional[SieveTable] = None) -> Tuple[InequalityReport, InequalityReport]:
    """Check both lemma inequalities for every n in [2, n_max]."""
    if n_max < 2:
        raise OracleDomainError(f"lemma checks start at n = 2, got n_max={n_max}")
    table = _table_for(n_max, table)

    lemma8 = _Sweep("lemma8", 2, n_max)
    lemma9 = _Sweep("lemma9", 2, n_max)
    for n in range(2, n_max + 1):
        raw = lemma_point(n)
        # integer comparison, no rounding involved
        if not table.pi(math.floor(raw)) < 2 * n:
            lemma8.violations.append(n)
        lemma9.strict_less(n, float(table.nth_prime(n)), raw)
    return lemma8.report(), lemma9.report()


def check_rosser(n_max: int, table: Optional[SieveTable] = None) -> Tuple[InequalityReport, InequalityReport]:
    """
    Check the lower bound on [1, n_max] and the upper bound on [21, n_max].

    The upper report covers an empty range when n_max < 21.
    """
    if n_max < 1:
        raise OracleDomainError(f"n_max must be >= 1, got {n_max}")
    table = _table_for(n_max, table)

    lower = _Sweep("rosser_lower", 1, n_max)
    upper = _Sweep("rosser_upper", ROSSER_UPPER_FROM, n_max)
    for n in range(1, n_max + 1):
        p_n = float(table.nth_prime(n))
        lower.strict_less(n, n * math.log(n), p_n)
        if n >= ROSSER_UPPER_FROM:
            upper.strict_less(n, p_n, rosser_upper_bound(n))
    return lower.report(), upper.report()


def check_rosser_implies_lemma9(n_max: int) -> InequalityReport:
    """n in [21, n_max] where the Rosser upper bound is not below 2n ln n + 2."""
    sweep = _Sweep("rosser_implies_lemma9", ROSSER_UPPER_FROM, n_max)
    for n in range(ROSSER_UPPER_FROM, n_max + 1):
        sweep.strict_less(n, rosser_upper_bound(n), lemma_point(n))
    return sweep.report()
