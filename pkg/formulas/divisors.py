from __future__ import annotations

import logging
import math

from .exceptions import DomainError
from .limits import Caps, require_integer
from .strategies import DEFAULT_STRATEGY, Strategy

logger = logging.getLogger(__name__)


def _check_positive(n, cap: int | None, name: str = "n") -> int:
    n = require_integer(n, name)
    if n < 1:
        raise DomainError(f"{name} must be a positive integer, got {n}")
    if cap is None:
        cap = Caps.from_settings().divisor
    # the divisor cap is a hard domain limit, not a strategy tuning knob
    if n > cap:
        raise DomainError(f"{name}={n} is above the divisor-count limit {cap}")
    return n


def floor_sum_divisors(n: int) -> int:
    # (n // i) - ((n - 1) // i) is 1 when i divides n and 0 otherwise
    return sum(n // i - (n - 1) // i for i in range(1, n + 1))


def sqrt_divisors(n: int) -> int:
    root = math.isqrt(n)
    count = 0
    for i in range(1, root + 1):
        if n // i - (n - 1) // i:
            count += 1 if i * i == n else 2
    return count


def characteristic(n: int, divisors) -> int:
    """F(n) = 1 + floor((2 - d(n)) / n) for n > 1, with F(1) = 0."""
    if n == 1:
        return 0
    # Python's // floors toward -inf, so floor(-k/n) is -1 for 0 < k < n
    return 1 + (2 - divisors(n)) // n


def divisor_routine(strategy: Strategy):
    return floor_sum_divisors if strategy.uses_naive_divisors else sqrt_divisors


def divisor_count_naive(n: int, *, cap: int | None = None) -> int:
    """
    Number of divisors of n by the full floor-difference sum over 1 <= i <= n.

    Raises DomainError for n < 1 or n above the divisor-count limit.
    """
    n = _check_positive(n, cap)
    return floor_sum_divisors(n)


def divisor_count_sqrt(n: int, *, cap: int | None = None) -> int:
    """
    Number of divisors of n, scanning only i <= isqrt(n).

    Each divisor i below the root stands for the pair {i, n // i}; a perfect
    square root is counted once.
    """
    n = _check_positive(n, cap)
    return sqrt_divisors(n)


def prime_char(n: int, strategy: Strategy = DEFAULT_STRATEGY, *, cap: int | None = None) -> int:
    """1 if n is prime, 0 otherwise, computed from the divisor count."""
    n = _check_positive(n, cap)
    value = characteristic(n, divisor_routine(strategy))
    logger.debug(f"F({n}) = {value} via {strategy}")
    return value
