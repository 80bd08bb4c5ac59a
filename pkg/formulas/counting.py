"""
The prime-counting and nth-prime formulas.

pi(x) is the sum of the prime characteristic F(j) for 2 <= j <= x, and

    p_n = 2 + sum_{k=2}^{floor(2n ln n + 2)} (1 - floor(pi(k) / n)),   n > 1.

Every quotient floor(pi(k)/n) is 0 below p_n and 1 from p_n up to the limit,
so the sum counts exactly the integers 2 <= k < p_n.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Iterator, Optional

from wheel.wheels import build_wheel, pi_wheel, wheel_candidates

from .divisors import characteristic, divisor_routine, floor_sum_divisors, sqrt_divisors
from .exceptions import BoundSlackError, DomainError
from .limits import U64_MAX, Caps, require_integer, require_within
from .strategies import DEFAULT_STRATEGY, SearchBound, Strategy, StrategyKind, Summand

logger = logging.getLogger(__name__)


def search_bound(n: int, *, cap: int | None = None) -> SearchBound:
    """floor(2n ln n + 2), with the double it was floored from."""
    n = require_integer(n, "n")
    if cap is None:
        cap = Caps.from_settings().search_bound
    if n < 2:
        raise DomainError(f"search bound needs a prime index n >= 2, got {n}")
    if n > cap:
        raise DomainError(f"prime index {n} is above the search-bound limit {cap}")
    raw = 2 * n * math.log(n) + 2
    limit = math.floor(raw)
    if limit > U64_MAX:
        raise DomainError(f"search bound {limit} for n={n} does not fit in 64 bits")
    return SearchBound(n=n, limit=limit, raw=raw)


def _count_primes(x: int, strategy: Strategy) -> int:
    if strategy.kind is StrategyKind.WHEEL:
        # the caller already applied the cap
        return pi_wheel(x, build_wheel(strategy.wheel_modulus), cap=x)

    divisors = divisor_routine(strategy)
    if strategy.kind is StrategyKind.RECURSIVE_PI:
        pi_k = 0
        for k in range(2, x + 1):
            pi_k = pi_k + characteristic(k, divisors)
        return pi_k
    return sum(characteristic(j, divisors) for j in range(2, x + 1))


def pi_formula(x: int, strategy: Strategy = DEFAULT_STRATEGY, *, cap: int | None = None) -> int:
    """
    Number of primes not exceeding x, as a sum of the prime characteristic.

    The empty sum for x < 2 is 0. Raises RangeError when x is above the
    strategy's cap.
    """
    x = require_integer(x, "x")
    if x < 0:
        raise DomainError(f"x must be nonnegative, got {x}")
    if cap is None:
        cap = Caps.from_settings().pi_cap(strategy.label)
    require_within(x, cap, strategy=str(strategy), operation="pi")

    result = _count_primes(x, strategy)
    logger.debug(f"pi({x}) = {result} via {strategy}")
    return result


def _literal_pi_values(limit: int) -> Iterator[int]:
    # pi(k) recomputed from scratch for every k, as the formula is written
    for k in range(2, limit + 1):
        yield sum(characteristic(j, floor_sum_divisors) for j in range(2, k + 1))


def _streamed_pi_values(limit: int) -> Iterator[int]:
    pi_k = 0
    for k in range(2, limit + 1):
        pi_k += characteristic(k, sqrt_divisors)
        yield pi_k


def _tabulated_pi_values(limit: int) -> Iterator[int]:
    # F(j) for every j <= limit first, then pi(k) = pi(k-1) + F(k)
    table = [0, 0] + [characteristic(j, sqrt_divisors) for j in range(2, limit + 1)]
    pi_k = 0
    for k in range(2, limit + 1):
        pi_k += table[k]
        yield pi_k


def _wheel_pi_values(limit: int, modulus: int) -> Iterator[int]:
    wheel = build_wheel(modulus)
    base = set(wheel.base_primes)
    candidates = wheel_candidates(wheel, limit)
    next_candidate = next(candidates, None)
    pi_k = 0
    for k in range(2, limit + 1):
        if k == next_candidate:
            pi_k += 1 if k in base else characteristic(k, sqrt_divisors)
            next_candidate = next(candidates, None)
        yield pi_k


def _pi_values(limit: int, strategy: Strategy) -> Iterator[int]:
    if strategy.kind is StrategyKind.NAIVE_FLOOR_SUM:
        return _literal_pi_values(limit)
    if strategy.kind is StrategyKind.RECURSIVE_PI:
        return _tabulated_pi_values(limit)
    if strategy.kind is StrategyKind.WHEEL:
        return _wheel_pi_values(limit, strategy.wheel_modulus)
    return _streamed_pi_values(limit)


def nth_prime_summands(n: int, strategy: Strategy = DEFAULT_STRATEGY) -> Iterator[Summand]:
    """
    Yield every summand of the nth-prime sum for n >= 2, in increasing k.

    How pi(k) is obtained depends on the strategy: recomputed per k with the
    naive divisor sum, streamed with the square-root divisor count, tabulated
    then accumulated, or streamed over wheel candidates only.
    """
    bound = search_bound(n)
    for k, pi_k in enumerate(_pi_values(bound.limit, strategy), start=2):
        yield Summand(k=k, pi_k=pi_k, quotient=pi_k // n)


def nth_prime_formula(
    n: int,
    strategy: Strategy = DEFAULT_STRATEGY,
    *,
    cap: int | None = None,
    on_summand: Optional[Callable[[Summand], None]] = None,
) -> int:
    """
    The n-th prime from the floor-function sum.

    p_1 = 2 is returned directly. For n > 1 every quotient floor(pi(k)/n) is
    checked to be 0 or 1 and pi(limit) < 2n is asserted; either failure raises
    BoundSlackError. on_summand, when given, sees every summand.
    """
    n = require_integer(n, "n")
    if n < 1:
        raise DomainError(f"prime index must be >= 1, got {n}")
    if cap is None:
        cap = Caps.from_settings().nth_prime_cap(strategy.label)
    require_within(n, cap, strategy=str(strategy), operation="nth_prime")
    if n == 1:
        return 2

    total = 2
    last = None
    for summand in nth_prime_summands(n, strategy):
        if summand.quotient not in (0, 1):
            raise BoundSlackError(
                f"floor(pi({summand.k})/{n}) = {summand.quotient} is outside {{0, 1}}"
            )
        if on_summand is not None:
            on_summand(summand)
        total += summand.term
        last = summand

    if last.pi_k >= 2 * n:
        raise BoundSlackError(f"pi({last.k}) = {last.pi_k} is not below 2n = {2 * n}")
    logger.debug(f"p_{n} = {total} via {strategy} (limit {last.k}, pi(limit) = {last.pi_k})")
    return total
