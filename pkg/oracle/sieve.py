"""
Ground truth for the formula implementations: a sieve of Eratosthenes and
direct divisor scans. This app shares no code with the formulas or wheel apps.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from django.conf import settings

from .exceptions import OracleDomainError, OracleRangeError

logger = logging.getLogger(__name__)


def _sieve_cap() -> int:
    return settings.PRIMEFORMULA["SIEVE_CAP"]


def _check_index(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise OracleDomainError(f"{name} must be an integer, got {type(value).__name__}")
    return value


@dataclass(frozen=True, eq=False)
class SieveTable:
    limit: int
    is_prime: np.ndarray
    prime_list: np.ndarray
    cumulative_pi: np.ndarray

    def pi(self, x: int) -> int:
        x = _check_index(x, "x")
        if x < 0:
            raise OracleDomainError(f"x must be nonnegative, got {x}")
        if x > self.limit:
            raise OracleRangeError(f"x={x} is beyond this sieve's limit {self.limit}")
        return int(self.cumulative_pi[x])

    def nth_prime(self, n: int) -> int:
        n = _check_index(n, "n")
        if n < 1:
            raise OracleDomainError(f"prime index must be >= 1, got {n}")
        if n > len(self.prime_list):
            raise OracleRangeError(f"sieve to {self.limit} holds only {len(self.prime_list)} primes")
        return int(self.prime_list[n - 1])

    def is_prime_at(self, n: int) -> bool:
        return bool(self.is_prime[n])


def build_sieve(limit: int) -> SieveTable:
    limit = _check_index(limit, "limit")
    if limit < 0:
        raise OracleDomainError(f"sieve limit must be nonnegative, got {limit}")
    cap = _sieve_cap()
    if limit > cap:
        raise OracleRangeError(f"sieve limit {limit} exceeds cap {cap}")

    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[: min(2, limit + 1)] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    is_prime.flags.writeable = False

    prime_list = np.flatnonzero(is_prime).astype(np.int64)
    cumulative_pi = np.cumsum(is_prime, dtype=np.int64)
    prime_list.flags.writeable = False
    cumulative_pi.flags.writeable = False
    logger.debug(f"Sieved to {limit}: {len(prime_list)} primes")
    return SieveTable(limit=limit, is_prime=is_prime, prime_list=prime_list, cumulative_pi=cumulative_pi)


def initial_sieve_limit(n: int) -> int:
    """A first guess just above p_n: n(ln n + ln ln n) + 16, at least 64."""
    if n < 6:
        return 64
    return max(64, math.ceil(n * (math.log(n) + math.log(math.log(n)))) + 16)


def sieve_for_index(n: int) -> SieveTable:
    """Smallest table in the doubling sequence that holds at least n primes."""
    n = _check_index(n, "n")
    if n < 1:
        raise OracleDomainError(f"prime index must be >= 1, got {n}")
    limit = initial_sieve_limit(n)
    while True:
        table = build_sieve(limit)
        if len(table.prime_list) >= n:
            return table
        logger.debug(f"Sieve to {limit} holds {len(table.prime_list)} < {n} primes, doubling")
        limit *= 2


def pi_oracle(x: int) -> int:
    x = _check_index(x, "x")
    if x < 0:
        raise OracleDomainError(f"x must be nonnegative, got {x}")
    return build_sieve(x).pi(x)


def nth_prime_oracle(n: int) -> int:
    return sieve_for_index(n).nth_prime(n)


def divisor_count_oracle(n: int) -> int:
    """Count i <= n with n mod i == 0 by scanning every i."""
    n = _check_index(n, "n")
    if n < 1:
        raise OracleDomainError(f"n must be a positive integer, got {n}")
    return sum(1 for i in range(1, n + 1) if n % i == 0)


def divisor_count_table(limit: int) -> np.ndarray:
    """d(n) for every n <= limit, by adding 1 at each multiple of each i."""
    limit = _check_index(limit, "limit")
    if limit < 0:
        raise OracleDomainError(f"limit must be nonnegative, got {limit}")
    if limit > _sieve_cap():
        raise OracleRangeError(f"divisor table limit {limit} exceeds cap {_sieve_cap()}")
    counts = np.zeros(limit + 1, dtype=np.int64)
    for i in range(1, limit + 1):
        counts[i::i] += 1
    return counts
