"""
Wheel sieving over primorial moduli.

A wheel of modulus m keeps only the residues coprime to m, so the pi(x)
summation visits phi(m) candidates per block of m integers instead of m.
The primes dividing m are handed back separately and counted directly.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import count
from typing import Iterator, Tuple

from formulas.divisors import characteristic, sqrt_divisors
from formulas.exceptions import DomainError
from formulas.limits import Caps, require_integer, require_within
from formulas.strategies import PRIMORIALS

logger = logging.getLogger(__name__)

_SMALL_PRIMES = (2, 3, 5, 7, 11)


@dataclass(frozen=True)
class Wheel:
    modulus: int
    base_primes: Tuple[int, ...]
    residues: Tuple[int, ...]

    @property
    def totient(self) -> int:
        return len(self.residues)

    @property
    def density(self) -> float:
        """Fraction of integers that survive the wheel, phi(m)/m."""
        return self.totient / self.modulus

    @property
    def speedup(self) -> float:
        """Predicted reduction in F-evaluations, m/phi(m)."""
        return self.modulus / self.totient


def build_wheel(m: int) -> Wheel:
    m = require_integer(m, "modulus")
    if m not in PRIMORIALS:
        raise DomainError(
            f"modulus {m} is not an accepted primorial; expected one of {', '.join(map(str, PRIMORIALS))}"
        )
    base_primes = tuple(p for p in _SMALL_PRIMES if m % p == 0)
    residues = tuple(r for r in range(1, m + 1) if math.gcd(r, m) == 1)
    logger.debug(f"Built wheel m={m}: {len(residues)} residues, base primes {base_primes}")
    return Wheel(modulus=m, base_primes=base_primes, residues=residues)


def totient(m: int, *, cap: int | None = None) -> int:
    """Euler's totient by trial-division factorisation and m * prod(1 - 1/p)."""
    m = require_integer(m, "m")
    if m < 1:
        raise DomainError(f"totient is defined for positive integers, got {m}")
    if cap is None:
        cap = Caps.from_settings().totient
    if m > cap:
        raise DomainError(f"m={m} is above the totient limit {cap}")

    result = m
    rest = m
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            # integer form of result * (1 - 1/p)
            result -= result // p
        p += 1 if p == 2 else 2
    if rest > 1:
        result -= result // rest
    return result


def wheel_candidates(wheel: Wheel, x: int) -> Iterator[int]:
    """
    Yield, in increasing order, every j in [2, x] that is a base prime of the
    wheel or coprime to its modulus.

    Candidates are generated block by block as q*m + r for r in the residues,
    so integers sharing a factor with m are never visited.
    """
    x = require_integer(x, "x")
    # every base prime is smaller than the first residue above 1
    for p in wheel.base_primes:
        if p > x:
            return
        yield p

    m = wheel.modulus
    for q in count():
        block = q * m
        if block + 1 > x:
            return
        for r in wheel.residues:
            j = block + r
            if j > x:
                return
            if j >= 2:
                yield j


def pi_wheel(x: int, wheel: Wheel, *, cap: int | None = None) -> int:
    """pi(x) summing F only over the wheel's candidates."""
    x = require_integer(x, "x")
    if x < 0:
        raise DomainError(f"x must be nonnegative, got {x}")
    if cap is None:
        cap = Caps.from_settings().pi_cap("wheel")
    require_within(x, cap, strategy=f"wheel{wheel.modulus}", operation="pi")

    base = set(wheel.base_primes)
    total = 0
    evaluated = 0
    for j in wheel_candidates(wheel, x):
        if j in base:
            total += 1
        else:
            total += characteristic(j, sqrt_divisors)
            evaluated += 1
    logger.debug(f"pi_wheel({x}, m={wheel.modulus}) = {total} after {evaluated} F-evaluations")
    return total
