from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from django.conf import settings

from .exceptions import DomainError, RangeError

U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class Caps:
    """Input caps, keyed by strategy label where they depend on the strategy."""

    pi: Mapping[str, int]
    nth_prime: Mapping[str, int]
    divisor: int
    totient: int
    search_bound: int

    @classmethod
    def from_settings(cls) -> Caps:
        conf = settings.PRIMEFORMULA
        return cls(
            pi=dict(conf["PI_CAPS"]),
            nth_prime=dict(conf["NTH_PRIME_CAPS"]),
            divisor=conf["DIVISOR_CAP"],
            totient=conf["TOTIENT_CAP"],
            search_bound=conf["SEARCH_BOUND_CAP"],
        )

    def pi_cap(self, label: str) -> int:
        return self.pi[label]

    def nth_prime_cap(self, label: str) -> int:
        return self.nth_prime[label]


def require_integer(value, name: str) -> int:
    # bool is an int subclass but never a meaningful argument here
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {type(value).__name__}")
    if value > U64_MAX:
        raise DomainError(f"{name}={value} does not fit in 64 bits")
    return value


def require_within(value: int, cap: int, strategy: str | None = None, operation: str | None = None) -> int:
    if value > cap:
        raise RangeError(value, cap, strategy=strategy, operation=operation)
    return value
