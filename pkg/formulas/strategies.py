from __future__ import annotations

import enum
from dataclasses import dataclass

from .exceptions import DomainError

# Primorial moduli accepted for wheel sieving.
PRIMORIALS = (2, 6, 30, 210, 2310)


class StrategyKind(enum.Enum):
    NAIVE_FLOOR_SUM = "naive"
    SQRT_DIVISOR = "sqrt"
    RECURSIVE_PI = "recursive"
    WHEEL = "wheel"


@dataclass(frozen=True)
class Strategy:
    """
    Selects which formula variant computes a result.

    kind picks the divisor routine and the way pi(k) is accumulated;
    wheel_modulus is required exactly when kind is WHEEL.
    """

    kind: StrategyKind = StrategyKind.SQRT_DIVISOR
    wheel_modulus: int | None = None

    def __post_init__(self):
        if self.kind is StrategyKind.WHEEL:
            if self.wheel_modulus is None:
                raise DomainError(
                    f"wheel strategy requires a modulus, one of {', '.join(map(str, PRIMORIALS))}"
                )
            if self.wheel_modulus not in PRIMORIALS:
                raise DomainError(
                    f"wheel modulus {self.wheel_modulus} is not one of {', '.join(map(str, PRIMORIALS))}"
                )
        elif self.wheel_modulus is not None:
            raise DomainError(f"strategy '{self.kind.value}' does not take a wheel modulus")

    @classmethod
    def naive(cls) -> Strategy:
        return cls(StrategyKind.NAIVE_FLOOR_SUM)

    @classmethod
    def sqrt(cls) -> Strategy:
        return cls(StrategyKind.SQRT_DIVISOR)

    @classmethod
    def recursive(cls) -> Strategy:
        return cls(StrategyKind.RECURSIVE_PI)

    @classmethod
    def wheel(cls, modulus: int) -> Strategy:
        return cls(StrategyKind.WHEEL, modulus)

    @classmethod
    def parse(cls, label: str, modulus: int | None = None) -> Strategy:
        """
        Build a strategy from a command-line label.

        Accepts 'naive', 'sqrt', 'recursive', 'wheel' (with modulus) and the
        compact form 'wheel<m>', e.g. 'wheel30'.
        """
        label = label.strip().lower()
        if label.startswith("wheel") and label != "wheel":
            suffix = label[len("wheel"):]
            if not suffix.isdigit():
                raise DomainError(f"unknown strategy '{label}'")
            if modulus is not None and modulus != int(suffix):
                raise DomainError(f"strategy '{label}' conflicts with modulus {modulus}")
            return cls.wheel(int(suffix))
        try:
            kind = StrategyKind(label)
        except ValueError:
            choices = ", ".join(k.value for k in StrategyKind)
            raise DomainError(f"unknown strategy '{label}', expected one of {choices}") from None
        if kind is StrategyKind.WHEEL:
            return cls.wheel(modulus)
        if modulus is not None:
            raise DomainError(f"--modulus only applies to the wheel strategy, not '{label}'")
        return cls(kind)

    @property
    def label(self) -> str:
        """Key into the per-strategy cap tables."""
        return self.kind.value

    @property
    def uses_naive_divisors(self) -> bool:
        return self.kind is StrategyKind.NAIVE_FLOOR_SUM

    def __str__(self):
        if self.kind is StrategyKind.WHEEL:
            return f"wheel{self.wheel_modulus}"
        return self.kind.value


DEFAULT_STRATEGY = Strategy.sqrt()


@dataclass(frozen=True)
class SearchBound:
    """Upper summation index floor(2n ln n + 2) of the nth-prime formula."""

    n: int
    limit: int
    raw: float


@dataclass(frozen=True)
class Summand:
    """One term 1 - floor(pi(k)/n) of the nth-prime sum."""

    k: int
    pi_k: int
    quotient: int

    @property
    def term(self) -> int:
        return 1 - self.quotient
