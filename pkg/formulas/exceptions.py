class FormulaError(Exception):
    """Base class for errors raised by the formula implementations."""


class DomainError(FormulaError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class RangeError(FormulaError, OverflowError):
    """Input exceeds a configured cap for the selected strategy."""

    def __init__(self, value, cap, strategy=None, operation=None):
        self.value = value
        self.cap = cap
        self.strategy = strategy
        self.operation = operation
        where = f" for strategy '{strategy}'" if strategy else ""
        what = f"{operation} input" if operation else "input"
        super().__init__(f"{what} {value} exceeds cap {cap}{where}")


class BoundSlackError(FormulaError, ArithmeticError):
    """
    The summation limit lost its slack: some quotient floor(pi(k)/n) left {0, 1},
    or pi(limit) reached 2n.
    """
