class OracleDomainError(ValueError):
    """Argument outside the domain of an oracle function."""


class OracleRangeError(OverflowError):
    """Argument above the sieve cap."""
