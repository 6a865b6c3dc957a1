"""Exception types shared across the package."""


class PiboundError(Exception):
    """Base class for all package errors."""


class DomainError(PiboundError, ValueError):
    """Argument outside the mathematical domain of the operation."""


class OutOfRangeError(PiboundError, ValueError):
    """Query point exceeds the table limit; never silently truncated."""


class CapacityError(PiboundError, ValueError):
    """Requested sieve limit exceeds the configured memory budget."""


class CacheFormatError(PiboundError, ValueError):
    """On-disk table rejected: bad magic, version, or payload."""
