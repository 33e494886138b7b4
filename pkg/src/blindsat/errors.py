"""Error types shared across the workbench, plus the capacity knobs.

Every exhaustive sweep in the package walks a 2^n cube of some kind. The
exponent cap below bounds those sweeps so a bad request degrades into a
clean refusal instead of a multi-gigabyte allocation. ``BLINDSAT_CAP``
overrides the default exponent (24).
"""

import os

DEFAULT_CAP_EXPONENT = 24


class BlindsatError(Exception):
    """Base class for all domain errors raised by this package."""

    kind = "domain"


class ParseError(BlindsatError):
    """Malformed formula / order / DIMACS text. Carries a 0-based position."""

    kind = "parse"

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position

    def __str__(self) -> str:
        base = super().__str__()
        if self.position is None:
            return base
        return f"{base} (at position {self.position})"


class DomainError(BlindsatError):
    """Input violates an operation's precondition (bad index, missing atom...)."""

    kind = "domain"


class CapacityError(BlindsatError):
    """Requested sweep exceeds the configured capacity cap."""

    kind = "capacity"


def cap_exponent() -> int:
    """Exponent cap for 2^n sweeps; env BLINDSAT_CAP overrides the default."""
    raw = os.environ.get("BLINDSAT_CAP")
    if raw is None:
        return DEFAULT_CAP_EXPONENT
    try:
        value = int(raw)
    except ValueError:
        raise CapacityError(f"BLINDSAT_CAP must be an integer, got {raw!r}")
    if value < 0:
        raise CapacityError(f"BLINDSAT_CAP must be nonnegative, got {value}")
    return value


def check_cube(n: int, what: str = "variables") -> None:
    """Refuse a 2^n sweep when n exceeds the cap."""
    cap = cap_exponent()
    if n > cap:
        raise CapacityError(f"{n} {what} exceeds the capacity cap of {cap} (2^{cap} rows)")


def check_count(count: int, what: str = "items") -> None:
    """Refuse when an explicit count exceeds 2^cap."""
    cap = cap_exponent()
    if count > (1 << cap):
        raise CapacityError(f"{count} {what} exceeds the capacity cap of 2^{cap}")
