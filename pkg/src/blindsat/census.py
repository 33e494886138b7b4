"""Exact census of equivalence classes of n-atom formulas.

A class is a truth table, so there are 2^(2^n) classes. Everything here is
big-integer or exact-rational arithmetic; decimal output is presentation
only, rendered at a configurable number of significant digits. Ratios are
kept on the percent scale (0..100) as exact fractions.

Counting first successes: of all classes, 2^(2^n - m) have their first true
row at row m, and summing over m <= 2^n accounts for every class except the
all-false one (the contradiction class).
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import CapacityError, DomainError

# 2^(2^30) is a ~134 MB integer; beyond that exponentiation stops being "exact
# arithmetic" and starts being a memory experiment. Rendering the decimal
# string for the largest n is itself slow; the cap bounds feasibility, not
# politeness.
CENSUS_MAX_N = 30

_EMPIRICAL_MAX_N = 4


def _check_n(n: int) -> None:
    if n < 1:
        raise DomainError(f"atom count must be at least 1, got {n}")
    if n > CENSUS_MAX_N:
        raise CapacityError(f"n={n} exceeds the census cap of {CENSUS_MAX_N}")


def big_str(value: int) -> str:
    """Exact decimal string, lifting the interpreter's digit-count guard."""
    limit = sys.get_int_max_str_digits()
    try:
        sys.set_int_max_str_digits(0)
        return str(value)
    finally:
        sys.set_int_max_str_digits(limit)


@dataclass(frozen=True)
class CensusRow:
    """One row of the class-count table; u and the count are derived from n."""

    n: int

    @property
    def u(self) -> int:
        return 1 << self.n

    @property
    def class_count(self) -> int:
        return 1 << self.u


def class_count(n: int) -> int:
    """Number of equivalence classes (truth tables) on n atoms: 2^(2^n)."""
    _check_n(n)
    return 1 << (1 << n)


def first_true_count(n: int, m: int) -> int:
    """Classes whose first true row is row m: 2^(2^n - m)."""
    _check_n(n)
    rows = 1 << n
    if not 1 <= m <= rows:
        raise DomainError(f"row {m} out of range 1..{rows}")
    return 1 << (rows - m)


def q_sum(n: int, m: int) -> int:
    """Classes with a true row somewhere in rows 1..m: 2^(2^n) - 2^(2^n - m)."""
    _check_n(n)
    rows = 1 << n
    if not 1 <= m <= rows:
        raise DomainError(f"row {m} out of range 1..{rows}")
    return (1 << rows) - (1 << (rows - m))


def r_ratio(m: int) -> Fraction:
    """Percentage of classes first true within m rows: 100 * (2^m - 1) / 2^m."""
    if m < 1:
        raise DomainError(f"row budget must be at least 1, got {m}")
    return Fraction(100 * ((1 << m) - 1), 1 << m)


def r_poly(n: int, s: int) -> Fraction | None:
    """r at the polynomial row budget m = n^s, on the percent scale.

    None flags the not-applicable region where n^s exceeds the table size
    2^n (the blank cells); there the budget formula is meaningless.
    """
    _check_n(n)
    if s < 1:
        raise DomainError(f"polynomial degree must be at least 1, got {s}")
    m = n**s
    if m > (1 << n):
        return None
    return r_ratio(m)


def lucky_ratio(n: int, m: int) -> Fraction:
    """Chance a uniformly chosen row order front-loads all m true rows: 1 / C(2^n, m)."""
    _check_n(n)
    rows = 1 << n
    if not 0 <= m <= rows:
        raise DomainError(f"model count {m} out of range 0..{rows}")
    return Fraction(1, math.comb(rows, m))


def empirical_first_true(n: int) -> dict[int | None, int]:
    """Enumerate all 2^(2^n) result vectors and tally the first-1 row.

    The independent oracle for first_true_count; None keys the all-zero
    vector. Hard-capped at n = 4.
    """
    if n < 1:
        raise DomainError(f"atom count must be at least 1, got {n}")
    if n > _EMPIRICAL_MAX_N:
        raise CapacityError(
            f"empirical census enumerates 2^(2^{n}) vectors; n is capped at {_EMPIRICAL_MAX_N}"
        )
    rows = 1 << n
    tally: dict[int | None, int] = {}
    for vector in range(1 << rows):
        first = (vector & -vector).bit_length() if vector else None
        tally[first] = tally.get(first, 0) + 1
    return tally


def ratio_decimal(value: Fraction, significant_digits: int = 15) -> str:
    """Exact-rational to decimal string at the given significant digits."""
    if significant_digits < 1:
        raise DomainError("significant digits must be at least 1")
    with localcontext() as ctx:
        ctx.prec = significant_digits
        out = Decimal(value.numerator) / Decimal(value.denominator)
    return str(out)


# ---------------------------------------------------------------------------
# Table builders backing the CSV schemas


def census_rows(n_lo: int, n_hi: int) -> list[dict]:
    """Schema: n, u, class_count (decimal string, exact)."""
    _check_n(n_lo)
    _check_n(max(n_lo, n_hi))
    out = []
    for n in range(n_lo, n_hi + 1):
        row = CensusRow(n)
        out.append({"n": row.n, "u": row.u, "class_count": big_str(row.class_count)})
    return out


def rtable_rows(n_lo: int, n_hi: int, s_lo: int, s_hi: int) -> list[dict]:
    """Schema: n, s, ratio_num, ratio_den, decimal. Ratios on the 0..1 scale.

    Not-applicable cells carry "NA" in the three value columns.
    """
    _check_n(n_lo)
    _check_n(max(n_lo, n_hi))
    out = []
    for n in range(n_lo, n_hi + 1):
        for s in range(s_lo, s_hi + 1):
            percent = r_poly(n, s)
            if percent is None:
                out.append({"n": n, "s": s, "ratio_num": "NA", "ratio_den": "NA", "decimal": "NA"})
            else:
                ratio = percent / 100
                out.append(
                    {
                        "n": n,
                        "s": s,
                        "ratio_num": str(ratio.numerator),
                        "ratio_den": str(ratio.denominator),
                        "decimal": ratio_decimal(ratio),
                    }
                )
    return out


def firsttrue_rows(n: int, m_lo: int, m_hi: int) -> list[dict]:
    """Schema: n, m, count (exact)."""
    return [
        {"n": n, "m": m, "count": big_str(first_true_count(n, m))} for m in range(m_lo, m_hi + 1)
    ]


def lucky_rows(n: int, m_lo: int, m_hi: int) -> list[dict]:
    """Schema: n, m, ratio_num, ratio_den, decimal."""
    out = []
    for m in range(m_lo, m_hi + 1):
        ratio = lucky_ratio(n, m)
        out.append(
            {
                "n": n,
                "m": m,
                "ratio_num": str(ratio.numerator),
                "ratio_den": str(ratio.denominator),
                "decimal": ratio_decimal(ratio),
            }
        )
    return out
