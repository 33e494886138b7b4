"""Arithmetization of formulas into multilinear integer polynomials.

A formula over atoms p1..pn maps to a polynomial in x1..xn that reproduces
its truth value at every 0/1 point. Products reduce x^k to x eagerly, so a
monomial is just a subset of variables: terms are keyed by bitmask (bit i-1
set means xi occurs) and the empty mask holds the constant. Coefficients
are exact ints; off-cube evaluation uses exact rationals.

The characteristic polynomial (associated polynomial minus 1) vanishes on
the 0/1 cube exactly at the satisfying assignments, which turns
satisfiability into binary root finding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import CapacityError, DomainError, check_cube
from .formulas import Atom, Binary, Bottom, Connective, Formula, Not, Top, atoms

Rational = int | Fraction


class MultilinearPoly:
    """Integer-coefficient polynomial with every exponent 0 or 1.

    Immutable by convention: all operations return new instances. `n` is the
    ambient variable count; `terms` maps variable-subset bitmask -> nonzero
    coefficient (mask 0 is the constant term).
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[int, int]):
        if n < 0:
            raise DomainError(f"variable count must be nonnegative, got {n}")
        cleaned = {}
        limit = 1 << n
        for mask, coeff in terms.items():
            if not 0 <= mask < limit:
                raise DomainError(f"term mask {mask} does not fit in {n} variables")
            if coeff:
                cleaned[mask] = int(coeff)
        self.n = n
        self.terms = cleaned

    @classmethod
    def constant(cls, n: int, value: int) -> "MultilinearPoly":
        return cls(n, {0: value})

    @classmethod
    def variable(cls, n: int, index: int) -> "MultilinearPoly":
        if not 1 <= index <= n:
            raise DomainError(f"variable x{index} out of range 1..{n}")
        return cls(n, {1 << (index - 1): 1})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MultilinearPoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultilinearPoly(n={self.n}, {poly_text(self)!r})"

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        self._check_compatible(other)
        merged = dict(self.terms)
        for mask, coeff in other.terms.items():
            merged[mask] = merged.get(mask, 0) + coeff
        return MultilinearPoly(self.n, merged)

    def __sub__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        self._check_compatible(other)
        merged = dict(self.terms)
        for mask, coeff in other.terms.items():
            merged[mask] = merged.get(mask, 0) - coeff
        return MultilinearPoly(self.n, merged)

    def __mul__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        # mask union = eager x^k -> x reduction inside every product
        self._check_compatible(other)
        merged: dict[int, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mask = m1 | m2
                merged[mask] = merged.get(mask, 0) + c1 * c2
        return MultilinearPoly(self.n, merged)

    def _check_compatible(self, other: "MultilinearPoly") -> None:
        if self.n != other.n:
            raise DomainError(f"mixed variable counts: {self.n} vs {other.n}")

    def shift_constant(self, delta: int) -> "MultilinearPoly":
        merged = dict(self.terms)
        merged[0] = merged.get(0, 0) + delta
        return MultilinearPoly(self.n, merged)

    def coefficient(self, variables: Iterable[int]) -> int:
        mask = 0
        for v in variables:
            if not 1 <= v <= self.n:
                raise DomainError(f"variable x{v} out of range 1..{self.n}")
            mask |= 1 << (v - 1)
        return self.terms.get(mask, 0)

    @property
    def constant_term(self) -> int:
        return self.terms.get(0, 0)


@dataclass(frozen=True)
class FactoredPoly:
    """Product of multilinear factors, kept unexpanded."""

    factors: tuple[MultilinearPoly, ...]

    @property
    def n(self) -> int:
        return self.factors[0].n if self.factors else 0


@dataclass(frozen=True)
class SolveResult:
    """Outcome of solving a multilinear equation p = 0 for one variable."""

    kind: str  # "value" | "inconsistent" | "indeterminate"
    value: Fraction | None = None

    VALUE = "value"
    INCONSISTENT = "inconsistent"
    INDETERMINATE = "indeterminate"

    @classmethod
    def of_value(cls, value: Fraction) -> "SolveResult":
        return cls(cls.VALUE, value)

    @classmethod
    def inconsistent(cls) -> "SolveResult":
        return cls(cls.INCONSISTENT)

    @classmethod
    def indeterminate(cls) -> "SolveResult":
        return cls(cls.INDETERMINATE)


def _arithmetize_node(node: Formula, n: int) -> MultilinearPoly:
    one = MultilinearPoly.constant(n, 1)
    values: list[MultilinearPoly] = []
    stack: list[tuple[Formula, bool]] = [(node, False)]
    while stack:
        cur, seen = stack.pop()
        if isinstance(cur, Atom):
            values.append(MultilinearPoly.variable(n, cur.index))
        elif isinstance(cur, Top):
            values.append(one)
        elif isinstance(cur, Bottom):
            values.append(MultilinearPoly.constant(n, 0))
        elif isinstance(cur, Not):
            if seen:
                values.append(one - values.pop())
            else:
                stack.append((cur, True))
                stack.append((cur.child, False))
        elif isinstance(cur, Binary):
            if seen:
                b = values.pop()
                a = values.pop()
                if cur.op is Connective.AND:
                    values.append(a * b)
                elif cur.op is Connective.OR:
                    values.append(a + b - a * b)
                elif cur.op is Connective.IMPLIES:
                    values.append((one - a) * (one - b) + b)
                else:
                    values.append((one - a) * (one - b) * (one + a + b) + a * b)
            else:
                stack.append((cur, True))
                stack.append((cur.right, False))
                stack.append((cur.left, False))
        else:
            raise TypeError(f"not a formula node: {cur!r}")
    return values[0]


def ambient_dimension(f: Formula, dimension: int | None = None) -> int:
    """Variable count for f's polynomials: max atom index, unless widened."""
    present = atoms(f)
    needed = max(present) if present else 0
    if dimension is None:
        return needed
    if dimension < needed:
        raise DomainError(f"dimension {dimension} is below the highest atom p{needed}")
    return dimension


def arithmetize(f: Formula, dimension: int | None = None) -> MultilinearPoly:
    """The associated polynomial of f: agrees with f's truth value on the cube."""
    return _arithmetize_node(f, ambient_dimension(f, dimension))


def characteristic(f: Formula, dimension: int | None = None) -> MultilinearPoly:
    """Associated polynomial minus 1; its binary roots are the models of f."""
    return arithmetize(f, dimension).shift_constant(-1)


def eval_poly(p: MultilinearPoly, point: Sequence[Rational]) -> Fraction:
    """Exact evaluation at an arbitrary rational point."""
    if len(point) != p.n:
        raise DomainError(f"point has {len(point)} coordinates, expected {p.n}")
    if all(v == 0 or v == 1 for v in point):
        # on the cube a monomial contributes its coefficient iff its
        # variables are a subset of the 1-coordinates
        ones = 0
        for i, v in enumerate(point):
            if v == 1:
                ones |= 1 << i
        return Fraction(sum(c for m, c in p.terms.items() if m & ~ones == 0))
    total = Fraction(0)
    coords = [Fraction(v) for v in point]
    for mask, coeff in p.terms.items():
        term = Fraction(coeff)
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            term *= coords[i]
            m &= m - 1
        total += term
    return total


def eval_on_cube(p: MultilinearPoly) -> list[int]:
    """Values at every 0/1 point, indexed by point bitmask (bit i-1 = xi).

    Subset-sum (zeta) transform: value at point P is the sum of coefficients
    of all masks contained in P. O(2^n * n) instead of 2^n full evaluations.
    """
    check_cube(p.n)
    size = 1 << p.n
    values = [0] * size
    for mask, coeff in p.terms.items():
        values[mask] = coeff
    for i in range(p.n):
        bit = 1 << i
        for mask in range(size):
            if mask & bit:
                values[mask] += values[mask ^ bit]
    return values


def point_of_mask(mask: int, n: int) -> tuple[int, ...]:
    """Decode a point bitmask into the (x1, ..., xn) tuple."""
    return tuple((mask >> i) & 1 for i in range(n))


def binary_roots(p: MultilinearPoly) -> set[tuple[int, ...]]:
    """All 0/1 points where p vanishes (exhaustive sweep of the cube)."""
    values = eval_on_cube(p)
    return {point_of_mask(mask, p.n) for mask, v in enumerate(values) if v == 0}


def solve_for_variable(
    p: MultilinearPoly, var: int, others: Mapping[int, Rational]
) -> SolveResult:
    """Solve p = 0 for x_var with every other variable pinned.

    p is linear in each variable, so p = A*x_var + B at the pinned values:
    Value(-B/A) when A != 0, Inconsistent when A = 0 but B != 0 (the
    equation collapses to B = 0 with B nonzero), Indeterminate when both
    vanish.
    """
    if not 1 <= var <= p.n:
        raise DomainError(f"variable x{var} out of range 1..{p.n}")
    expected = set(range(1, p.n + 1)) - {var}
    if set(others) != expected:
        missing = sorted(expected - set(others))
        extra = sorted(set(others) - expected)
        if missing:
            raise DomainError("missing values for " + ", ".join(f"x{i}" for i in missing))
        raise DomainError("unexpected values for " + ", ".join(f"x{i}" for i in extra))
    coords = {i: Fraction(v) for i, v in others.items()}
    var_bit = 1 << (var - 1)
    slope = Fraction(0)
    intercept = Fraction(0)
    for mask, coeff in p.terms.items():
        term = Fraction(coeff)
        m = mask & ~var_bit
        while m:
            i = (m & -m).bit_length()  # 1-based variable index
            term *= coords[i]
            m &= m - 1
        if mask & var_bit:
            slope += term
        else:
            intercept += term
    if slope != 0:
        return SolveResult.of_value(-intercept / slope)
    if intercept != 0:
        return SolveResult.inconsistent()
    return SolveResult.indeterminate()


def substitute_equal(p: MultilinearPoly, a: int, b: int) -> MultilinearPoly:
    """Impose x_a = x_b by substituting x_b for x_a in every term.

    An arbitrary condition like this can both lose roots off the plane
    x_a = x_b and introduce fake ones; only on the plane does the result
    agree with p.
    """
    if a == b:
        raise DomainError("substitution requires two distinct variables")
    for v in (a, b):
        if not 1 <= v <= p.n:
            raise DomainError(f"variable x{v} out of range 1..{p.n}")
    a_bit = 1 << (a - 1)
    b_bit = 1 << (b - 1)
    merged: dict[int, int] = {}
    for mask, coeff in p.terms.items():
        if mask & a_bit:
            mask = (mask & ~a_bit) | b_bit
        merged[mask] = merged.get(mask, 0) + coeff
    return MultilinearPoly(p.n, merged)


def exponent_variant_agrees(
    p: MultilinearPoly,
    exponents: Mapping[tuple[int, int], int],
    max_points: int | None = None,
) -> bool:
    """Check a raised-exponent variant of p against p on the 0/1 cube.

    `exponents` maps (term mask, variable index) to an odd exponent >= 1 for
    that occurrence; unlisted occurrences keep exponent 1. Even or
    nonpositive exponents are rejected, as is an exponent for a variable
    that does not occur in the named term. Verification sweeps the cube
    (capacity-capped); `max_points` optionally stops after that many rows.
    """
    for (mask, var), exp in exponents.items():
        if mask not in p.terms:
            raise DomainError(f"no term with mask {mask} in the polynomial")
        if not 1 <= var <= p.n or not mask & (1 << (var - 1)):
            raise DomainError(f"x{var} does not occur in term mask {mask}")
        if exp < 1 or exp % 2 == 0:
            raise DomainError(f"exponent for x{var} must be odd and positive, got {exp}")
    check_cube(p.n)
    size = 1 << p.n
    points = size if max_points is None else min(size, max_points)
    for pmask in range(points):
        reference = sum(c for m, c in p.terms.items() if m & ~pmask == 0)
        variant = 0
        for mask, coeff in p.terms.items():
            term = coeff
            m = mask
            while m:
                i = (m & -m).bit_length()  # 1-based
                x = (pmask >> (i - 1)) & 1
                term *= x ** exponents.get((mask, i), 1)
                m &= m - 1
            variant += term
        if variant != reference:
            return False
    return True


def top_level_conjuncts(f: Formula) -> list[Formula]:
    """Flatten the spine of top-level conjunctions, left to right."""
    out: list[Formula] = []
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Binary) and node.op is Connective.AND:
            stack.append(node.right)
            stack.append(node.left)
        else:
            out.append(node)
    return out


def factored_arithmetize(f: Formula, dimension: int | None = None) -> FactoredPoly:
    """One factor per top-level conjunct, all in the same ambient dimension.

    The product of the factors agrees with the expanded associated
    polynomial at every 0/1 point, so roots can be sieved factor by factor
    without multiplying out.
    """
    n = ambient_dimension(f, dimension)
    parts = top_level_conjuncts(f)
    return FactoredPoly(tuple(_arithmetize_node(part, n) for part in parts))


def factored_binary_roots(fp: FactoredPoly) -> set[tuple[int, ...]]:
    """0/1 points where some factor vanishes; duplicates collapse by sieve."""
    if not fp.factors:
        return set()
    n = fp.n
    check_cube(n)
    roots: set[tuple[int, ...]] = set()
    tables = [eval_on_cube(factor) for factor in fp.factors]
    for mask in range(1 << n):
        if any(table[mask] == 0 for table in tables):
            roots.add(point_of_mask(mask, n))
    return roots


def expanded_input_size(n: int) -> int:
    """Numbers needed to spell out an expanded n-variable polynomial: (n+1)*2^n."""
    if n < 0:
        raise DomainError(f"variable count must be nonnegative, got {n}")
    return (n + 1) << n


def poly_text(p: MultilinearPoly) -> str:
    """Canonical rendering: terms by ascending mask, constant last.

    Terms print as `<coeff>*x<i>*...` with variables ascending inside each
    term; the constant is omitted when zero unless it is the whole
    polynomial.
    """
    pieces: list[tuple[int, str]] = []
    for mask in sorted(p.terms):
        if mask == 0:
            continue
        coeff = p.terms[mask]
        vars_txt = "*".join(f"x{i + 1}" for i in range(p.n) if mask & (1 << i))
        pieces.append((coeff, f"{abs(coeff)}*{vars_txt}"))
    constant = p.constant_term
    if constant or not pieces:
        pieces.append((constant, str(abs(constant))))
    first_coeff, first_txt = pieces[0]
    out = ("-" if first_coeff < 0 else "") + first_txt
    for coeff, txt in pieces[1:]:
        out += (" - " if coeff < 0 else " + ") + txt
    return out
