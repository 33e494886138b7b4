"""Blind sequential truth-table search and its adversaries.

A search order fixes an atom permutation and, per atom, which truth value
is tried first; together they pin the exact sequence in which the 2^n
assignments are explored, independently of the formula. Everything the
order determines is constructive: the formula forcing a full sweep, the
formula true only at explored position m, pre-process towers that blacklist
known worst cases, and fixed-row heuristics together with the instances
they must miss.

Position convention: positions t = 1..2^n; writing t-1 as n bits c_1..c_n
(c_1 most significant), the atom explored at depth r receives its first
value XOR c_r, which is exactly depth-first traversal of the assignment
tree.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import CapacityError, DomainError, ParseError, check_cube
from .formulas import (
    Formula,
    TruthTable,
    conjoin,
    disjoin,
    atoms,
    equivalent,
    evaluate,
    literal,
    truth_table,
)


@dataclass(frozen=True)
class SearchOrder:
    """One blind algorithm: atom permutation sigma plus first-value bits d.

    sigma[r-1] is the atom explored at depth r; d[k-1] is the value atom k
    tries first.
    """

    sigma: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self):
        n = len(self.sigma)
        if sorted(self.sigma) != list(range(1, n + 1)):
            raise DomainError(f"sigma must be a permutation of 1..{n}")
        if len(self.d) != n:
            raise DomainError(f"d must have {n} bits, got {len(self.d)}")
        if any(bit not in (0, 1) for bit in self.d):
            raise DomainError("d bits must be 0 or 1")

    @property
    def n(self) -> int:
        return len(self.sigma)

    @property
    def rows(self) -> int:
        return 1 << self.n

    @classmethod
    def natural(cls, n: int) -> "SearchOrder":
        """Identity permutation, every atom tries 0 first."""
        return cls(tuple(range(1, n + 1)), (0,) * n)


_ORDER_RE = re.compile(r"^sigma=([0-9,]+);d=([01]+)$")


def parse_order(text: str) -> SearchOrder:
    """Parse the wire form `sigma=3,1,2;d=101`."""
    m = _ORDER_RE.match(text.strip())
    if m is None:
        raise ParseError("order must look like 'sigma=3,1,2;d=101'")
    try:
        sigma = tuple(int(part) for part in m.group(1).split(","))
    except ValueError:
        raise ParseError("sigma must be a comma-separated list of integers")
    d = tuple(int(ch) for ch in m.group(2))
    return SearchOrder(sigma, d)


def format_order(order: SearchOrder) -> str:
    return "sigma=" + ",".join(str(i) for i in order.sigma) + ";d=" + "".join(
        str(b) for b in order.d
    )


def all_orders(n: int):
    """Every one of the n! * 2^n search orders (desk scale)."""
    import itertools

    for sigma in itertools.permutations(range(1, n + 1)):
        for bits in range(1 << n):
            d = tuple((bits >> (n - 1 - k)) & 1 for k in range(n))
            yield SearchOrder(sigma, d)


def count_orders(n: int) -> int:
    """n! * 2^n, the number of distinct blind search algorithms."""
    if n < 1:
        raise DomainError(f"atom count must be at least 1, got {n}")
    return math.factorial(n) << n


def explored_assignment(order: SearchOrder, t: int) -> dict[int, int]:
    """The assignment explored at position t (1-based)."""
    n = order.n
    if not 1 <= t <= order.rows:
        raise DomainError(f"position {t} out of range 1..{order.rows}")
    c = t - 1
    assignment = {}
    for r in range(1, n + 1):
        atom = order.sigma[r - 1]
        c_r = (c >> (n - r)) & 1
        assignment[atom] = order.d[atom - 1] ^ c_r
    return assignment


def position_of_assignment(order: SearchOrder, assignment: dict[int, int]) -> int:
    """Inverse of explored_assignment: at which position a given assignment comes up."""
    n = order.n
    c = 0
    for r in range(1, n + 1):
        atom = order.sigma[r - 1]
        c |= (assignment[atom] ^ order.d[atom - 1]) << (n - r)
    return c + 1


@dataclass(frozen=True)
class SearchTrace:
    """Explored prefix of a run: (assignment bits, result) per position.

    `steps[t-1]` holds the atom values in atom-index order and the result
    at position t. L is the 1-based position of the first success, or None
    when the whole table came up false.
    """

    order: SearchOrder
    steps: tuple[tuple[tuple[int, ...], int], ...]
    L: int | None


def run_search(order: SearchOrder, f: Formula) -> SearchTrace:
    """Explore positions 1, 2, ... until f evaluates true; record the prefix."""
    n = order.n
    extra = atoms(f) - set(range(1, n + 1))
    if extra:
        names = ", ".join(f"p{i}" for i in sorted(extra))
        raise DomainError(f"formula uses atoms outside the order: {names}")
    check_cube(n, "atoms")
    steps = []
    found = None
    for t in range(1, order.rows + 1):
        assignment = explored_assignment(order, t)
        result = evaluate(f, assignment)
        steps.append((tuple(assignment[k] for k in range(1, n + 1)), result))
        if result:
            found = t
            break
    return SearchTrace(order, tuple(steps), found)


def worst_case_formula(order: SearchOrder) -> Formula:
    """The conjunction that is true only at the very last explored position.

    Atom k appears positively iff its first value is 0, so the unique model
    gives every atom its second value.
    """
    return conjoin([literal(k, order.d[k - 1] == 0) for k in range(1, order.n + 1)])


def adversary_single_row(order: SearchOrder, m: int) -> Formula:
    """The conjunction true exactly at explored position m (and nowhere else)."""
    if not 1 <= m <= order.rows:
        raise DomainError(f"row {m} out of range 1..{order.rows}")
    assignment = explored_assignment(order, m)
    return conjoin(
        [literal(k, assignment[k] == 1) for k in range(1, order.n + 1)]
    )


def adversary_rows(order: SearchOrder, rows) -> Formula:
    """Disjunction of single-row adversaries: true exactly at those positions."""
    rows = sorted(set(rows))
    if not rows:
        raise DomainError("adversary needs at least one row")
    return disjoin([adversary_single_row(order, m) for m in rows])


@dataclass(frozen=True)
class TowerAlgorithm:
    """Blind searcher with a pre-process checklist of known adversaries.

    checklist[i] is the formula true exactly at explored positions
    2^n - i .. 2^n; entries are pairwise non-equivalent by construction.
    """

    order: SearchOrder
    checklist: tuple[Formula, ...] = ()

    @property
    def size(self) -> int:
        return len(self.checklist)


def tower_extend(tower: TowerAlgorithm) -> TowerAlgorithm:
    """Blacklist the next descending adversary (true on one more trailing row)."""
    k = tower.size
    rows = tower.order.rows
    if k >= rows - 1:
        raise DomainError(f"tower is saturated at {k} entries for 2^n = {rows}")
    adversary = adversary_rows(tower.order, range(rows - k, rows + 1))
    return TowerAlgorithm(tower.order, tower.checklist + (adversary,))


def tower_run(tower: TowerAlgorithm, f: Formula) -> tuple[int, int | None]:
    """Run the pre-process then the blind search; return (rows charged, L).

    Each checklist comparison is charged as one row. A hit answers at once:
    checklist entry i is true first at position 2^n - i. On a miss the full
    sequential search runs and its explored rows are added.
    """
    for i, known in enumerate(tower.checklist):
        if equivalent(f, known):
            return i + 1, tower.order.rows - i
    trace = run_search(tower.order, f)
    return tower.size + len(trace.steps), trace.L


@dataclass(frozen=True)
class HeuristicAlgorithm:
    """Fixed-row searcher: explores only the positions in `positions`.

    The set is formula-independent; |positions| plays the role of the
    polynomial row budget.
    """

    n: int
    positions: frozenset[int]

    def __post_init__(self):
        bad = [t for t in self.positions if not 1 <= t <= (1 << self.n)]
        if bad:
            raise DomainError(f"positions out of range 1..{1 << self.n}: {sorted(bad)}")


def heuristic_run(
    h: HeuristicAlgorithm, order: SearchOrder, f: Formula
) -> dict[int, int] | None:
    """Evaluate f only at the explored positions, in ascending position order.

    Returns the first satisfying assignment found, or None (a miss, which
    says nothing about the rows that were skipped).
    """
    if h.n != order.n:
        raise DomainError(f"heuristic is for n={h.n}, order has n={order.n}")
    for t in sorted(h.positions):
        assignment = explored_assignment(order, t)
        if evaluate(f, assignment):
            return assignment
    return None


def heuristic_adversary(h: HeuristicAlgorithm, order: SearchOrder) -> Formula:
    """A satisfiable formula the fixed-row searcher must miss.

    True only at the smallest position the heuristic never explores.
    """
    if h.n != order.n:
        raise DomainError(f"heuristic is for n={h.n}, order has n={order.n}")
    for t in range(1, (1 << h.n) + 1):
        if t not in h.positions:
            return adversary_single_row(order, t)
    raise DomainError("heuristic explores every row; no adversary exists")


def l_distribution(order: SearchOrder) -> dict[int | None, int]:
    """Tally of L over every truth table on n atoms (all 2^(2^n) classes).

    Key None counts the all-false table (the contradiction class). Only
    feasible at desk scale; n is hard-capped at 4.
    """
    n = order.n
    if n > 4:
        raise CapacityError(f"L distribution enumerates 2^(2^{n}) tables; n is capped at 4")
    rows = order.rows
    # natural row index visited at each position
    visit = []
    for t in range(1, rows + 1):
        assignment = explored_assignment(order, t)
        r = 0
        for j in range(n):
            r = (r << 1) | assignment[j + 1]
        visit.append(r)
    tally: dict[int | None, int] = {}
    for table in range(1 << rows):
        found = None
        for t, r in enumerate(visit, start=1):
            if (table >> r) & 1:
                found = t
                break
        tally[found] = tally.get(found, 0) + 1
    return tally
