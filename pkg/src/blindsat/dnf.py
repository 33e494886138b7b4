"""CNF to DNF by naive distribution, with the blow-up left intact.

Literals are DIMACS-style signed ints (3 means p3, -3 means ~p3). A clause
is a disjunction of distinct literals; a CNF is a conjunction of clauses.
Distribution takes one literal per clause in every combination, so the
disjunct count is exactly the product of the clause sizes; nothing is
simplified or deduplicated, because that count is the object of study.

On a DNF, satisfiability is a left-to-right scan: the first disjunct free
of a complementary pair yields an assignment, and if every disjunct has
one, the formula is a contradiction.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, DomainError, ParseError, check_count, check_cube
from .formulas import Formula, conjoin, disjoin, evaluate, literal


def _check_literal(lit: int) -> int:
    if lit == 0:
        raise DomainError("literal 0 is not allowed")
    return int(lit)


@dataclass(frozen=True)
class Clause:
    """Disjunction of distinct literals, stored sorted by atom then sign."""

    literals: tuple[int, ...]

    def __post_init__(self):
        lits = tuple(sorted((_check_literal(l) for l in self.literals), key=lambda l: (abs(l), l)))
        if not lits:
            raise DomainError("clause must not be empty")
        if len(set(lits)) != len(lits):
            raise DomainError("clause contains a duplicate literal")
        object.__setattr__(self, "literals", lits)

    def __len__(self) -> int:
        return len(self.literals)


@dataclass(frozen=True)
class CnfFormula:
    """Conjunction of clauses."""

    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if not self.clauses:
            raise DomainError("CNF must have at least one clause")

    @property
    def atoms(self) -> frozenset[int]:
        return frozenset(abs(l) for clause in self.clauses for l in clause.literals)


@dataclass(frozen=True)
class DnfFormula:
    """Disjunction of conjunctions; disjuncts keep their raw literal lists."""

    disjuncts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for disjunct in self.disjuncts:
            if not disjunct:
                raise DomainError("DNF disjunct must not be empty")
            for l in disjunct:
                _check_literal(l)

    @property
    def atoms(self) -> frozenset[int]:
        return frozenset(abs(l) for disjunct in self.disjuncts for l in disjunct)


class Classification(Enum):
    TAUTOLOGY = "tautology"
    CONTRADICTION = "contradiction"
    CONTINGENCY = "contingency"


def count_disjuncts(f: CnfFormula) -> int:
    """Disjunct count of the distribution without materializing it."""
    return math.prod(len(clause) for clause in f.clauses)


def iter_disjuncts(f: CnfFormula) -> Iterator[tuple[int, ...]]:
    """Stream the distribution: one literal per clause, clause order kept."""
    return product(*(clause.literals for clause in f.clauses))


def distribute(f: CnfFormula) -> DnfFormula:
    """Full cartesian distribution of a CNF into a DNF.

    Refuses (reporting the projected count) when the product of clause
    sizes exceeds the capacity cap.
    """
    projected = count_disjuncts(f)
    check_count(projected, "projected disjuncts")
    return DnfFormula(tuple(iter_disjuncts(f)))


def _complementary_free(disjunct: Sequence[int]) -> bool:
    seen = set(disjunct)
    return not any(-l in seen for l in seen)


def dnf_satisfying_assignment(f: DnfFormula) -> dict[int, int] | None:
    """Scan disjuncts left to right for one without a complementary pair.

    Its literals are made true; atoms of the formula not mentioned in it
    default to 0. None means every disjunct is self-contradictory, i.e. the
    DNF is unsatisfiable.
    """
    universe = f.atoms
    for disjunct in f.disjuncts:
        if _complementary_free(disjunct):
            assignment = {a: 0 for a in universe}
            for l in disjunct:
                assignment[abs(l)] = 1 if l > 0 else 0
            return assignment
    return None


def eval_dnf(f: DnfFormula, assignment: dict[int, int]) -> int:
    for disjunct in f.disjuncts:
        if all((assignment[abs(l)] == 1) == (l > 0) for l in disjunct):
            return 1
    return 0


def classify(f: DnfFormula) -> Classification:
    """Tautology / contradiction / contingency by sweeping the truth table."""
    universe = sorted(f.atoms)
    n = len(universe)
    check_cube(n, "atoms")
    results = set()
    for r in range(1 << n):
        assignment = {a: (r >> (n - 1 - j)) & 1 for j, a in enumerate(universe)}
        results.add(eval_dnf(f, assignment))
        if len(results) == 2:
            return Classification.CONTINGENCY
    if results == {1}:
        return Classification.TAUTOLOGY
    return Classification.CONTRADICTION


def blowup_instance(n: int, k: int, m: int, seed: int = 0) -> CnfFormula:
    """Seeded random CNF with k clauses of m distinct atoms over p1..pn."""
    if n < 1 or k < 1 or m < 1:
        raise DomainError("n, k and m must all be at least 1")
    if m > n:
        raise DomainError(f"clause width m={m} cannot exceed atom count n={n}")
    rng = random.Random(seed)
    clauses = []
    for _ in range(k):
        chosen = sorted(rng.sample(range(1, n + 1), m))
        clauses.append(Clause(tuple(a if rng.getrandbits(1) else -a for a in chosen)))
    return CnfFormula(tuple(clauses))


# ---------------------------------------------------------------------------
# Bridges to the formula grammar and DIMACS text


def _literal_formula(l: int) -> Formula:
    return literal(abs(l), l > 0)


def _balanced(parts: list[Formula], combine) -> Formula:
    # pairwise reduction keeps the tree shallow for huge distributions
    while len(parts) > 1:
        parts = [
            combine([parts[i], parts[i + 1]]) if i + 1 < len(parts) else parts[i]
            for i in range(0, len(parts), 2)
        ]
    return parts[0]


def cnf_to_formula(f: CnfFormula) -> Formula:
    return _balanced(
        [_balanced([_literal_formula(l) for l in c.literals], disjoin) for c in f.clauses],
        conjoin,
    )


def dnf_to_formula(f: DnfFormula) -> Formula:
    if not f.disjuncts:
        from .formulas import BOT

        return BOT
    return _balanced(
        [_balanced([_literal_formula(l) for l in d], conjoin) for d in f.disjuncts],
        disjoin,
    )


def parse_dimacs(text: str) -> CnfFormula:
    """DIMACS-like CNF: `c` comments, `p cnf <vars> <clauses>` header, clauses
    as signed ints terminated by 0 (clauses may span lines)."""
    header: tuple[int, int] | None = None
    numbers: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            if header is not None:
                raise ParseError(f"duplicate DIMACS header on line {lineno}")
            fields = stripped.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise ParseError(f"malformed DIMACS header on line {lineno}")
            try:
                header = (int(fields[2]), int(fields[3]))
            except ValueError:
                raise ParseError(f"malformed DIMACS header on line {lineno}")
            continue
        for field in stripped.split():
            try:
                numbers.append(int(field))
            except ValueError:
                raise ParseError(f"bad DIMACS token {field!r} on line {lineno}")
    if header is None:
        raise ParseError("missing DIMACS header 'p cnf <vars> <clauses>'")
    n_vars, n_clauses = header
    clauses: list[Clause] = []
    current: list[int] = []
    for value in numbers:
        if value == 0:
            if current:
                clauses.append(Clause(tuple(current)))
                current = []
            continue
        if abs(value) > n_vars:
            raise ParseError(f"literal {value} exceeds declared variable count {n_vars}")
        current.append(value)
    if current:
        raise ParseError("last clause is not 0-terminated")
    if len(clauses) != n_clauses:
        raise ParseError(f"header declares {n_clauses} clauses, found {len(clauses)}")
    return CnfFormula(tuple(clauses))


def format_dimacs(f: CnfFormula) -> str:
    n_vars = max(f.atoms) if f.atoms else 0
    lines = [f"p cnf {n_vars} {len(f.clauses)}"]
    for clause in f.clauses:
        lines.append(" ".join(str(l) for l in clause.literals) + " 0")
    return "\n".join(lines) + "\n"
