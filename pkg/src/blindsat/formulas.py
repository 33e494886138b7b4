"""Propositional formulas: AST, grammar, truth tables, and irreducibility.

Atoms are positive integers (printed ``p1``, ``p2``, ...). The two 0-letter
constants TOP and BOT stand for the tautology and the contradiction. All
values are immutable; every function here is pure.

Truth-table row convention, shared by the whole package: over an ordered
atom list of length n, row k (1-based) assigns to the j-th listed atom the
j-th most-significant bit of k-1. Tables are bit-packed into a single int
whose bit k-1 holds the result of row k.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CapacityError, DomainError, ParseError, check_cube

Assignment = Mapping[int, int]


class Connective(Enum):
    AND = "&"
    OR = "|"
    IMPLIES = "->"
    IFF = "<->"


class Formula:
    """Base class. Concrete nodes: Atom, Top, Bottom, Not, Binary."""

    __slots__ = ()

    def __and__(self, other: "Formula") -> "Binary":
        return Binary(Connective.AND, self, other)

    def __or__(self, other: "Formula") -> "Binary":
        return Binary(Connective.OR, self, other)

    def __invert__(self) -> "Not":
        return Not(self)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise DomainError(f"atom index must be positive, got {self.index}")

    def __repr__(self) -> str:
        return f"p{self.index}"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self) -> str:
        return "TOP"


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    def __repr__(self) -> str:
        return "BOT"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    child: Formula

    def __repr__(self) -> str:
        return f"~{self.child!r}"


@dataclass(frozen=True, repr=False)
class Binary(Formula):
    op: Connective
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"({self.left!r} {self.op.value} {self.right!r})"


TOP = Top()
BOT = Bottom()


def literal(index: int, positive: bool) -> Formula:
    return Atom(index) if positive else Not(Atom(index))


def conjoin(parts: Sequence[Formula]) -> Formula:
    """Left-associated conjunction; TOP for the empty sequence."""
    if not parts:
        return TOP
    out = parts[0]
    for part in parts[1:]:
        out = Binary(Connective.AND, out, part)
    return out


def disjoin(parts: Sequence[Formula]) -> Formula:
    """Left-associated disjunction; BOT for the empty sequence."""
    if not parts:
        return BOT
    out = parts[0]
    for part in parts[1:]:
        out = Binary(Connective.OR, out, part)
    return out


def _walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, Binary):
            stack.append(node.left)
            stack.append(node.right)


def atoms(f: Formula) -> frozenset[int]:
    """The set of atom indices occurring in f."""
    return frozenset(node.index for node in _walk(f) if isinstance(node, Atom))


def quasinorm(f: Formula) -> int:
    """Number of distinct atoms occurring syntactically in f."""
    return len(atoms(f))


# ---------------------------------------------------------------------------
# Grammar
#
#   iff  := imp ( "<->" imp )*          left-associative
#   imp  := or  ( "->" imp )?           right-associative
#   or   := and ( "|" and )*            left-associative
#   and  := un  ( "&" un )*             left-associative
#   un   := "~" un | primary
#   prim := p<digits> | TOP | BOT | "(" iff ")"

_TOKEN_RE = re.compile(r"\s*(p\d+|TOP|BOT|<->|->|[~&|()])")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            at = len(text) - len(rest)
            raise ParseError(f"unexpected character {rest[0]!r}", at)
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, int]], length: int):
        self.tokens = tokens
        self.i = 0
        self.length = length

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else self.length

    def take(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        if self.peek() != tok:
            raise ParseError(f"expected {tok!r}", self.pos())
        self.take()

    def parse_iff(self) -> Formula:
        node = self.parse_imp()
        while self.peek() == "<->":
            self.take()
            node = Binary(Connective.IFF, node, self.parse_imp())
        return node

    def parse_imp(self) -> Formula:
        node = self.parse_or()
        if self.peek() == "->":
            self.take()
            node = Binary(Connective.IMPLIES, node, self.parse_imp())
        return node

    def parse_or(self) -> Formula:
        node = self.parse_and()
        while self.peek() == "|":
            self.take()
            node = Binary(Connective.OR, node, self.parse_and())
        return node

    def parse_and(self) -> Formula:
        node = self.parse_unary()
        while self.peek() == "&":
            self.take()
            node = Binary(Connective.AND, node, self.parse_unary())
        return node

    def parse_unary(self) -> Formula:
        if self.peek() == "~":
            self.take()
            return Not(self.parse_unary())
        return self.parse_primary()

    def parse_primary(self) -> Formula:
        tok = self.peek()
        at = self.pos()
        if tok is None:
            raise ParseError("unexpected end of input", at)
        if tok == "(":
            self.take()
            node = self.parse_iff()
            self.expect(")")
            return node
        if tok == "TOP":
            self.take()
            return TOP
        if tok == "BOT":
            self.take()
            return BOT
        if tok.startswith("p"):
            self.take()
            index = int(tok[1:])
            if index == 0:
                raise ParseError("atom index 0 is not allowed", at)
            return Atom(index)
        raise ParseError(f"unexpected token {tok!r}", at)


def parse(text: str) -> Formula:
    """Parse formula text; raises ParseError with a character position."""
    parser = _Parser(_tokenize(text), len(text))
    node = parser.parse_iff()
    if parser.peek() is not None:
        raise ParseError(f"trailing input {parser.peek()!r}", parser.pos())
    return node


def to_text(f: Formula) -> str:
    """Canonical text: binary nodes fully parenthesized; round-trips via parse."""
    out: list[str] = []
    # post-order with an explicit stack so very long chains cannot overflow
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        node, seen = stack.pop()
        if isinstance(node, Atom):
            out.append(f"p{node.index}")
        elif isinstance(node, Top):
            out.append("TOP")
        elif isinstance(node, Bottom):
            out.append("BOT")
        elif isinstance(node, Not):
            if seen:
                out.append(f"~{out.pop()}")
            else:
                stack.append((node, True))
                stack.append((node.child, False))
        elif isinstance(node, Binary):
            if seen:
                right = out.pop()
                left = out.pop()
                out.append(f"({left} {node.op.value} {right})")
            else:
                stack.append((node, True))
                stack.append((node.right, False))
                stack.append((node.left, False))
        else:
            raise TypeError(f"not a formula node: {node!r}")
    return out[0]


# ---------------------------------------------------------------------------
# Evaluation and truth tables


def evaluate(f: Formula, assignment: Assignment) -> int:
    """Standard semantics over {0,1}; raises DomainError on a missing atom."""
    values: list[int] = []
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        node, seen = stack.pop()
        if isinstance(node, Atom):
            try:
                values.append(1 if assignment[node.index] else 0)
            except KeyError:
                raise DomainError(f"assignment is missing atom p{node.index}")
        elif isinstance(node, Top):
            values.append(1)
        elif isinstance(node, Bottom):
            values.append(0)
        elif isinstance(node, Not):
            if seen:
                values.append(1 - values.pop())
            else:
                stack.append((node, True))
                stack.append((node.child, False))
        elif isinstance(node, Binary):
            if seen:
                b = values.pop()
                a = values.pop()
                if node.op is Connective.AND:
                    values.append(a & b)
                elif node.op is Connective.OR:
                    values.append(a | b)
                elif node.op is Connective.IMPLIES:
                    values.append((1 - a) | b)
                else:
                    values.append(1 - (a ^ b))
            else:
                stack.append((node, True))
                stack.append((node.right, False))
                stack.append((node.left, False))
        else:
            raise TypeError(f"not a formula node: {node!r}")
    return values[0]


def _atom_column(position: int, n: int) -> int:
    """Bit-column of atom at `position` (0-based in the listed order) over all rows."""
    stride = 1 << (n - 1 - position)
    period = stride << 1
    repeats = (1 << n) // period
    unit = (1 << period) - 1
    comb = ((1 << (repeats * period)) - 1) // unit  # 000..01 repeated
    block = (1 << stride) - 1
    return comb * (block << stride)


@dataclass(frozen=True)
class TruthTable:
    """Bit-packed truth table: bit k-1 of `bits` is the result of row k."""

    atoms: tuple[int, ...]
    bits: int

    @property
    def n(self) -> int:
        return len(self.atoms)

    @property
    def size(self) -> int:
        return 1 << self.n

    def result(self, row: int) -> int:
        """Result of 1-based row `row`."""
        if not 1 <= row <= self.size:
            raise DomainError(f"row {row} out of range 1..{self.size}")
        return (self.bits >> (row - 1)) & 1

    def row_assignment(self, row: int) -> dict[int, int]:
        """The assignment explored at 1-based row `row` (MSB drives the first atom)."""
        if not 1 <= row <= self.size:
            raise DomainError(f"row {row} out of range 1..{self.size}")
        r = row - 1
        return {a: (r >> (self.n - 1 - j)) & 1 for j, a in enumerate(self.atoms)}

    def results(self) -> tuple[int, ...]:
        return tuple((self.bits >> k) & 1 for k in range(self.size))


def truth_table(f: Formula, atom_order: Sequence[int] | None = None) -> TruthTable:
    """Truth table of f over `atom_order` (default: sorted atoms of f).

    The whole table is computed in one bottom-up pass using bitwise ops on
    2^n-bit integers, one column per subformula.
    """
    present = atoms(f)
    if atom_order is None:
        order = tuple(sorted(present))
    else:
        order = tuple(atom_order)
        if len(set(order)) != len(order):
            raise DomainError("atom order contains duplicates")
        missing = present - set(order)
        if missing:
            names = ", ".join(f"p{i}" for i in sorted(missing))
            raise DomainError(f"atom order misses {names}")
    n = len(order)
    check_cube(n, "atoms")
    full = (1 << (1 << n)) - 1
    position = {a: j for j, a in enumerate(order)}

    columns: list[int] = []
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        node, seen = stack.pop()
        if isinstance(node, Atom):
            columns.append(_atom_column(position[node.index], n))
        elif isinstance(node, Top):
            columns.append(full)
        elif isinstance(node, Bottom):
            columns.append(0)
        elif isinstance(node, Not):
            if seen:
                columns.append(columns.pop() ^ full)
            else:
                stack.append((node, True))
                stack.append((node.child, False))
        elif isinstance(node, Binary):
            if seen:
                b = columns.pop()
                a = columns.pop()
                if node.op is Connective.AND:
                    columns.append(a & b)
                elif node.op is Connective.OR:
                    columns.append(a | b)
                elif node.op is Connective.IMPLIES:
                    columns.append((a ^ full) | b)
                else:
                    columns.append((a ^ b) ^ full)
            else:
                stack.append((node, True))
                stack.append((node.right, False))
                stack.append((node.left, False))
        else:
            raise TypeError(f"not a formula node: {node!r}")
    return TruthTable(order, columns[0])


def equivalent(f: Formula, g: Formula) -> bool:
    """True iff f and g agree on every row over their combined atom set."""
    order = tuple(sorted(atoms(f) | atoms(g)))
    return truth_table(f, order).bits == truth_table(g, order).bits


# ---------------------------------------------------------------------------
# Essential variables and irreducibility


def essential_atoms(f: Formula) -> frozenset[int]:
    """Atoms whose value can change the formula's result.

    Atom a is essential iff some pair of assignments differing only at a
    evaluates differently.
    """
    order = tuple(sorted(atoms(f)))
    if not order:
        return frozenset()
    table = truth_table(f, order)
    n = table.n
    essential = []
    for j, a in enumerate(order):
        stride = 1 << (n - 1 - j)
        high = _atom_column(j, n)
        low = high ^ ((1 << (1 << n)) - 1)
        swapped = ((table.bits & low) << stride) | ((table.bits & high) >> stride)
        if swapped != table.bits:
            essential.append(a)
    return frozenset(essential)


def class_quasinorm(f: Formula) -> int:
    """Minimum atom count over the equivalence class of f = |essential atoms|."""
    return len(essential_atoms(f))


def is_irreducible(f: Formula) -> bool:
    """True iff no equivalent formula uses fewer atoms (every atom essential)."""
    return quasinorm(f) == class_quasinorm(f)


def irreducible_representative(f: Formula) -> Formula:
    """Canonical equivalent formula over exactly the essential atoms.

    TOP for tautologies, BOT for contradictions; otherwise the complete DNF
    over the essential atoms with minterms in row order.
    """
    essentials = sorted(essential_atoms(f))
    if not essentials:
        fixed = {a: 0 for a in atoms(f)}
        return TOP if evaluate(f, fixed) else BOT
    spectators = atoms(f) - set(essentials)
    zeroed = {a: 0 for a in spectators}
    n = len(essentials)
    minterms = []
    for r in range(1 << n):
        assignment = {a: (r >> (n - 1 - j)) & 1 for j, a in enumerate(essentials)}
        if evaluate(f, {**assignment, **zeroed}):
            lits = [literal(a, bool(assignment[a])) for a in essentials]
            minterms.append(conjoin(lits))
    return disjoin(minterms)


def satisfying_assignments(f: Formula, atom_order: Sequence[int] | None = None) -> list[dict[int, int]]:
    """All satisfying assignments over `atom_order`, in row order (brute force)."""
    table = truth_table(f, atom_order)
    return [table.row_assignment(k) for k in range(1, table.size + 1) if table.result(k)]
