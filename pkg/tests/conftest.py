"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the production code paths: formula
evaluation recurses over the AST with Python bools, and truth vectors are
built from bit strings, so they can referee the bit-parallel implementations.
"""

from __future__ import annotations

import random
from itertools import product

import pytest
from fastapi.testclient import TestClient

from blindsat.formulas import (
    BOT,
    TOP,
    Atom,
    Binary,
    Bottom,
    Connective,
    Formula,
    Not,
    Top,
    parse,
)
from blindsat.service.app import create_app

# the paper-style running example: exactly one of p1, p2, p3 is true
EXAMPLE_A_TEXT = "(p1 | p2 | p3) & ~(p1 & p2) & ~(p1 & p3) & ~(p2 & p3)"


@pytest.fixture(scope="session")
def example_a() -> Formula:
    return parse(EXAMPLE_A_TEXT)


@pytest.fixture(scope="session")
def client() -> TestClient:
    return TestClient(create_app())


def oracle_eval(f: Formula, assignment: dict[int, int]) -> bool:
    """Reference semantics: plain recursion over Python bools."""
    if isinstance(f, Atom):
        return bool(assignment[f.index])
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not oracle_eval(f.child, assignment)
    a = oracle_eval(f.left, assignment)
    b = oracle_eval(f.right, assignment)
    if f.op is Connective.AND:
        return a and b
    if f.op is Connective.OR:
        return a or b
    if f.op is Connective.IMPLIES:
        return (not a) or b
    return a == b


def oracle_rows(atoms: list[int]):
    """All assignments over `atoms` in table-row order, via bit strings."""
    n = len(atoms)
    for k in range(2**n):
        bits = format(k, f"0{n}b") if n else ""
        yield {a: int(bits[j]) for j, a in enumerate(atoms)}


def oracle_vector(f: Formula, atoms: list[int]) -> tuple[int, ...]:
    """Truth vector of f over `atoms` in row order."""
    return tuple(int(oracle_eval(f, row)) for row in oracle_rows(atoms))


def oracle_models(f: Formula, atoms: list[int]) -> list[dict[int, int]]:
    """All satisfying assignments in row order."""
    return [row for row in oracle_rows(atoms) if oracle_eval(f, row)]


_CONNECTIVES = (Connective.AND, Connective.OR, Connective.IMPLIES, Connective.IFF)


def random_formula(rng: random.Random, max_atom: int, size: int) -> Formula:
    """Seeded random formula with at most `size` connectives over p1..p<max_atom>."""
    if size <= 0:
        roll = rng.random()
        if roll < 0.85:
            return Atom(rng.randint(1, max_atom))
        return TOP if roll < 0.925 else BOT
    if rng.random() < 0.25:
        return Not(random_formula(rng, max_atom, size - 1))
    left_size = rng.randint(0, size - 1)
    return Binary(
        rng.choice(_CONNECTIVES),
        random_formula(rng, max_atom, left_size),
        random_formula(rng, max_atom, size - 1 - left_size),
    )
