"""blindsat: a workbench for blind truth-table search on propositional formulas.

Core modules:

- formulas: AST, grammar, truth tables, equivalence, irreducibility
- arith: arithmetization into multilinear polynomials and binary roots
- search: blind search orders, adversary constructions, towers, heuristics
- dnf: CNF to DNF distribution and its blow-up accounting
- census: exact class counts and success-ratio tables

The FastAPI service in blindsat.service exposes all of it over HTTP; the
``blindsat`` CLI is a thin client of that service.
"""

__version__ = "0.1.0"
