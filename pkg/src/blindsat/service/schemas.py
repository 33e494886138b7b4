"""Request and response models for the blindsat service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class ErrorInfo(BaseModel):
    kind: Literal["parse", "domain", "capacity", "usage"]
    message: str
    position: int | None = None


class ErrorEnvelope(BaseModel):
    error: ErrorInfo


class HealthResponse(BaseModel):
    status: str
    version: str


# --- formulas ---------------------------------------------------------------


class EvalRequest(BaseModel):
    formula: str
    assign: dict[str, int] = Field(default_factory=dict)


class EvalResponse(BaseModel):
    value: int


class TableRequest(BaseModel):
    formula: str
    atoms: list[int] | None = None


class TableRow(BaseModel):
    row: int
    bits: list[int]
    result: int


class TableResponse(BaseModel):
    atoms: list[int]
    rows: list[TableRow]


class AnalyzeRequest(BaseModel):
    formula: str


class AnalyzeResponse(BaseModel):
    text: str
    atoms: list[int]
    quasinorm: int
    essential_atoms: list[int]
    class_quasinorm: int
    irreducible: bool
    representative: str


class EquivalentRequest(BaseModel):
    left: str
    right: str


class EquivalentResponse(BaseModel):
    equivalent: bool


# --- arith ------------------------------------------------------------------


class SubstituteSpec(BaseModel):
    a: int
    b: int


class PolyRequest(BaseModel):
    formula: str
    characteristic: bool = False
    substitute: SubstituteSpec | None = None
    dimension: int | None = None


class PolyTerm(BaseModel):
    vars: list[int]
    coeff: int


class PolyResponse(BaseModel):
    n: int
    terms: list[PolyTerm]
    constant: int
    text: str


class RootsRequest(BaseModel):
    formula: str
    of: Literal["characteristic", "associated"] = "characteristic"
    factored: bool = False
    dimension: int | None = None


class RootsResponse(BaseModel):
    n: int
    roots: list[list[int]]


class SolveRequest(BaseModel):
    formula: str
    var: int
    others: dict[str, str] = Field(default_factory=dict)


class SolveResponse(BaseModel):
    kind: Literal["value", "inconsistent", "indeterminate"]
    numerator: str | None = None
    denominator: str | None = None


class ExponentSpec(BaseModel):
    mask: int
    var: int
    exp: int


class ExponentVariantRequest(BaseModel):
    formula: str
    characteristic: bool = True
    exponents: list[ExponentSpec]
    max_points: int | None = None


class ExponentVariantResponse(BaseModel):
    agrees: bool


class InputSizeRequest(BaseModel):
    n: int


class InputSizeResponse(BaseModel):
    count: str


# --- search -----------------------------------------------------------------


class AdversaryRequest(BaseModel):
    order: str
    row: int | None = None
    rows: list[int] | None = None
    worst: bool = False


class AdversaryResponse(BaseModel):
    formula: str


class SearchRequest(BaseModel):
    order: str
    formula: str


class TraceStep(BaseModel):
    t: int
    bits: list[int]
    result: int


class SearchResponse(BaseModel):
    L: int | None
    steps: list[TraceStep]


class TowerRequest(BaseModel):
    order: str
    size: int = 0
    formula: str


class TowerResponse(BaseModel):
    rows_charged: int
    L: int | None


class HeuristicRequest(BaseModel):
    order: str
    positions: list[int]
    formula: str


class HeuristicResponse(BaseModel):
    found: bool
    position: int | None = None
    assignment: dict[str, int] | None = None
    steps: list[TraceStep]


class LDistributionRequest(BaseModel):
    order: str


class LDistributionEntry(BaseModel):
    L: int | None
    count: int


class LDistributionResponse(BaseModel):
    entries: list[LDistributionEntry]


class CountOrdersRequest(BaseModel):
    n: int


class CountOrdersResponse(BaseModel):
    count: str


# --- dnf --------------------------------------------------------------------


class BlowupSpec(BaseModel):
    n: int
    k: int
    m: int
    seed: int = 0


class CnfSource(BaseModel):
    """Exactly one of `dimacs` or `blowup` supplies the CNF."""

    dimacs: str | None = None
    blowup: BlowupSpec | None = None


class DistributeRequest(CnfSource):
    count_only: bool = False


class DistributeResponse(BaseModel):
    clause_sizes: list[int]
    disjunct_count: str
    disjuncts: list[list[int]] | None = None
    text: str | None = None


class DnfSatisfyResponse(BaseModel):
    satisfiable: bool
    assignment: dict[str, int] | None = None


class DnfClassifyResponse(BaseModel):
    classification: Literal["tautology", "contradiction", "contingency"]


# --- census -----------------------------------------------------------------


class CensusClassesRequest(BaseModel):
    n_lo: int
    n_hi: int


class CensusClassesRow(BaseModel):
    n: int
    u: int
    class_count: str


class CensusClassesResponse(BaseModel):
    rows: list[CensusClassesRow]


class RtableRequest(BaseModel):
    n_lo: int
    n_hi: int
    s_lo: int = 1
    s_hi: int = 1


class RtableRow(BaseModel):
    n: int
    s: int
    ratio_num: str
    ratio_den: str
    decimal: str


class RtableResponse(BaseModel):
    rows: list[RtableRow]


class FirstTrueRequest(BaseModel):
    n: int
    m_lo: int | None = None
    m_hi: int | None = None


class FirstTrueRow(BaseModel):
    n: int
    m: int
    count: str


class FirstTrueResponse(BaseModel):
    rows: list[FirstTrueRow]


class LuckyRequest(BaseModel):
    n: int
    m_lo: int | None = None
    m_hi: int | None = None


class LuckyRow(BaseModel):
    n: int
    m: int
    ratio_num: str
    ratio_den: str
    decimal: str


class LuckyResponse(BaseModel):
    rows: list[LuckyRow]
