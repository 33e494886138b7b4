"""Endpoint handlers wiring the HTTP surface to the core modules."""

from __future__ import annotations

from fractions import Fraction

from fastapi import APIRouter

from .. import __version__, arith, census, dnf, formulas, search
from ..errors import CapacityError, DomainError, ParseError, check_count
from . import schemas as s

router = APIRouter()


def _atom_index(key: str) -> int:
    raw = key.strip()
    if raw[:1] in ("p", "x"):
        raw = raw[1:]
    try:
        index = int(raw)
    except ValueError:
        raise DomainError(f"bad atom key {key!r}")
    if index < 1:
        raise DomainError(f"atom index must be positive, got {key!r}")
    return index


def _assignment(assign: dict[str, int]) -> dict[int, int]:
    out = {}
    for key, value in assign.items():
        if value not in (0, 1):
            raise DomainError(f"truth value for {key!r} must be 0 or 1, got {value}")
        out[_atom_index(key)] = value
    return out


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"bad rational value {text!r}")


def _resolve_cnf(source: s.CnfSource) -> dnf.CnfFormula:
    if (source.dimacs is None) == (source.blowup is None):
        raise DomainError("provide exactly one of 'dimacs' or 'blowup'")
    if source.dimacs is not None:
        return dnf.parse_dimacs(source.dimacs)
    spec = source.blowup
    return dnf.blowup_instance(spec.n, spec.k, spec.m, spec.seed)


def _trace_steps(trace: search.SearchTrace) -> list[s.TraceStep]:
    return [
        s.TraceStep(t=t, bits=list(bits), result=result)
        for t, (bits, result) in enumerate(trace.steps, start=1)
    ]


@router.get("/health", response_model=s.HealthResponse)
def health() -> s.HealthResponse:
    return s.HealthResponse(status="ok", version=__version__)


# --- formulas ---------------------------------------------------------------


@router.post("/formula/eval", response_model=s.EvalResponse)
def formula_eval(req: s.EvalRequest) -> s.EvalResponse:
    f = formulas.parse(req.formula)
    return s.EvalResponse(value=formulas.evaluate(f, _assignment(req.assign)))


@router.post("/formula/table", response_model=s.TableResponse)
def formula_table(req: s.TableRequest) -> s.TableResponse:
    f = formulas.parse(req.formula)
    table = formulas.truth_table(f, req.atoms)
    rows = []
    for k in range(1, table.size + 1):
        assignment = table.row_assignment(k)
        rows.append(
            s.TableRow(row=k, bits=[assignment[a] for a in table.atoms], result=table.result(k))
        )
    return s.TableResponse(atoms=list(table.atoms), rows=rows)


@router.post("/formula/analyze", response_model=s.AnalyzeResponse)
def formula_analyze(req: s.AnalyzeRequest) -> s.AnalyzeResponse:
    f = formulas.parse(req.formula)
    essentials = sorted(formulas.essential_atoms(f))
    return s.AnalyzeResponse(
        text=formulas.to_text(f),
        atoms=sorted(formulas.atoms(f)),
        quasinorm=formulas.quasinorm(f),
        essential_atoms=essentials,
        class_quasinorm=len(essentials),
        irreducible=formulas.is_irreducible(f),
        representative=formulas.to_text(formulas.irreducible_representative(f)),
    )


@router.post("/formula/equivalent", response_model=s.EquivalentResponse)
def formula_equivalent(req: s.EquivalentRequest) -> s.EquivalentResponse:
    left = formulas.parse(req.left)
    right = formulas.parse(req.right)
    return s.EquivalentResponse(equivalent=formulas.equivalent(left, right))


# --- arith ------------------------------------------------------------------


def _poly_response(p: arith.MultilinearPoly) -> s.PolyResponse:
    terms = []
    for mask in sorted(p.terms):
        if mask == 0:
            continue
        vars_ = [i + 1 for i in range(p.n) if mask & (1 << i)]
        terms.append(s.PolyTerm(vars=vars_, coeff=p.terms[mask]))
    return s.PolyResponse(n=p.n, terms=terms, constant=p.constant_term, text=arith.poly_text(p))


@router.post("/arith/poly", response_model=s.PolyResponse)
def arith_poly(req: s.PolyRequest) -> s.PolyResponse:
    f = formulas.parse(req.formula)
    if req.characteristic:
        p = arith.characteristic(f, req.dimension)
    else:
        p = arith.arithmetize(f, req.dimension)
    if req.substitute is not None:
        p = arith.substitute_equal(p, req.substitute.a, req.substitute.b)
    return _poly_response(p)


@router.post("/arith/roots", response_model=s.RootsResponse)
def arith_roots(req: s.RootsRequest) -> s.RootsResponse:
    f = formulas.parse(req.formula)
    if req.factored:
        fp = arith.factored_arithmetize(f, req.dimension)
        if req.of == "characteristic":
            # the sieve finds roots of the factored associated polynomial;
            # the characteristic roots are the remaining cube points
            n = fp.n
            h_roots = arith.factored_binary_roots(fp)
            points = {arith.point_of_mask(mask, n) for mask in range(1 << n)}
            roots = points - h_roots
        else:
            roots = arith.factored_binary_roots(fp)
            n = fp.n
    else:
        if req.of == "characteristic":
            p = arith.characteristic(f, req.dimension)
        else:
            p = arith.arithmetize(f, req.dimension)
        roots = arith.binary_roots(p)
        n = p.n
    return s.RootsResponse(n=n, roots=[list(r) for r in sorted(roots)])


@router.post("/arith/solve", response_model=s.SolveResponse)
def arith_solve(req: s.SolveRequest) -> s.SolveResponse:
    f = formulas.parse(req.formula)
    g = arith.characteristic(f)
    others = {_atom_index(k): _fraction(v) for k, v in req.others.items()}
    result = arith.solve_for_variable(g, req.var, others)
    if result.kind == arith.SolveResult.VALUE:
        return s.SolveResponse(
            kind="value",
            numerator=str(result.value.numerator),
            denominator=str(result.value.denominator),
        )
    return s.SolveResponse(kind=result.kind)


@router.post("/arith/exponent-variant", response_model=s.ExponentVariantResponse)
def arith_exponent_variant(req: s.ExponentVariantRequest) -> s.ExponentVariantResponse:
    f = formulas.parse(req.formula)
    p = arith.characteristic(f) if req.characteristic else arith.arithmetize(f)
    exponents = {(spec.mask, spec.var): spec.exp for spec in req.exponents}
    return s.ExponentVariantResponse(
        agrees=arith.exponent_variant_agrees(p, exponents, req.max_points)
    )


@router.post("/arith/input-size", response_model=s.InputSizeResponse)
def arith_input_size(req: s.InputSizeRequest) -> s.InputSizeResponse:
    return s.InputSizeResponse(count=str(arith.expanded_input_size(req.n)))


# --- search -----------------------------------------------------------------


@router.post("/search/adversary", response_model=s.AdversaryResponse)
def search_adversary(req: s.AdversaryRequest) -> s.AdversaryResponse:
    order = search.parse_order(req.order)
    chosen = sum(1 for flag in (req.worst, req.row is not None, req.rows is not None) if flag)
    if chosen != 1:
        raise DomainError("provide exactly one of 'worst', 'row' or 'rows'")
    if req.worst:
        f = search.worst_case_formula(order)
    elif req.row is not None:
        f = search.adversary_single_row(order, req.row)
    else:
        f = search.adversary_rows(order, req.rows)
    return s.AdversaryResponse(formula=formulas.to_text(f))


@router.post("/search/run", response_model=s.SearchResponse)
def search_run(req: s.SearchRequest) -> s.SearchResponse:
    order = search.parse_order(req.order)
    f = formulas.parse(req.formula)
    trace = search.run_search(order, f)
    return s.SearchResponse(L=trace.L, steps=_trace_steps(trace))


@router.post("/search/tower", response_model=s.TowerResponse)
def search_tower(req: s.TowerRequest) -> s.TowerResponse:
    order = search.parse_order(req.order)
    f = formulas.parse(req.formula)
    if req.size < 0:
        raise DomainError(f"tower size must be nonnegative, got {req.size}")
    tower = search.TowerAlgorithm(order)
    for _ in range(req.size):
        tower = search.tower_extend(tower)
    charged, found = search.tower_run(tower, f)
    return s.TowerResponse(rows_charged=charged, L=found)


@router.post("/search/heuristic", response_model=s.HeuristicResponse)
def search_heuristic(req: s.HeuristicRequest) -> s.HeuristicResponse:
    order = search.parse_order(req.order)
    f = formulas.parse(req.formula)
    h = search.HeuristicAlgorithm(order.n, frozenset(req.positions))
    steps = []
    found_at = None
    for t in sorted(h.positions):
        assignment = search.explored_assignment(order, t)
        result = formulas.evaluate(f, assignment)
        steps.append(
            s.TraceStep(t=t, bits=[assignment[k] for k in range(1, order.n + 1)], result=result)
        )
        if result:
            found_at = t
            break
    assignment = search.heuristic_run(h, order, f)
    return s.HeuristicResponse(
        found=assignment is not None,
        position=found_at,
        assignment=None if assignment is None else {f"p{k}": v for k, v in sorted(assignment.items())},
        steps=steps,
    )


@router.post("/search/l-distribution", response_model=s.LDistributionResponse)
def search_l_distribution(req: s.LDistributionRequest) -> s.LDistributionResponse:
    order = search.parse_order(req.order)
    tally = search.l_distribution(order)
    entries = [
        s.LDistributionEntry(L=key, count=tally[key])
        for key in sorted(tally, key=lambda k: (k is None, k))
    ]
    return s.LDistributionResponse(entries=entries)


@router.post("/search/count-orders", response_model=s.CountOrdersResponse)
def search_count_orders(req: s.CountOrdersRequest) -> s.CountOrdersResponse:
    return s.CountOrdersResponse(count=str(search.count_orders(req.n)))


# --- dnf --------------------------------------------------------------------


@router.post("/dnf/distribute", response_model=s.DistributeResponse)
def dnf_distribute(req: s.DistributeRequest) -> s.DistributeResponse:
    cnf = _resolve_cnf(req)
    sizes = [len(c) for c in cnf.clauses]
    count = dnf.count_disjuncts(cnf)
    if req.count_only:
        return s.DistributeResponse(clause_sizes=sizes, disjunct_count=str(count))
    converted = dnf.distribute(cnf)
    return s.DistributeResponse(
        clause_sizes=sizes,
        disjunct_count=str(count),
        disjuncts=[list(d) for d in converted.disjuncts],
        text=formulas.to_text(dnf.dnf_to_formula(converted)),
    )


@router.post("/dnf/satisfy", response_model=s.DnfSatisfyResponse)
def dnf_satisfy(req: s.CnfSource) -> s.DnfSatisfyResponse:
    converted = dnf.distribute(_resolve_cnf(req))
    assignment = dnf.dnf_satisfying_assignment(converted)
    return s.DnfSatisfyResponse(
        satisfiable=assignment is not None,
        assignment=None if assignment is None else {f"p{k}": v for k, v in sorted(assignment.items())},
    )


@router.post("/dnf/classify", response_model=s.DnfClassifyResponse)
def dnf_classify(req: s.CnfSource) -> s.DnfClassifyResponse:
    converted = dnf.distribute(_resolve_cnf(req))
    return s.DnfClassifyResponse(classification=dnf.classify(converted).value)


# --- census -----------------------------------------------------------------


@router.post("/census/classes", response_model=s.CensusClassesResponse)
def census_classes(req: s.CensusClassesRequest) -> s.CensusClassesResponse:
    return s.CensusClassesResponse(rows=census.census_rows(req.n_lo, req.n_hi))


@router.post("/census/rtable", response_model=s.RtableResponse)
def census_rtable(req: s.RtableRequest) -> s.RtableResponse:
    return s.RtableResponse(rows=census.rtable_rows(req.n_lo, req.n_hi, req.s_lo, req.s_hi))


def _row_range(n: int, m_lo: int | None, m_hi: int | None, lowest: int) -> tuple[int, int]:
    if not 1 <= n <= census.CENSUS_MAX_N:
        raise CapacityError(f"n={n} outside the census range 1..{census.CENSUS_MAX_N}")
    rows = 1 << n
    lo = lowest if m_lo is None else m_lo
    hi = rows if m_hi is None else m_hi
    check_count(max(hi - lo + 1, 0), "table rows")
    return lo, hi


@router.post("/census/firsttrue", response_model=s.FirstTrueResponse)
def census_firsttrue(req: s.FirstTrueRequest) -> s.FirstTrueResponse:
    lo, hi = _row_range(req.n, req.m_lo, req.m_hi, lowest=1)
    return s.FirstTrueResponse(rows=census.firsttrue_rows(req.n, lo, hi))


@router.post("/census/lucky", response_model=s.LuckyResponse)
def census_lucky(req: s.LuckyRequest) -> s.LuckyResponse:
    lo, hi = _row_range(req.n, req.m_lo, req.m_hi, lowest=0)
    return s.LuckyResponse(rows=census.lucky_rows(req.n, lo, hi))
