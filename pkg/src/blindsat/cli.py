"""Command-line client for the blindsat service.

Every subcommand builds a JSON request, posts it to the service API and
formats the response as CSV (default) or JSON. By default the service app
is mounted in-process, so no server is needed; point --server (or
BLINDSAT_SERVER) at a running instance to go over the network.

Exit status: 0 ok, 1 domain error, 2 usage or parse error, 3 capacity.
On a nonzero status the only output is a machine-readable error record.
"""

from __future__ import annotations

import asyncio
import json
import sys

import click
import httpx

EXIT_BY_KIND = {"domain": 1, "parse": 2, "usage": 2, "capacity": 3}


def _request(server: str | None, path: str, payload: dict) -> tuple[int, dict]:
    if server:
        with httpx.Client(base_url=server, timeout=60.0) as client:
            response = client.post(path, json=payload)
        return response.status_code, response.json()

    async def go() -> tuple[int, dict]:
        from .service.app import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, base_url="http://blindsat.local") as client:
            response = await client.post(path, json=payload)
        return response.status_code, response.json()

    return asyncio.run(go())


def _fail(kind: str, message: str, **extra) -> None:
    record = {"error": {"kind": kind, "message": message, **extra}}
    click.echo(json.dumps(record))
    sys.exit(EXIT_BY_KIND.get(kind, 1))


def _call(server: str | None, path: str, payload: dict) -> dict:
    try:
        status, body = _request(server, path, payload)
    except httpx.HTTPError as exc:
        _fail("domain", f"service unreachable: {exc}")
    if status == 422:
        _fail("usage", json.dumps(body.get("detail", body)))
    if status >= 400:
        info = body.get("error", {})
        _fail(info.get("kind", "domain"), info.get("message", "request failed"),
              **({"position": info["position"]} if info.get("position") is not None else {}))
    return body


def _cell(value) -> str:
    if value is None:
        return "none"
    return str(value)


def _emit(fmt: str, schema: str, columns: list[str], records: list[dict],
          summary: dict | None = None, summary_lines: list[str] | None = None) -> None:
    if fmt == "json":
        envelope: dict = {"schema": schema, "records": records}
        if summary:
            envelope.update(summary)
        click.echo(json.dumps(envelope))
        return
    click.echo(",".join(columns))
    for record in records:
        click.echo(",".join(_cell(record[c]) for c in columns))
    for line in summary_lines or []:
        click.echo(line)


def _common(f):
    f = click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
                     show_default=True, help="Output format.")(f)
    f = click.option("--server", envvar="BLINDSAT_SERVER", default=None,
                     help="Service base URL; default runs the app in-process.")(f)
    return f


def _parse_pairs(text: str, what: str) -> dict[str, str]:
    out: dict[str, str] = {}
    if not text.strip():
        return out
    for chunk in text.split(","):
        if "=" not in chunk:
            _fail("usage", f"bad {what} entry {chunk!r}; expected key=value")
        key, value = chunk.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        _fail("usage", f"bad {what} list {text!r}")


def _parse_range(text: str, what: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo_txt, hi_txt = text.split("..", 1)
            lo, hi = int(lo_txt), int(hi_txt)
        else:
            lo = hi = int(text)
    except ValueError:
        _fail("usage", f"bad {what} range {text!r}; expected N or LO..HI")
    if lo > hi:
        _fail("usage", f"empty {what} range {text!r}")
    return lo, hi


@click.group()
def main() -> None:
    """Workbench for blind truth-table search on propositional formulas."""


@main.command("eval")
@click.argument("formula")
@click.option("--assign", default="", help="Assignment like p1=1,p2=0.")
@_common
def cmd_eval(formula: str, assign: str, fmt: str, server: str | None) -> None:
    """Evaluate FORMULA under a complete assignment; prints 0 or 1."""
    pairs = _parse_pairs(assign, "assignment")
    try:
        mapping = {k: int(v) for k, v in pairs.items()}
    except ValueError:
        _fail("usage", f"assignment values must be 0 or 1: {assign!r}")
    body = _call(server, "/api/formula/eval", {"formula": formula, "assign": mapping})
    if fmt == "json":
        click.echo(json.dumps({"schema": "eval", "records": [{"value": body["value"]}]}))
    else:
        click.echo(str(body["value"]))


@main.command("table")
@click.argument("formula")
@click.option("--atoms", default=None, help="Atom order like 1,2,3 (default: sorted atoms).")
@_common
def cmd_table(formula: str, atoms: str | None, fmt: str, server: str | None) -> None:
    """Print FORMULA's truth table."""
    payload: dict = {"formula": formula}
    if atoms is not None:
        payload["atoms"] = _parse_ints(atoms, "atom")
    body = _call(server, "/api/formula/table", payload)
    names = [f"p{a}" for a in body["atoms"]]
    records = [
        {"row": row["row"], **dict(zip(names, row["bits"])), "result": row["result"]}
        for row in body["rows"]
    ]
    _emit(fmt, "truth_table", ["row", *names, "result"], records)


@main.command("poly")
@click.argument("formula")
@click.option("--characteristic", is_flag=True, help="Subtract 1 from the constant term.")
@click.option("--substitute", default=None, metavar="A:B", help="Replace xA by xB first.")
@click.option("--dimension", type=int, default=None, help="Widen the ambient variable count.")
@_common
def cmd_poly(formula: str, characteristic: bool, substitute: str | None,
             dimension: int | None, fmt: str, server: str | None) -> None:
    """Print the associated (or characteristic) polynomial of FORMULA."""
    payload: dict = {"formula": formula, "characteristic": characteristic, "dimension": dimension}
    if substitute is not None:
        parts = substitute.split(":")
        if len(parts) != 2:
            _fail("usage", f"bad substitution {substitute!r}; expected A:B")
        try:
            payload["substitute"] = {"a": int(parts[0]), "b": int(parts[1])}
        except ValueError:
            _fail("usage", f"bad substitution {substitute!r}; expected integers A:B")
    body = _call(server, "/api/arith/poly", payload)
    if fmt == "json":
        records = [{"vars": t["vars"], "coeff": t["coeff"]} for t in body["terms"]]
        records.append({"vars": [], "coeff": body["constant"]})
        click.echo(json.dumps({"schema": "poly", "records": records,
                               "n": body["n"], "text": body["text"]}))
    else:
        click.echo(body["text"])


@main.command("roots")
@click.argument("formula")
@click.option("--of", type=click.Choice(["characteristic", "associated"]),
              default="characteristic", show_default=True)
@click.option("--factored", is_flag=True, help="Sieve roots factor by factor.")
@_common
def cmd_roots(formula: str, of: str, factored: bool, fmt: str, server: str | None) -> None:
    """Print the binary roots of FORMULA's polynomial."""
    body = _call(server, "/api/arith/roots",
                 {"formula": formula, "of": of, "factored": factored})
    names = [f"x{i}" for i in range(1, body["n"] + 1)]
    records = [dict(zip(names, root)) for root in body["roots"]]
    _emit(fmt, "roots", names, records)


@main.command("solve")
@click.argument("formula")
@click.option("--var", type=int, required=True, help="Variable index to solve for.")
@click.option("--others", default="", help="Pinned values like x2=1,x3=0 (rationals allowed).")
@_common
def cmd_solve(formula: str, var: int, others: str, fmt: str, server: str | None) -> None:
    """Solve the characteristic equation of FORMULA for one variable."""
    body = _call(server, "/api/arith/solve",
                 {"formula": formula, "var": var, "others": _parse_pairs(others, "others")})
    record = {"kind": body["kind"],
              "numerator": body.get("numerator"),
              "denominator": body.get("denominator")}
    _emit(fmt, "solve", ["kind", "numerator", "denominator"], [record])


@main.command("adversary")
@click.option("--order", required=True, help="Search order like sigma=1,2,3;d=000.")
@click.option("--row", type=int, default=None, help="Position the formula is true at.")
@click.option("--rows", default=None, help="Positions like 6,7,8.")
@click.option("--worst", is_flag=True, help="The full-sweep worst case for the order.")
@_common
def cmd_adversary(order: str, row: int | None, rows: str | None, worst: bool,
                  fmt: str, server: str | None) -> None:
    """Construct the formula true exactly at the chosen explored positions."""
    payload: dict = {"order": order, "worst": worst}
    if row is not None:
        payload["row"] = row
    if rows is not None:
        payload["rows"] = _parse_ints(rows, "row")
    body = _call(server, "/api/search/adversary", payload)
    if fmt == "json":
        click.echo(json.dumps({"schema": "adversary", "records": [{"formula": body["formula"]}]}))
    else:
        click.echo(body["formula"])


def _trace_records(steps: list[dict], n: int) -> tuple[list[str], list[dict]]:
    names = [f"p{i}" for i in range(1, n + 1)]
    records = [
        {"t": step["t"], **dict(zip(names, step["bits"])), "result": step["result"]}
        for step in steps
    ]
    return ["t", *names, "result"], records


@main.command("search")
@click.argument("formula")
@click.option("--order", required=True, help="Search order like sigma=1,2,3;d=000.")
@_common
def cmd_search(formula: str, order: str, fmt: str, server: str | None) -> None:
    """Run the blind search and print the explored trace plus L."""
    body = _call(server, "/api/search/run", {"order": order, "formula": formula})
    n = len(body["steps"][0]["bits"]) if body["steps"] else 0
    columns, records = _trace_records(body["steps"], n)
    _emit(fmt, "search_trace", columns, records,
          summary={"L": body["L"]}, summary_lines=[f"L={_cell(body['L'])}"])


@main.command("tower")
@click.argument("formula")
@click.option("--order", required=True, help="Search order like sigma=1,2,3;d=000.")
@click.option("--size", type=int, default=0, show_default=True,
              help="Number of pre-process checklist entries.")
@_common
def cmd_tower(formula: str, order: str, size: int, fmt: str, server: str | None) -> None:
    """Run a pre-process tower of the given size on FORMULA."""
    body = _call(server, "/api/search/tower",
                 {"order": order, "size": size, "formula": formula})
    record = {"rows_charged": body["rows_charged"], "L": body["L"]}
    _emit(fmt, "tower", ["rows_charged", "L"], [record])


@main.command("heuristic")
@click.argument("formula")
@click.option("--order", required=True, help="Search order like sigma=1,2,3;d=000.")
@click.option("--rows", required=True, help="Explored positions like 1,2,5.")
@_common
def cmd_heuristic(formula: str, order: str, rows: str, fmt: str, server: str | None) -> None:
    """Run a fixed-row heuristic; prints its trace and found=<t|none>."""
    body = _call(server, "/api/search/heuristic",
                 {"order": order, "positions": _parse_ints(rows, "row"), "formula": formula})
    n = len(body["steps"][0]["bits"]) if body["steps"] else 0
    columns, records = _trace_records(body["steps"], n)
    _emit(fmt, "heuristic_trace", columns, records,
          summary={"found": body["found"], "position": body["position"],
                   "assignment": body["assignment"]},
          summary_lines=[f"found={_cell(body['position'])}"])


@main.command("dnf")
@click.option("--dimacs", default=None, metavar="PATH",
              help="DIMACS CNF file ('-' for stdin).")
@click.option("--blowup", default=None, metavar="N,K,M",
              help="Generate k clauses of m literals over n atoms instead.")
@click.option("--seed", type=int, default=0, show_default=True, help="Generator seed.")
@click.option("--count-only", is_flag=True, help="Report the disjunct count only.")
@click.option("--satisfy", is_flag=True, help="Scan the DNF for a satisfying assignment.")
@click.option("--classify", "classify_", is_flag=True, help="Tautology/contradiction/contingency.")
@_common
def cmd_dnf(dimacs: str | None, blowup: str | None, seed: int, count_only: bool,
            satisfy: bool, classify_: bool, fmt: str, server: str | None) -> None:
    """Distribute a CNF into DNF; prints the DNF formula text by default."""
    if (dimacs is None) == (blowup is None):
        _fail("usage", "provide exactly one of --dimacs or --blowup")
    if count_only + satisfy + classify_ > 1:
        _fail("usage", "choose at most one of --count-only, --satisfy, --classify")
    source: dict = {}
    if dimacs is not None:
        source["dimacs"] = sys.stdin.read() if dimacs == "-" else _read_file(dimacs)
    else:
        parts = _parse_ints(blowup, "blowup")
        if len(parts) != 3:
            _fail("usage", f"bad blowup spec {blowup!r}; expected N,K,M")
        source["blowup"] = {"n": parts[0], "k": parts[1], "m": parts[2], "seed": seed}

    if satisfy:
        body = _call(server, "/api/dnf/satisfy", source)
        if fmt == "json":
            click.echo(json.dumps({"schema": "dnf_satisfy", "records": [body]}))
        elif body["satisfiable"]:
            click.echo("atom,value")
            for key, value in body["assignment"].items():
                click.echo(f"{key},{value}")
        else:
            click.echo("UNSAT")
        return
    if classify_:
        body = _call(server, "/api/dnf/classify", source)
        if fmt == "json":
            click.echo(json.dumps({"schema": "dnf_classify", "records": [body]}))
        else:
            click.echo(body["classification"])
        return
    body = _call(server, "/api/dnf/distribute", {**source, "count_only": count_only})
    if fmt == "json":
        record = {"clause_sizes": body["clause_sizes"], "disjunct_count": body["disjunct_count"]}
        if not count_only:
            record["text"] = body["text"]
        click.echo(json.dumps({"schema": "dnf", "records": [record]}))
    elif count_only:
        click.echo(body["disjunct_count"])
    else:
        click.echo(body["text"])


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        _fail("usage", f"cannot read {path!r}: {exc}")


@main.command("census")
@click.argument("selector", type=click.Choice(["classes", "rtable", "firsttrue", "lucky"]))
@click.option("--n", "n_range", required=True, help="n or range like 1..5.")
@click.option("--s", "s_range", default="1", show_default=True, help="s or range (rtable).")
@click.option("--m", "m_range", default=None, help="m or range (firsttrue, lucky).")
@_common
def cmd_census(selector: str, n_range: str, s_range: str, m_range: str | None,
               fmt: str, server: str | None) -> None:
    """Emit one of the census tables as CSV or JSON."""
    n_lo, n_hi = _parse_range(n_range, "n")
    if selector == "classes":
        body = _call(server, "/api/census/classes", {"n_lo": n_lo, "n_hi": n_hi})
        _emit(fmt, "census", ["n", "u", "class_count"], body["rows"])
        return
    if selector == "rtable":
        s_lo, s_hi = _parse_range(s_range, "s")
        body = _call(server, "/api/census/rtable",
                     {"n_lo": n_lo, "n_hi": n_hi, "s_lo": s_lo, "s_hi": s_hi})
        _emit(fmt, "rtable", ["n", "s", "ratio_num", "ratio_den", "decimal"], body["rows"])
        return
    if n_lo != n_hi:
        _fail("usage", f"{selector} takes a single n, got range {n_range!r}")
    payload: dict = {"n": n_lo}
    if m_range is not None:
        payload["m_lo"], payload["m_hi"] = _parse_range(m_range, "m")
    if selector == "firsttrue":
        body = _call(server, "/api/census/firsttrue", payload)
        _emit(fmt, "firsttrue", ["n", "m", "count"], body["rows"])
    else:
        body = _call(server, "/api/census/lucky", payload)
        _emit(fmt, "lucky", ["n", "m", "ratio_num", "ratio_den", "decimal"], body["rows"])


if __name__ == "__main__":
    main()
