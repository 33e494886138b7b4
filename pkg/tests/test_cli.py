"""Thin-client CLI tests: output bytes, envelopes and exit statuses."""

import json

import pytest
from click.testing import CliRunner

from blindsat.cli import main

from conftest import EXAMPLE_A_TEXT


@pytest.fixture()
def runner():
    return CliRunner()


def run(runner, *args, expect_exit=0):
    result = runner.invoke(main, list(args))
    assert result.exit_code == expect_exit, result.output
    return result.output


class TestEval:
    def test_true(self, runner):
        assert run(runner, "eval", "p1 & ~p2", "--assign", "p1=1,p2=0") == "1\n"

    def test_top_empty_assignment(self, runner):
        assert run(runner, "eval", "TOP", "--assign", "") == "1\n"

    def test_example_a(self, runner):
        out = run(runner, "eval", EXAMPLE_A_TEXT, "--assign", "p1=0,p2=1,p3=0")
        assert out == "1\n"

    def test_json_envelope(self, runner):
        out = run(runner, "eval", "p1", "--assign", "p1=0", "--format", "json")
        assert json.loads(out) == {"schema": "eval", "records": [{"value": 0}]}

    def test_parse_error_exits_2(self, runner):
        out = run(runner, "eval", "p1 &", "--assign", "p1=1", expect_exit=2)
        assert json.loads(out)["error"]["kind"] == "parse"

    def test_missing_atom_exits_1(self, runner):
        out = run(runner, "eval", "p1", "--assign", "", expect_exit=1)
        assert json.loads(out)["error"]["kind"] == "domain"

    def test_bad_assignment_exits_2(self, runner):
        out = run(runner, "eval", "p1", "--assign", "p1:1", expect_exit=2)
        assert json.loads(out)["error"]["kind"] == "usage"


class TestTable:
    def test_csv(self, runner):
        out = run(runner, "table", "~p1 & ~p2")
        assert out == "row,p1,p2,result\n1,0,0,1\n2,0,1,0\n3,1,0,0\n4,1,1,0\n"

    def test_atom_order_flag(self, runner):
        out = run(runner, "table", "p2", "--atoms", "1,2")
        assert out.splitlines()[1] == "1,0,0,0"


class TestPoly:
    def test_example_a(self, runner):
        out = run(runner, "poly", EXAMPLE_A_TEXT)
        assert out == "1*x1 + 1*x2 - 2*x1*x2 + 1*x3 - 2*x1*x3 - 2*x2*x3 + 3*x1*x2*x3\n"

    def test_characteristic(self, runner):
        out = run(runner, "poly", EXAMPLE_A_TEXT, "--characteristic")
        assert out.strip().endswith("- 1")

    def test_bot(self, runner):
        assert run(runner, "poly", "BOT") == "0\n"

    def test_substitute(self, runner):
        out = run(runner, "poly", EXAMPLE_A_TEXT, "--characteristic", "--substitute", "2:1")
        assert out == "1*x3 - 1*x1*x3 - 1\n"

    def test_json_includes_constant_record(self, runner):
        body = json.loads(run(runner, "poly", "p1", "--format", "json"))
        assert body["schema"] == "poly"
        assert {"vars": [], "coeff": 0} in body["records"]


class TestRoots:
    def test_characteristic_roots(self, runner):
        out = run(runner, "roots", EXAMPLE_A_TEXT)
        assert out == "x1,x2,x3\n0,0,1\n0,1,0\n1,0,0\n"

    def test_associated(self, runner):
        out = run(runner, "roots", EXAMPLE_A_TEXT, "--of", "associated", "--factored")
        assert len(out.splitlines()) == 6


class TestSolve:
    def test_inconsistent(self, runner):
        out = run(runner, "solve", EXAMPLE_A_TEXT, "--var", "1", "--others", "x2=1,x3=1")
        assert out == "kind,numerator,denominator\ninconsistent,none,none\n"

    def test_value(self, runner):
        out = run(runner, "solve", EXAMPLE_A_TEXT, "--var", "1", "--others", "x2=0,x3=0")
        assert out.splitlines()[1] == "value,1,1"


class TestAdversaryAndSearch:
    ORDER = "sigma=1,2,3;d=000"

    def test_adversary_pipes_into_search(self, runner):
        for m in (1, 4, 8):
            formula = run(runner, "adversary", "--order", self.ORDER, "--row", str(m)).strip()
            out = run(runner, "search", formula, "--order", self.ORDER)
            assert out.splitlines()[-1] == f"L={m}"

    def test_worst_case_summary(self, runner):
        formula = run(runner, "adversary", "--order", self.ORDER, "--worst").strip()
        out = run(runner, "search", formula, "--order", self.ORDER)
        assert out.splitlines()[-1] == "L=8"

    def test_rows_option(self, runner):
        formula = run(runner, "adversary", "--order", self.ORDER, "--rows", "6,7,8").strip()
        out = run(runner, "search", formula, "--order", self.ORDER)
        assert out.splitlines()[-1] == "L=6"

    def test_bot_summary_none(self, runner):
        out = run(runner, "search", "BOT", "--order", self.ORDER)
        assert out.splitlines()[-1] == "L=none"
        assert len(out.splitlines()) == 10  # header + 8 rows + summary

    def test_search_json(self, runner):
        body = json.loads(
            run(runner, "search", "p1 & p2 & p3", "--order", self.ORDER, "--format", "json")
        )
        assert body["schema"] == "search_trace"
        assert body["L"] == 8
        assert len(body["records"]) == 8

    def test_trace_csv_shape(self, runner):
        out = run(runner, "search", "p1 & ~p2 & ~p3", "--order", self.ORDER)
        lines = out.splitlines()
        assert lines[0] == "t,p1,p2,p3,result"
        assert lines[5] == "5,1,0,0,1"


class TestTowerCli:
    def test_bot_charges_checklist_plus_table(self, runner):
        out = run(runner, "tower", "BOT", "--order", "sigma=1,2,3;d=000", "--size", "2")
        assert out == "rows_charged,L\n10,none\n"

    def test_checklist_hit(self, runner):
        out = run(runner, "tower", "p1 & p2 & p3", "--order", "sigma=1,2,3;d=000", "--size", "1")
        assert out == "rows_charged,L\n1,8\n"


class TestHeuristicCli:
    def test_miss(self, runner):
        out = run(
            runner, "heuristic", "p1 & p2 & p3", "--order", "sigma=1,2,3;d=000", "--rows", "1,2"
        )
        assert out.splitlines()[-1] == "found=none"

    def test_found(self, runner):
        out = run(
            runner, "heuristic", "p1 & p2 & p3", "--order", "sigma=1,2,3;d=000", "--rows", "1,8"
        )
        assert out.splitlines()[-1] == "found=8"


class TestDnfCli:
    def test_count_only(self, runner):
        assert run(runner, "dnf", "--blowup", "3,3,3", "--count-only") == "27\n"

    def test_text_output_parses(self, runner):
        out = run(runner, "dnf", "--blowup", "2,2,1", "--seed", "7").strip()
        from blindsat.formulas import parse

        parse(out)  # grammar-valid text

    def test_dimacs_stdin(self, runner):
        result = runner.invoke(
            main, ["dnf", "--dimacs", "-", "--satisfy"], input="p cnf 2 2\n1 0\n-2 0\n"
        )
        assert result.exit_code == 0
        assert result.output == "atom,value\np1,1\np2,0\n"

    def test_classify(self, runner):
        result = runner.invoke(
            main, ["dnf", "--dimacs", "-", "--classify"], input="p cnf 1 2\n1 0\n-1 0\n"
        )
        assert result.output == "contradiction\n"

    def test_unsat_output(self, runner):
        result = runner.invoke(
            main, ["dnf", "--dimacs", "-", "--satisfy"], input="p cnf 1 2\n1 0\n-1 0\n"
        )
        assert result.output == "UNSAT\n"

    def test_source_required(self, runner):
        out = run(runner, "dnf", expect_exit=2)
        assert json.loads(out)["error"]["kind"] == "usage"

    def test_capacity_exit_3(self, runner, monkeypatch):
        monkeypatch.setenv("BLINDSAT_CAP", "6")
        out = run(runner, "dnf", "--blowup", "5,4,3", expect_exit=3)
        assert json.loads(out)["error"]["kind"] == "capacity"


class TestCensusCli:
    def test_classes_table(self, runner):
        out = run(runner, "census", "classes", "--n", "1..5")
        assert out == (
            "n,u,class_count\n"
            "1,2,4\n"
            "2,4,16\n"
            "3,8,256\n"
            "4,16,65536\n"
            "5,32,4294967296\n"
        )

    def test_rtable_value_and_na(self, runner):
        out = run(runner, "census", "rtable", "--n", "2", "--s", "2..3")
        lines = out.splitlines()
        assert lines[1] == "2,2,15,16,0.9375"
        assert lines[2] == "2,3,NA,NA,NA"

    def test_firsttrue(self, runner):
        out = run(runner, "census", "firsttrue", "--n", "2")
        assert out.splitlines()[1:] == ["2,1,8", "2,2,4", "2,3,2", "2,4,1"]

    def test_lucky(self, runner):
        out = run(runner, "census", "lucky", "--n", "3", "--m", "4")
        assert out.splitlines()[1] == "3,4,1,70,0.0142857142857143"

    def test_capacity_exit_3(self, runner):
        out = run(runner, "census", "classes", "--n", "1..40", expect_exit=3)
        assert json.loads(out)["error"]["kind"] == "capacity"

    def test_range_validation(self, runner):
        out = run(runner, "census", "classes", "--n", "5..1", expect_exit=2)
        assert json.loads(out)["error"]["kind"] == "usage"


class TestDeterminism:
    def test_identical_invocations_byte_identical(self, runner):
        args = ["census", "rtable", "--n", "1..4", "--s", "1..4"]
        assert runner.invoke(main, args).output == runner.invoke(main, args).output

    def test_json_deterministic(self, runner):
        args = ["roots", EXAMPLE_A_TEXT, "--format", "json"]
        assert runner.invoke(main, args).output == runner.invoke(main, args).output
