"""Command line behaviour: contract examples, exit codes, output shapes."""

from __future__ import annotations

import json
import random

import pytest

from stmilnor import cli, exprparse
from stmilnor.identities import REGISTRY, CaseResult, IdentityDef


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_contract_examples(capsys):
    code1, out1, _ = run(capsys, "eval", "--p", "3", "--n", "2", "StDelta(1, Q(2,1))")
    code2, out2, _ = run(capsys, "eval", "--p", "3", "--n", "2", "Q(2,0)")
    assert code1 == code2 == 0
    assert out1 == out2

    code, out, _ = run(capsys, "eval", "--p", "3", "--n", "1", "Stu(0, x(1))")
    assert code == 0
    assert out.splitlines() == ["y1", "degree: 2  terms: 1"]

    code, out, _ = run(capsys, "eval", "--p", "3", "--n", "2", "L(2) - B(0;[0,1];2)")
    assert code == 0
    assert out.splitlines()[0] == "0"


def test_eval_defaults_and_json(capsys):
    code, out, _ = run(capsys, "eval", "Q(3,2)")  # defaults p=3, n=3
    assert code == 0

    code, out, _ = run(capsys, "eval", "--json", "--p", "3", "--n", "2", "x(1)*y(1)")
    assert code == 0
    data = json.loads(out)
    assert data["p"] == 3 and data["n"] == 2
    assert data["degree"] == 3 and data["term_count"] == 1
    assert data["terms"] == [{"c": 1, "ext": [1], "exp": [1, 0]}]


def test_syntax_errors_are_single_line_with_column(capsys):
    code, out, err = run(capsys, "eval", "--p", "3", "--n", "2", "Q(2,")
    assert code == 2
    assert out == ""
    assert err.startswith("error:") and err.count("\n") == 1
    assert "(column 5)" in err

    code, _, err = run(capsys, "eval", "z(1)")
    assert code == 2 and "unknown identifier" in err


def test_semantic_errors_exit_two(capsys):
    code, _, err = run(capsys, "eval", "--p", "4", "x(1)")
    assert code == 2 and "odd prime" in err
    code, _, err = run(capsys, "eval", "--p", "3", "--n", "2", "x(3)")
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "eval", "--p", "3", "StSR([1,0],[1],x(1))")
    assert code == 2 and "increasing" in err


def test_argparse_errors_are_single_line(capsys):
    code, _, err = run(capsys, "nosuchcommand")
    assert code == 2
    assert err.startswith("error:") and err.count("\n") == 1
    code, _, err = run(capsys, "verify")
    assert code == 2 and err.startswith("error:")


def test_verify_single_identity(capsys):
    code, out, _ = run(capsys, "verify", "--id", "thm3.1", "--p", "3", "--param", "n=2")
    assert code == 0
    assert out.startswith("ok thm3.1:")

    code, _, err = run(capsys, "verify", "--id", "nosuch")
    assert code == 2 and "unknown identity id" in err

    code, _, err = run(capsys, "verify", "--id", "thm3.1", "--p", "7")
    assert code == 2 and "no planned cases" in err

    code, _, err = run(capsys, "verify", "--id", "thm3.1", "--param", "n=two")
    assert code == 2 and "malformed --param" in err


def test_verify_tuple_valued_params(capsys):
    code, out, _ = run(capsys, "verify", "--id", "lem2.2", "--p", "3",
                       "--param", "e=0,1", "--param", "n=2")
    assert code == 0 and out.startswith("ok lem2.2:")


def test_verify_reports_failures_with_exit_one(capsys):
    ident = IdentityDef(
        id="selftest",
        summary="always failing",
        check=lambda p, params: CaseResult("selftest", p, params, False, "boom"),
        plan=lambda profile: [(3, {"k": 0})],
    )
    REGISTRY["selftest"] = ident
    try:
        code, out, _ = run(capsys, "verify", "--id", "selftest")
        assert code == 1
        assert out.startswith("FAIL selftest:")
        assert "first failure" in out and "boom" in out
        code, out, _ = run(capsys, "verify", "--id", "selftest", "--json")
        assert code == 1
        data = json.loads(out)
        assert data["first_failure"]["params"] == {"k": 0}

        code, out, _ = run(capsys, "verify-all", "--p", "3")
        assert code == 1
        assert out.splitlines()[-1].startswith("FAIL:")
    finally:
        del REGISTRY["selftest"]


def test_verify_all_quick_profile(capsys):
    code, out, _ = run(capsys, "verify-all", "--p", "3", "--profile", "quick")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == len(REGISTRY) + 1  # one per identity plus the summary
    ids = [line.split()[1].rstrip(":") for line in lines[:-1]]
    assert ids == sorted(REGISTRY)
    assert lines[-1].startswith("ok:")

    code, out, _ = run(capsys, "verify-all", "--p", "3", "--json")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == len(REGISTRY)
    assert all(row["failed"] == 0 for row in rows)

    code, _, err = run(capsys, "verify-all", "--p", "x")
    assert code == 2 and "malformed --p" in err


def test_index_set_output(capsys):
    code, out, _ = run(capsys, "index-set", "--kind", "J", "--u", "0", "--v", "3", "--p", "3")
    assert code == 0
    assert "2 elements" in out and "a=1:" in out

    code, out, _ = run(capsys, "index-set", "--kind", "I", "--u", "0", "--v", "5", "--json")
    data = json.loads(out)
    assert data["elements"] == [0, 1, 3, 9, 10]

    code, out, _ = run(capsys, "index-set", "--kind", "J", "--u", "0", "--v", "6", "--json")
    rows = json.loads(out)["elements"]
    assert all({"a", "blocks", "parts", "b", "c"} <= set(r) for r in rows)

    code, _, err = run(capsys, "index-set", "--kind", "I", "--u", "3", "--v", "1")
    assert code == 2 and err.startswith("error:")


def test_invariant_subcommand(capsys):
    code, out, _ = run(capsys, "invariant", "Q(2,1)", "--p", "3", "--n", "2")
    assert code == 0
    assert out.splitlines()[0] == "y1^6 + y1^4*y2^2 + y1^2*y2^4 + y2^6"

    code, _, err = run(capsys, "invariant", "x(1)*y(1)")
    assert code == 2 and "not an invariant" in err

    code, out, _ = run(capsys, "invariant", "B(1;[0];2)", "--p", "3", "--n", "2")
    assert code == 0


def test_seed_flag_is_accepted(capsys):
    code, _, _ = run(capsys, "eval", "--seed", "7", "y(1)")
    assert code == 0


def test_expression_grammar_round_trip_fuzz():
    rng = random.Random(2026)
    for _ in range(300):
        ast = exprparse.random_ast(rng, n=3, depth=3)
        src = exprparse.unparse(ast)
        assert exprparse.parse_expr(src) == ast
        assert exprparse.unparse(exprparse.parse_expr(src)) == src
