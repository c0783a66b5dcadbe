import json
import math
import random

import pytest

from invmf.arith import primes_up_to
from invmf.cli import ParseError, parse_input, run


def test_parse_literal():
    expr = parse_input("5040")
    assert expr.kind == "literal"
    assert expr.evaluate().factors == ((2, 4), (3, 2), (5, 1), (7, 1))


def test_parse_factorial():
    expr = parse_input("10!")
    assert expr.kind == "factorial"
    n = expr.evaluate()
    assert n.value == math.factorial(10) == 3628800
    assert n.factors == ((2, 8), (3, 4), (5, 2), (7, 1))
    assert parse_input("0!").evaluate().value == 1
    assert parse_input("1!").evaluate().value == 1


def test_parse_primorial():
    assert parse_input("7#").evaluate().value == 210
    assert parse_input("2#").evaluate().value == 2
    assert parse_input("1#").evaluate().value == 1
    assert parse_input("30#").evaluate().factors == tuple(
        (p, 1) for p in primes_up_to(30)
    )


def test_parse_power():
    expr = parse_input("10^6")
    assert expr.kind == "power"
    assert expr.evaluate().factors == ((2, 6), (5, 6))
    assert parse_input("2^0").evaluate().value == 1
    assert parse_input("12^3").evaluate().factors == ((2, 6), (3, 3))


def test_parse_factored_literal():
    expr = parse_input("2^4*3^2*5*7")
    assert expr.kind == "factored"
    assert expr.evaluate().value == 5040
    assert parse_input("3*2").evaluate().factors == ((2, 1), (3, 1))
    assert parse_input("2*2*3").evaluate().factors == ((2, 2), (3, 1))
    assert parse_input(" 2 ^ 4 * 3 ").evaluate().value == 48


def test_parse_mixed_product():
    expr = parse_input("4!*7#")
    assert expr.kind == "product"
    assert expr.evaluate().value == 24 * 210
    assert parse_input("10!*2^3").evaluate().value == math.factorial(10) * 8
    assert parse_input("3!*10").evaluate().value == 60


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as e:
        parse_input("")
    assert e.value.position == 0
    with pytest.raises(ParseError) as e:
        parse_input("2^")
    assert e.value.position == 2
    with pytest.raises(ParseError) as e:
        parse_input("12 34")
    assert e.value.position == 3
    with pytest.raises(ParseError) as e:
        parse_input("5!!")
    assert e.value.position == 2
    with pytest.raises(ParseError) as e:
        parse_input("2*x")
    assert e.value.position == 2
    with pytest.raises(ParseError) as e:
        parse_input("*3")
    assert e.value.position == 0


def test_factored_literal_requires_prime_bases():
    with pytest.raises(ParseError) as e:
        parse_input("4*6")
    assert "4 is not prime" in str(e.value)
    with pytest.raises(ParseError):
        parse_input("10^6*2")  # all-power products are explicit factorizations
    # but a lone power or a mixed product may use composite bases
    parse_input("10^6")
    parse_input("10^6*3!")


def test_expression_round_trip_corpus():
    rng = random.Random(2024)
    primes = primes_up_to(200)
    for _ in range(100):
        kind = rng.choice(("literal", "factorial", "primorial", "power", "factored", "mixed"))
        if kind == "literal":
            v = rng.randrange(1, 10**6)
            text, expect = str(v), v
        elif kind == "factorial":
            m = rng.randrange(0, 13)
            text, expect = f"{m}!", math.factorial(m)
        elif kind == "primorial":
            m = rng.randrange(0, 60)
            text, expect = f"{m}#", math.prod([p for p in primes if p <= m] or [1])
        elif kind == "power":
            b = rng.randrange(1, 60)
            e = rng.randrange(0, 8)
            text, expect = f"{b}^{e}", b**e
        elif kind == "factored":
            chosen = rng.sample(primes, rng.randrange(1, 4))
            exps = [rng.randrange(1, 5) for _ in chosen]
            text = "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in zip(chosen, exps))
            expect = math.prod(p**e for p, e in zip(chosen, exps))
        else:
            m = rng.randrange(0, 9)
            v = rng.randrange(1, 1000)
            text, expect = f"{m}!*{v}", math.factorial(m) * v
        got = parse_input(text).evaluate()
        assert got.value == expect, text


def test_run_invert_count(capsys):
    assert run(["invert", "--function", "phi", "--aggregate", "count", "--n", "4!"]) == 0
    assert capsys.readouterr().out.strip() == "10"


def test_run_default_subcommand(capsys):
    assert run(["--function", "sigma", "--aggregate", "set", "--n", "12"]) == 0
    assert capsys.readouterr().out.strip() == "[6, 11]"


def test_run_empty_preimage(capsys):
    assert run(["--function", "phi", "--n", "3"]) == 0
    assert capsys.readouterr().out.strip() == "EMPTY"
    assert run(["--function", "phi", "--aggregate", "count", "--n", "3"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert run(["--function", "phi", "--aggregate", "min", "--n", "3"]) == 0
    assert capsys.readouterr().out.strip() == "EMPTY"


def test_run_json_schema(capsys):
    assert run(["--function", "phi", "--aggregate", "set", "--n", "24",
                "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert list(obj) == ["n", "function", "aggregate", "result", "count_ops", "elapsed_ms"]
    assert obj["n"] == "24"
    assert obj["result"] == ["35", "39", "45", "52", "56", "70", "72", "78", "84", "90"]
    assert set(obj["count_ops"]) == {"mul", "add"}

    assert run(["--function", "sigma", "--k", "2", "--aggregate", "sumpow:2",
                "--n", "10", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert list(obj) == ["n", "function", "k", "aggregate", "result", "count_ops", "elapsed_ms"]
    assert obj["k"] == "2" and obj["result"] == "9"

    assert run(["--function", "phi", "--aggregate", "min", "--n", "3",
                "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["result"] is None


def test_run_all_divisors(capsys):
    assert run(["--function", "phi", "--n", "4", "--all-divisors",
                "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["divisors"] == {"1": ["1", "2"], "2": ["3", "4", "6"],
                               "4": ["5", "8", "10", "12"]}

    assert run(["--function", "phi", "--n", "4", "--all-divisors"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "[5, 8, 10, 12]"
    assert "2: [3, 4, 6]" in lines


def test_run_stats_on_stderr(capsys):
    assert run(["--function", "phi", "--n", "24", "--aggregate", "count", "--stats"]) == 0
    captured = capsys.readouterr()
    assert captured.out.strip() == "10"
    assert "mul" in captured.err and "series" in captured.err


def test_run_table_factorial_min(capsys):
    assert run(["table", "--family", "factorial", "--from", "1", "--to", "4",
                "--function", "phi", "--aggregate", "min", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["aggregates"] == ["min"]
    assert [row["min"] for row in obj["rows"]] == ["1", "3", "7", "35"]
    assert [row["n"] for row in obj["rows"]] == ["1", "2", "6", "24"]


def test_run_table_text(capsys):
    assert run(["table", "--family", "power10", "--from", "0", "--to", "2",
                "--function", "phi"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].split() == ["m", "n", "count", "min", "max"]
    assert out[2].split()[:2] == ["1", "10"]


def test_run_table_primorial_family(capsys):
    assert run(["table", "--family", "primorial", "--from", "1", "--to", "3",
                "--function", "sigma", "--aggregate", "count", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert [row["n"] for row in obj["rows"]] == ["2", "6", "30"]


def test_run_oracle_subcommand(capsys):
    assert run(["oracle", "--function", "phi", "--n", "2", "--bound", "8"]) == 0
    assert capsys.readouterr().out.strip() == "[3, 4, 6]"
    assert run(["oracle", "--function", "sigma", "--n", "12", "--bound", "12",
                "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["result"] == ["6", "11"]


def test_usage_errors_exit_1(capsys):
    assert run(["--function", "phi", "--n", "4*6"]) == 1
    assert run(["--function", "phi", "--n", "2^"]) == 1
    assert run(["--function", "phi", "--aggregate", "median", "--n", "4"]) == 1
    assert run(["--function", "phi", "--k", "2", "--n", "4"]) == 1
    assert run(["--function", "sigma", "--k", "0", "--n", "4"]) == 1
    assert run(["--function", "phi", "--n", "0"]) == 1
    assert run(["invert", "--function", "phi"]) == 1  # missing --n
    assert run(["table", "--family", "factorial", "--from", "3", "--to", "1",
                "--function", "phi"]) == 1
    capsys.readouterr()


def test_resource_limit_exits_2(capsys):
    assert run(["--function", "phi", "--n", "2^100*3^100*5^100*7^100"]) == 2
    err = capsys.readouterr().err
    assert "resource limit" in err


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    capsys.readouterr()
