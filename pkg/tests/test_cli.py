from __future__ import annotations

import io
import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given

from z3plane import presentations as P
from z3plane.algebra import Element, normal_form
from z3plane.cli import (
    Add, Call, Name, ParseError, UnknownTokenError, eval_text, format_value, main, parse, run_suites,
)
from z3plane.scalar import CycloNum, Scalar

from strategies import elements

FIXTURE = json.loads((Path(__file__).parent / "fixtures" / "check_schema.json").read_text())
ROUND_TRIP_ALGEBRAS = ("plane", "omega", "dual", "gl", "mixed-partial")


def as_element(v, pres):
    return Element(pres, {(): v}) if isinstance(v, Scalar) else v


def round_trips(e: Element, algebra: str) -> bool:
    e = normal_form(e)
    back = as_element(eval_text(format_value(e), algebra), e.pres)
    return normal_form(back) == e


def test_parse_shapes():
    tree = parse("th*x - q^-1*x*th")
    assert isinstance(tree, Add) and [s for s, _ in tree.terms] == [1, -1]
    tree = parse("d(d(d(x*th)))")
    assert isinstance(tree, Call) and tree.fn == "d" and tree.arg.arg.fn == "d"
    assert parse("x") == Name("x")


def test_parse_error_offset():
    with pytest.raises(ParseError) as info:
        parse("x^")
    assert info.value.offset == 2
    assert "offset 2" in str(info.value)


def test_unknown_token_lists_vocabulary():
    with pytest.raises(UnknownTokenError) as info:
        parse("x*foo")
    msg = str(info.value)
    assert info.value.offset == 2
    for tok in ("x", "th", "dx", "d2th", "phi", "Delta", "nf"):
        assert tok in msg


def test_eval_examples():
    assert format_value(eval_text("nf(th*x - q^-1*x*th)")) == "0"
    assert format_value(eval_text("nf(th x)")) == "q^-1*x*th"
    assert format_value(eval_text("d(d(d(x*th)))", "omega")) == "0"
    assert format_value(eval_text("nf(w^3)", "omega")) == "0"
    assert format_value(eval_text("nf(x*x^-1)", "omega")) == "1"


def test_round_trip_thousand_random_elements():
    rng = random.Random(7)
    for i in range(1000):
        algebra = ROUND_TRIP_ALGEBRAS[i % len(ROUND_TRIP_ALGEBRAS)]
        pres = P.get(algebra)
        terms = {}
        for _ in range(rng.randint(0, 3)):
            word = tuple(rng.choice(pres.generators) for _ in range(rng.randint(0, 4)))
            a = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            b = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            terms[word] = Scalar({rng.randint(-3, 3): CycloNum(a, b)})
        assert round_trips(Element(pres, terms), algebra)


@given(elements(P.get("omega")))
def test_round_trip_omega(e):
    assert round_trips(e, "omega")


@given(elements(P.get("dual")))
def test_round_trip_dual(e):
    assert round_trips(e, "dual")


def test_main_exit_codes(capsys):
    assert main(["nf(th*x)"]) == 0
    assert capsys.readouterr().out.strip() == "q^-1*x*th"
    assert main(["x^"]) == 2
    assert "offset 2" in capsys.readouterr().err
    assert main(["--check", "scalars"]) == 0
    assert capsys.readouterr().out.strip().endswith("5 checks, 0 failed")
    assert main(["--check", "scalars", "--max-degree", "2"]) == 2


def test_main_reports_failure(monkeypatch, capsys):
    from z3plane import cli
    from z3plane.report import Suite

    def broken(opts):
        s = Suite("scalars")
        s.zero("broken", "none", lambda: Scalar.coerce(1))
        return s.checks

    monkeypatch.setitem(cli.SUITES, "scalars", broken)
    assert main(["--check", "scalars"]) == 1
    assert "1 failed" in capsys.readouterr().out


def test_json_schema_and_counts(capsys):
    assert main(["--json"]) == 0
    rows = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    required, optional = set(FIXTURE["required_keys"]), set(FIXTURE["optional_keys"])
    counts = {}
    for row in rows:
        assert required <= set(row) <= required | optional
        assert row["status"] in FIXTURE["statuses"]
        counts[row["suite"]] = counts.get(row["suite"], 0) + 1
    assert counts == FIXTURE["counts"]
    assert len(rows) == FIXTURE["total"]
    assert len({r["id"] for r in rows}) == len(rows)
    by_id = {r["id"]: r for r in rows}
    assert by_id["Eq37:Tnabla-commute:m=8"]["status"] == "pass"
    assert by_id["Eq54:noninvariance"]["status"] == "expected-nonzero"
    assert "residual" in by_id["Eq54:noninvariance"]


def test_run_suites_rejects_unknown():
    with pytest.raises(KeyError):
        run_suites(["nope"])
