from __future__ import annotations

import pytest
from hypothesis import given

from strategies import elements, words
from z3plane import presentations as P
from z3plane.algebra import (
    DX,
    TH,
    X,
    Element,
    MixedPresentationError,
    Presentation,
    RewriteBudgetExceeded,
    RewriteRule,
    AlgebraError,
    check_local_confluence,
    format_element,
    grade_of,
    graded_commutator,
    multiply,
    normal_form,
)
from z3plane.scalar import J, J2, ONE, Q, QINV, j_pow

plane, om = P.plane(), P.omega()


def test_multiply_is_free_concatenation():
    x, th = plane.gen("x"), plane.gen("th")
    assert multiply(x, th).terms == {(X, TH): ONE}
    assert multiply(th, th * th).terms == {(TH, TH, TH): ONE}
    f = x * th + th
    assert multiply(plane.one(), f) == f


def test_mixed_presentations_raise():
    with pytest.raises(MixedPresentationError):
        multiply(plane.gen("x"), P.dual().gen("phi"))


def test_normal_form_examples():
    assert normal_form(plane.word("th", "x")) == plane.word("x", "th").scale(QINV)
    assert normal_form(plane.word("th", "th", "th")).is_zero()
    assert normal_form(om.word("dx", "x")) == om.word("x", "dx").scale(J)
    assert normal_form(om.word("dx", "dx", "dx")).is_zero()


def test_inverse_rules():
    assert normal_form(plane.word("x", "xi")) == plane.one()
    assert normal_form(plane.word("th", "xi")) == plane.word("xi", "th").scale(Q)
    # dθ x⁻¹ picks up the conjugated correction term
    r = normal_form(om.word("dth", "xi"))
    assert len(r) == 2


def test_graded_commutator_examples():
    x, th = plane.gen("x"), plane.gen("th")
    assert normal_form(graded_commutator(x, x)).is_zero()
    assert normal_form(graded_commutator(x, th)) == normal_form(x * th - th * x)


def test_grade_of():
    assert grade_of(plane.word("x", "th")) == 1
    assert grade_of(om.gen("dth")) == 2
    assert grade_of(plane.gen("x") + plane.gen("th")) == "mixed"
    assert grade_of(plane.zero()) == 0


def test_strategies_agree_on_samples():
    w = (TH, TH, X, X, TH)
    assert plane.reduce_word(w, "left") == plane.reduce_word(w, "right")


@pytest.mark.parametrize("name", ["plane", "omega", "dual", "gl", "gl-plane", "gl-dual", "mixed-partial"])
def test_bundled_presentations_confluent(name):
    assert check_local_confluence(P.get(name), max_len=4, random_words=200)


def test_corrupted_eq20_is_detected():
    rels = P.PLANE_RELATIONS + P.FORM_RELATIONS_19 + [P.relation((DX, P.DTH), Q, (P.DTH, DX))] + P.FORM_RELATIONS_21 \
        + P.FORM_RELATIONS_22 + P.FORM_RELATIONS_23
    rules = ([P.rule_from_relation(r, P.OMEGA_ORDER) for r in rels]
             + [P.nilpotent(TH), P.nilpotent(DX)] + P.inverse_rules(rels))
    bad = Presentation("omega-bad", P.OMEGA_ORDER, rules, weights=P.FORM_WEIGHTS)
    report = check_local_confluence(bad, max_len=4)
    assert not report.confluent
    assert report.witness is not None


def test_validator_rejects_increasing_rule():
    with pytest.raises(AlgebraError):
        Presentation("bad", (X, TH), [RewriteRule((X, TH), {(TH, X): ONE})])


def test_budget():
    with pytest.raises(RewriteBudgetExceeded):
        om.clear_cache()
        normal_form(om.element({(P.D2TH, P.DTH, P.DX, P.TH, P.X) * 2: ONE}), budget=3)
    om.clear_cache()


def test_format_element():
    assert format_element(plane.zero()) == "0"
    e = normal_form(plane.word("th", "x") - plane.one().scale(2))
    assert format_element(e) == "-2 + q^-1*x*th"


@given(elements(plane))
def test_normal_form_idempotent(e):
    n = normal_form(e)
    assert normal_form(n) == n
    assert all(plane.is_normal(w) for w in n.terms)


@given(elements(om, max_len=3), elements(om, max_len=3))
def test_normal_form_respects_products(a, b):
    assert normal_form(normal_form(a) * normal_form(b)) == normal_form(a * b)


@given(words(om, 5))
def test_left_and_right_strategies_agree(w):
    assert om.reduce_word(w, "left") == om.reduce_word(w, "right")


@given(elements(plane), elements(plane))
def test_normal_form_linear(a, b):
    assert normal_form(a + b) == normal_form(a) + normal_form(b)
