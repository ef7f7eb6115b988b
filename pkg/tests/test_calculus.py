from __future__ import annotations

import pytest
from hypothesis import given

from strategies import elements, words
from z3plane import calculus as C
from z3plane import presentations as P
from z3plane.algebra import GRADES, grade_of, normal_form
from z3plane.report import EXPECTED_NONZERO, FAIL, PASS, all_ok
from z3plane.scalar import J, J2, ONE, Q, QINV, Scalar

plane, om = P.plane(), P.omega()


def test_differentiate_examples():
    assert C.differentiate(plane.gen("x")) == om.gen("dx")
    th = om.gen("th")
    assert normal_form(C.differentiate(th * th)) == normal_form(-(om.word("dth", "th").scale(J)))
    assert normal_form(C.differentiate(om.word("x", "xi"))).is_zero()
    assert normal_form(C.differentiate(om.word("x", "th") - om.word("th", "x").scale(Q))).is_zero()


def test_second_differentials_are_closed():
    assert C.differentiate(om.gen("d2x")).is_zero()
    assert C.differentiate(om.gen("dx")) == om.gen("d2x")


def test_derived_coefficients_reproduce_eq22_and_eq23():
    r21, r22, r23 = P.FORM_RELATIONS_21, P.FORM_RELATIONS_22, P.FORM_RELATIONS_23
    assert C.derived_coefficient(r21[2], r22[2]) == {"d2x*dth": J2 * QINV}
    assert C.derived_coefficient(r22[1], r23[0]) == {"d2th*d2x": J2 * Q}


def test_well_defined_suite():
    checks = C.check_d_well_defined()
    assert all(c.status == PASS for c in checks), [c for c in checks if c.status != PASS]


def test_d_cubed_examples():
    for e in (plane.gen("x"), plane.word("x", "th"), plane.gen("xi")):
        assert C.d_nf(e, 3).is_zero()
    assert not C.d_nf(plane.word("x", "th"), 2).is_zero()


def test_d_cubed_suite():
    checks = C.check_d_cubed(8)
    assert all_ok(checks)
    assert [c.status for c in checks if c.status != PASS] == [EXPECTED_NONZERO]


def test_resolve_coefficients():
    ans, checks = C.resolve_coefficients()
    assert ans == C.RESOLVED
    by_id = {c.id: c for c in checks}
    assert by_id["Eq17a:Y=j"].status == PASS
    assert by_id["Eq17a:Y=1"].status == PASS
    # 1 + jY + j²Y² = 3 at Y = j²: a misprint pinned to its exact value
    assert by_id["Eq17a:Y=j2"].status == EXPECTED_NONZERO and by_id["Eq17a:Y=j2"].residual == "3"
    assert by_id["Eq11a:jX-1-at-Y=j2-equals-j-1"].status == PASS
    assert by_id["Eq11c:dth-d2x:first-Qprime"].status == EXPECTED_NONZERO
    for name in ("X", "A", "B", "C", "D", "Y", "F"):
        assert by_id[f"Eq16:{name}-at-Y=j"].status == PASS


def test_theta_cube_constraint_roots():
    assert C.theta_cube_constraint(J).is_zero()
    assert C.theta_cube_constraint(ONE).is_zero()
    assert C.theta_cube_constraint(J2) == Scalar.coerce(3)


def test_cartan_forms():
    w, u = C.cartan_w(), C.cartan_u()
    assert w == normal_form(om.word("dx", "xi"))
    assert grade_of(w) == 1 and grade_of(u) == 2
    assert normal_form(w * w * w).is_zero()
    x = om.gen("x")
    assert normal_form(x * u - (u * x).scale(Q)).is_zero()


def test_cartan_maurer_suite():
    checks = C.check_cartan_maurer()
    assert len(checks) == 22
    assert all(c.status == PASS for c in checks)


def test_left_extract_examples():
    px, pth = C.left_extract(C.differentiate(plane.gen("x")))
    assert px == plane.one() and pth.is_zero()
    px, pth = C.left_extract(C.differentiate(plane.gen("th")))
    assert px.is_zero() and pth == plane.one()
    with pytest.raises(C.NotFirstOrderError):
        C.left_extract(om.gen("d2x"))


def _grade(w):
    return sum(GRADES[g] for g in w) % 3


@given(words(om, 3), words(om, 3))
def test_leibniz_rule(a, b):
    ea, eb = om.element({a: ONE}), om.element({b: ONE})
    lhs = normal_form(C.differentiate(ea * eb))
    rhs = normal_form(C.differentiate(ea) * eb + (ea * C.differentiate(eb)).scale(J ** _grade(a)))
    assert lhs == rhs


@given(elements(om, max_len=3))
def test_d_respects_normal_form(e):
    assert normal_form(C.differentiate(e)) == normal_form(C.differentiate(normal_form(e)))


@given(elements(plane, max_len=4))
def test_d_cubed_vanishes(e):
    assert C.d_nf(e, 3).is_zero()
