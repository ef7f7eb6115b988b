from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from z3plane import operators as O
from z3plane.calculus import differentiate, left_extract
from z3plane.report import EXPECTED_NONZERO, PASS, all_ok
from z3plane.scalar import J, J2, ONE, Scalar, j_pow, q_pow

M = O.PlaneMonomial
monos = st.builds(M, st.integers(0, 10), st.integers(0, 2))


def test_T_examples():
    assert O.act_T(M(0, 0)) == {}
    assert O.act_T(M(1, 0)) == {M(1, 0): ONE}
    assert O.act_T(M(2, 1)) == {}


def test_nabla_examples():
    assert O.act_nabla(M(0, 1)) == {M(1, 0): ONE}
    assert O.act_nabla(M(1, 0)) == {}
    for m in range(6):
        assert O.act_nabla(M(m, 1)) == {M(m + 1, 0): q_pow(m)}


def test_N_and_partials_examples():
    assert O.act_N(M(3, 1)) == {M(3, 1): Scalar.coerce(4)}
    assert O.act_partial_theta(M(1, 1)) == {M(1, 0): q_pow(1)}
    assert O.act_partial_x(M(0, 1)) == {}


def test_operator_grades():
    assert (O.T.grade, O.NABLA.grade, O.N.grade, O.PARTIAL_X.grade, O.PARTIAL_THETA.grade) == (0, 2, 0, 0, 2)


def test_spec_identities():
    assert (O.T @ O.NABLA - O.NABLA @ O.T).on(M(5, 1)) == {}
    assert O.NABLA(O.NABLA(O.NABLA.on(M(2, 2)))) == {}


def test_lie_suite():
    checks = O.check_lie_relations(8)
    ids = {c.id for c in checks}
    assert "Eq37:Tnabla-commute:m=8" in ids and "Eq48:f*w:m=8" in ids
    assert all(c.status == PASS for c in checks), [c for c in checks if c.status != PASS][:3]
    with pytest.raises(ValueError):
        O.check_lie_relations(2)


def test_coproduct_suite():
    checks = O.check_coproducts()
    assert len(checks) == 6 and all(c.status == PASS for c in checks)


def test_partial_suite():
    checks = O.check_partials()
    assert all_ok(checks)
    statuses = {c.id: c.status for c in checks}
    assert statuses["Eq54:noninvariance"] == EXPECTED_NONZERO
    assert statuses["Eq54:Delta(pth)-shape"] == PASS
    assert statuses["Eq54:counit:px-th"] == PASS
    assert statuses["Eq54:counit:px-x"] == EXPECTED_NONZERO


def test_broken_nabla_rule_is_caught(monkeypatch):
    # ∇θ = x + q j θ ∇ (j instead of j²) must disagree with x∂θ
    def bad(mono):
        mono = M(*mono)
        if mono == O.UNIT:
            return {}
        letter, rest = O._peel(mono)
        inner = broken(O._single(rest))
        if letter == "x":
            return O.scale(O.left_x(inner), q_pow(1))
        return O.add(O.left_x(O._single(rest)), O.left_theta(inner), J * q_pow(1))

    broken = O.PlaneOperator("∇'", bad, 2)
    reference = O.MUL_X @ O.PARTIAL_THETA
    assert all(reference.on(m) == O.NABLA.on(m) for m in O.basis(4))
    assert any(reference.on(m) != broken.on(m) for m in O.basis(4))


@given(monos)
def test_T_closed_form_agrees(mono):
    assert O.act_T(mono) == O.act_T_closed(mono)


@given(monos)
def test_N_commutes(mono):
    assert (O.N @ O.T).on(mono) == (O.T @ O.N).on(mono)
    assert (O.N @ O.NABLA).on(mono) == (O.NABLA @ O.N).on(mono)


@given(st.builds(M, st.integers(0, 6), st.integers(0, 2)))
def test_extraction_matches_partials(mono):
    px, pth = left_extract(differentiate(O.to_element({mono: ONE})))
    assert O.from_element(px) == O.act_partial_x(mono)
    assert O.from_element(pth) == O.act_partial_theta(mono)


@given(monos, monos, monos)
def test_monomial_product_associative(a, b, c):
    A, B, Cc = ({a: ONE}, {b: ONE}, {c: ONE})
    assert O.multiply(O.multiply(A, B), Cc) == O.multiply(A, O.multiply(B, Cc))
