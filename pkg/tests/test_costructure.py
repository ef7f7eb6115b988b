from __future__ import annotations

import pytest
from hypothesis import given

from strategies import elements, words
from z3plane import costructure as C
from z3plane import presentations as P
from z3plane.algebra import GRADES, normal_form
from z3plane.calculus import cartan_u, cartan_w
from z3plane.report import all_ok
from z3plane.scalar import J, ONE, QINV, ZERO
from z3plane.tensor import TensorElement, tensor, tensor_multiply, tensor_normal_form

plane, om = P.plane(), P.omega()
x, th, xi = plane.gen("x"), plane.gen("th"), plane.gen("xi")


def test_coproduct_examples():
    assert C.coproduct(x) == tensor(x, x)
    assert C.coproduct(plane.one()) == TensorElement.unit(plane, plane)


def test_coproduct_theta_squared_golden():
    got = tensor_normal_form(C.coproduct(th * th))
    want = tensor(th * th, x * x) + tensor(x * x, th * th) + tensor(x * th, x * th).scale((1 + J) * QINV)
    assert got == want


def test_counit_examples():
    assert C.counit(x * x * x) == ONE
    assert C.counit(x * x * th) == ZERO
    assert C.counit(cartan_w()) == ZERO


def test_antipode_examples():
    assert C.antipode(x * x) == normal_form(xi * xi)
    assert C.antipode(th) == normal_form(-(xi * th * xi))
    # m ∘ (S ⊗ id) ∘ Δ(θ) = ε(θ) = 0
    assert C.antipode_left(C.coproduct(th), plane).is_zero()


def test_phi_L_examples():
    assert C.phi_L(om.gen("dx")) == tensor(x, om.gen("dx"))
    assert C.phi_L(om.gen("dth")) == tensor(th, om.gen("dx")).scale(J) + tensor(x, om.gen("dth"))
    with pytest.raises(C.UnknownGeneratorError):
        C.phi_L(om.gen("x"))


def test_delta_L_examples():
    assert tensor_normal_form(C.delta_L(cartan_w()) - tensor(plane.one(), cartan_w())).is_zero()
    assert tensor_normal_form(C.delta_L(cartan_u()) - tensor(plane.one(), cartan_u())).is_zero()
    rel = om.word("x", "dx") - om.word("dx", "x").scale(J * J)
    assert tensor_normal_form(C.delta_L(rel)).is_zero()


def test_hopf_suite_passes():
    checks = C.check_hopf_axioms(3)
    assert len(checks) > 100
    assert all_ok(checks), [c for c in checks if not c.ok][:3]


def test_coaction_suite_passes():
    checks = C.check_coaction_axioms()
    ids = {c.id for c in checks}
    assert {"Eq25:d:th", "Eq24:counit:dth", "Eq32-post:DeltaL(w^3)", "Eq30:w", "Eq30:u"} <= ids
    assert all_ok(checks), [c for c in checks if not c.ok][:3]


def test_wrong_antipode_twist_is_caught(monkeypatch):
    original = C._antipode_word

    def untwisted(w, pres):
        twist = sum(GRADES[w[i]] * GRADES[w[k]] for i in range(len(w)) for k in range(i + 1, len(w)))
        return {k: v * C.j_pow(-twist) for k, v in original(w, pres).items()}

    monkeypatch.setattr(C, "_antipode_word", untwisted)
    assert not C.antipode_left(C.coproduct(th * th), plane).is_zero()


@given(elements(plane, max_len=3), elements(plane, max_len=3))
def test_coproduct_multiplicative(a, b):
    lhs = tensor_normal_form(C.coproduct(a * b))
    rhs = tensor_normal_form(tensor_multiply(C.coproduct(a), C.coproduct(b)))
    assert lhs == rhs


@given(words(plane, 3))
def test_counit_axiom_on_words(w):
    e = plane.element({w: ONE})
    assert C.counit_left(C.coproduct(e)) == normal_form(e)


@given(elements(plane, max_len=3), elements(plane, max_len=3))
def test_antipode_graded_antihomomorphism(a, b):
    # S(ab) = j^{|a||b|} S(b) S(a) on homogeneous words
    for wa, ca in a.items():
        for wb, cb in b.items():
            ea, eb = plane.element({wa: ONE}), plane.element({wb: ONE})
            ga, gb = sum(GRADES[g] for g in wa), sum(GRADES[g] for g in wb)
            lhs = C.antipode(ea * eb)
            rhs = normal_form(C.antipode(eb) * C.antipode(ea)).scale(C.j_pow(ga * gb))
            assert lhs == rhs
