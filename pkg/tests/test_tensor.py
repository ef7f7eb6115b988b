from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from strategies import scalars, words
from z3plane import presentations as P
from z3plane.algebra import DX, TH, X
from z3plane.costructure import coproduct
from z3plane.scalar import J, ONE, Q
from z3plane.tensor import TensorElement, tensor, tensor_multiply, tensor_normal_form

plane, om = P.plane(), P.omega()


def pair(a, b, left=plane, right=om):
    return TensorElement(left, right, {(a, b): ONE})


def test_twist_example():
    # (x ⊗ dx)(θ ⊗ dx) = j xθ ⊗ dx²
    t = tensor_multiply(pair((X,), (DX,)), pair((TH,), (DX,)))
    assert t == TensorElement(plane, om, {((X, TH), (DX, DX)): J})


def test_unit_and_grade_zero():
    t = pair((X,), (TH,), plane, plane)
    assert tensor_multiply(TensorElement.unit(plane, plane), t) == t
    assert tensor_multiply(pair((X,), (X,), plane, plane), t) == pair((X, X), (X, TH), plane, plane)


def test_normal_form_drops_zero_legs():
    t = tensor(plane.word("th", "th", "th"), plane.one())
    assert tensor_normal_form(t).is_zero()


def test_coproduct_is_homomorphism_on_eq1():
    x, th = plane.gen("x"), plane.gen("th")
    r = tensor_multiply(coproduct(x), coproduct(th)) - tensor_multiply(coproduct(th), coproduct(x)).scale(Q)
    assert tensor_normal_form(r).is_zero()
    assert tensor_normal_form(coproduct(th) ** 3).is_zero()


def tensors(left, right):
    return st.dictionaries(st.tuples(words(left, 2), words(right, 2)), scalars, max_size=3).map(
        lambda d: TensorElement(left, right, d)
    )


@given(tensors(plane, om), tensors(plane, om), tensors(plane, om))
def test_twisted_product_associative(a, b, c):
    assert tensor_multiply(tensor_multiply(a, b), c) == tensor_multiply(a, tensor_multiply(b, c))


@given(tensors(plane, om), tensors(plane, om), tensors(plane, om))
def test_twisted_product_distributes(a, b, c):
    assert tensor_multiply(a, b + c) == tensor_multiply(a, b) + tensor_multiply(a, c)


@given(tensors(plane, om))
def test_tensor_normal_form_idempotent(t):
    n = tensor_normal_form(t)
    assert tensor_normal_form(n) == n
