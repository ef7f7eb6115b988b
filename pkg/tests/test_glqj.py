from __future__ import annotations

from z3plane import glqj as G
from z3plane import presentations as P
from z3plane.algebra import check_local_confluence, normal_form
from z3plane.report import EXPECTED_NONZERO, PASS, all_ok
from z3plane.scalar import J, ONE, q_pow


def test_gl_normal_forms():
    gl = P.gl()
    assert normal_form(gl.word("ga", "be")) == gl.word("be", "ga").scale(q_pow(-2))
    assert normal_form(gl.word("dd", "a")) == gl.word("a", "dd") - gl.word("be", "ga").scale(q_pow(-1) * (1 - J))


def test_gl_confluence():
    for name in ("gl", "gl-plane", "gl-dual"):
        assert check_local_confluence(P.get(name), max_len=4)
    extended = G.with_beta_cubed()
    assert check_local_confluence(extended.dual, max_len=4)


def test_transformed_plane_and_coactions():
    for c in G.check_transformed_plane() + G.check_coactions():
        assert c.ok, c


def test_phi_prime_cubed_is_the_beta_cube():
    checks = {c.id: c for c in G.check_transformed_dual()}
    assert checks["Eq62:phi'y'-qj*y'phi'"].status == PASS
    assert checks["Eq62:phi'^3"].status == EXPECTED_NONZERO
    assert checks["Eq62:phi'^3"].residual == "be^3*y^3"
    assert checks["Eq62:phi'^3:with-be^3=0"].status == PASS


def test_dropping_the_correction_breaks_something():
    rels = list(P.GL_RELATIONS)
    lower, upper, c, extra, label = rels[4]
    rels[4] = (lower, upper, c, {}, label)
    broken = G.mutation_breaks(rels, "drop")
    assert "Eq61:x'th'-q*th'x'" in broken


def test_every_mutation_breaks_something():
    checks = G.check_mutation_sensitivity()
    assert len(checks) == 8
    assert all(c.status == PASS for c in checks)


def test_counit_collapse():
    dx, dth = G.delta_plane(G.standard())
    assert G.counit_left_leg(dx) == P.plane().gen("x")


def test_full_gl_suite_ok():
    assert all_ok(G.check_all())
