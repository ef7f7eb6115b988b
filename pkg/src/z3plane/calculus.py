"""The exterior differential with d³ = 0, its consistency checks, and the Cartan-Maurer forms."""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Dict, List, Sequence, Tuple

from . import presentations as P
from .algebra import (
    D2TH,
    D2X,
    DTH,
    DX,
    GRADES,
    TH,
    X,
    XI,
    AlgebraError,
    Element,
    Presentation,
    Word,
    _add_into,
    format_word,
    normal_form,
)
from .report import Check, Suite
from .scalar import ONE, ZERO, Scalar, cyclo_inv, j_pow, q_pow, scalar_inv

J, J2 = j_pow(1), j_pow(2)
Q, QI = q_pow(1), q_pow(-1)

# d on generators; x^-1 is forced by d(x x^-1) = 0.
_D_IMAGES: Dict[int, Dict[Word, Scalar]] = {
    X: {(DX,): ONE},
    TH: {(DTH,): ONE},
    DX: {(D2X,): ONE},
    DTH: {(D2TH,): ONE},
    D2X: {},
    D2TH: {},
    XI: {(XI, DX, XI): -ONE},
}


def _d_word(w: Word) -> Dict[Word, Scalar]:
    out: Dict[Word, Scalar] = {}
    grade = 0
    for i, g in enumerate(w):
        factor = j_pow(grade)
        prefix, suffix = w[:i], w[i + 1 :]
        _add_into(out, ((prefix + img + suffix, factor * c) for img, c in _D_IMAGES[g].items()))
        grade += GRADES[g]
    return out


def differentiate(e: Element) -> Element:
    """Graded Leibniz expansion ``d(fg) = (df)g + j^grad(f) f dg``; not normal-formed."""
    om = P.omega()
    if e.pres is not om:
        e = e.lift(om)
    out: Dict[Word, Scalar] = {}
    for w, c in e.items():
        _add_into(out, ((k, c * v) for k, v in _d_word(w).items()))
    return Element._raw(om, out)


def d_nf(e: Element, times: int = 1) -> Element:
    """Apply d ``times`` times, normal-forming after each step."""
    for _ in range(times):
        e = normal_form(differentiate(e))
    return e


def omega_gen(token: str) -> Element:
    return P.omega().gen(token)


def cartan_w() -> Element:
    """w = dx x⁻¹, normal-formed."""
    om = P.omega()
    return normal_form(om.word("dx", "xi"))


def cartan_u() -> Element:
    """u = dθ x⁻¹ - dx x⁻¹ θ x⁻¹, normal-formed."""
    om = P.omega()
    return normal_form(om.word("dth", "xi") - om.word("dx", "xi", "th", "xi"))


def relation_elements(relations: Sequence[P.Relation], pres: Presentation | None = None) -> List[Tuple[str, Element]]:
    pres = pres or P.omega()
    return [(rel[4], P.relation_element(pres, rel)) for rel in relations]


def _without_rule(pres: Presentation, lhs: Word) -> Presentation:
    from .algebra import RewriteRule

    rules = [RewriteRule(l, r, pres.labels[l]) for l, r in pres.rules.items() if l != lhs]
    return Presentation(f"{pres.name}-minus-{format_word(lhs)}", pres.generators, rules, pres.weights)


def derived_relation_residual(source: P.Relation, target: P.Relation) -> Element:
    """Differentiate ``source`` and compare with ``target`` (the rule for ``target`` is withheld).

    The reduced derivative must be a scalar multiple of ``lower - c*upper - extra``;
    the returned residual is zero iff it is.
    """
    om = P.omega()
    descending = target[1] if target[1] in om.rules else target[0]
    reduced = _without_rule(om, descending)
    src = P.relation_element(om, source).lift(reduced)
    derived = normal_form(differentiate(src).lift(reduced), reduced)
    goal = P.relation_element(om, target).lift(reduced)
    goal = normal_form(goal, reduced)
    lead = goal.terms.get(target[0])
    have = derived.terms.get(target[0], ZERO)
    if have.is_zero():
        return derived
    # derived = (have/lead) * goal, with have/lead a Laurent monomial when it exists
    ratio = have * scalar_inv(lead)
    return derived - goal.scale(ratio)


def derived_coefficient(source: P.Relation, target: P.Relation) -> Dict[str, Scalar]:
    """Coefficients of ``upper`` and the extra words read off ``d(source)`` after solving for ``lower``."""
    om = P.omega()
    descending = target[1] if target[1] in om.rules else target[0]
    reduced = _without_rule(om, descending)
    src = P.relation_element(om, source).lift(reduced)
    derived = normal_form(differentiate(src).lift(reduced), reduced)
    terms = derived.terms
    lead = terms.pop(target[0])
    inv = scalar_inv(lead)
    return {format_word(w): -(c * inv) for w, c in terms.items()}


# Which relation of Eq 21/22 differentiates into which relation of Eq 22/23.
def _derivations() -> List[Tuple[P.Relation, P.Relation]]:
    r21, r22, r23 = P.FORM_RELATIONS_21, P.FORM_RELATIONS_22, P.FORM_RELATIONS_23
    return [
        (r21[0], r22[0]),
        (r21[1], r22[1]),
        (r21[2], r22[2]),
        (r21[3], r22[3]),
        (r22[1], r23[0]),
        (r22[2], r23[0]),
    ]


def check_d_well_defined() -> List[Check]:
    """d of every defining relation vanishes; Eqs 22-23 are reproduced from Eqs 21-22."""
    om = P.omega()
    s = Suite("calculus")
    for lhs, rhs in om.rules.items():
        rel = om.element({lhs: ONE}) - om.element(rhs)
        label = om.labels[lhs] or f"{format_word(lhs)} nilpotency"
        s.zero(f"d-rel:{format_word(lhs)}", f"Eq 9 on {label}", lambda r=rel: normal_form(differentiate(r)))
    for src, tgt in _derivations():
        s.zero(
            f"derive:{src[4].split(':')[0]}({format_word(src[0])})->{tgt[4].split(':')[0]}({format_word(tgt[0])})",
            f"{tgt[4]} from d({src[4]})",
            lambda a=src, b=tgt: derived_relation_residual(a, b),
        )
    return s.checks


def plane_monomial(a: int, b: int, pres: Presentation | None = None) -> Element:
    """x^a θ^b for a >= 0, or x⁻¹^|a| θ^b for a < 0."""
    pres = pres or P.omega()
    letter = X if a >= 0 else XI
    return pres.element({(letter,) * abs(a) + (TH,) * b: ONE})


def check_d_cubed(max_degree: int = 8) -> List[Check]:
    s = Suite("calculus")
    for a in list(range(max_degree + 1)) + [-1, -2, -3]:
        for b in range(3):
            m = plane_monomial(a, b)
            s.zero(f"Eq8:d3:{format_word(next(iter(m.terms)))}", "Eq 8, d³ = 0",
                   lambda m=m: normal_form(differentiate(differentiate(differentiate(m)))))
    s.nonzero("Eq8:d2-nonzero:x*th", "§3, d² ≠ 0", lambda: d_nf(plane_monomial(1, 1), 2))
    return s.checks


@dataclass(frozen=True)
class CoefficientAnsatz:
    X: Scalar
    A: Scalar
    B: Scalar
    C: Scalar
    D: Scalar
    Y: Scalar
    F: Scalar

    @classmethod
    def from_y(cls, y: Scalar) -> "CoefficientAnsatz":
        """Left covariance fixes everything in terms of Y (with D = 0, F = qj)."""
        return cls(X=J * y, A=J2 * Q * y, B=J * (1 - J) * y, C=QI * y, D=ZERO, Y=y, F=Q * J)

    def homogeneity_residuals(self) -> Dict[str, Scalar]:
        """Coefficients of the first-order terms produced by differentiating the ansatz."""
        jinv = j_pow(-1)
        return {
            "jX-1": J * self.X - 1,
            "j^2A+jBF-F": J2 * self.A + J * self.B * self.F - self.F,
            "jD+CF-j^-1": J * self.D + self.C * self.F - jinv,
            "jY-j^-1": J * self.Y - jinv,
        }

    def q_values(self) -> Tuple[Scalar, Scalar]:
        finv = scalar_inv(self.F)
        q1 = self.A * finv + J2 * (1 + self.B)
        q2 = self.D + J2 * (1 + self.C * self.F)
        return q1, q2


def theta_cube_constraint(y: Scalar) -> Scalar:
    """d(θ³) = (1 + jY + j²Y²) dθ θ² for θ dθ = Y dθ θ."""
    return 1 + J * y + J2 * y * y


RESOLVED = CoefficientAnsatz.from_y(J)

# Eq 19 as printed
EQ19_COEFFICIENTS = {"X": J2, "A": Q, "B": J2 - 1, "C": J * QI, "D": ZERO, "Y": J, "F": Q * J}


def _monomial_div(num: Scalar, den: Scalar) -> Scalar:
    if den.is_monomial():
        return num * scalar_inv(den)
    raise AlgebraError(f"cannot divide by non-monomial {den}")


def resolve_coefficients() -> Tuple[CoefficientAnsatz, List[Check]]:
    s = Suite("calculus")
    s.zero("Eq17a:Y=j", "Eq 17b, Y = j or Y = j²", lambda: theta_cube_constraint(J))
    # 1 + jY + j²Y² has roots 1 and j; at j² it evaluates to 3
    s.erratum("Eq17a:Y=j2", "Eq 17b, Y = j or Y = j² (erratum: the roots are 1 and j)",
              lambda: theta_cube_constraint(J2), Scalar.coerce(3))
    s.zero("Eq17a:Y=1", "Eq 17a, second root of 1 + jY + j²Y²", lambda: theta_cube_constraint(ONE))
    for name, value in EQ19_COEFFICIENTS.items():
        s.zero(f"Eq16:{name}-at-Y=j", "Eq 16 at Y = j reproduces Eq 19",
               lambda n=name, v=value: getattr(RESOLVED, n) - v)
    for name, value in RESOLVED.homogeneity_residuals().items():
        s.zero(f"Eq11a:{name}-at-Y=j", "Eq 11a homogeneous at Y = j", lambda v=value: v)
    s.zero("Eq18:F-qj", "Eq 18, F − q j = 0", lambda: RESOLVED.F - Q * J)
    alt = CoefficientAnsatz.from_y(J2)
    s.zero("Eq11a:jX-1-at-Y=j2-equals-j-1", "§3.2, for Y = j² (11a) are not homogeneous",
           lambda: alt.homogeneity_residuals()["jX-1"] - (J - 1))
    s.nonzero("Eq11a:jX-1-at-Y=j2", "§3.2, for Y = j² (11a) are not homogeneous",
              lambda: alt.homogeneity_residuals()["jX-1"])
    # Eq 11c with the resolved values against Eq 22
    q1, q2 = RESOLVED.q_values()
    F, A, B, C, D = RESOLVED.F, RESOLVED.A, RESOLVED.B, RESOLVED.C, RESOLVED.D
    s.zero("Eq11c:dx-d2th:first", "Eq 11c, −A/Q vs Eq 22", lambda: _monomial_div(-A, q1) - Q)
    s.zero("Eq11c:dx-d2th:second", "Eq 11c, (1+B−j²AF⁻¹)/Q vs Eq 22",
           lambda: _monomial_div(1 + B - J2 * A * scalar_inv(F), q1) - (J - j_pow(-1)))
    s.zero("Eq11c:dth-d2x:second", "Eq 11c, (D−CF+j⁻¹)/Q′ vs Eq 22",
           lambda: _monomial_div(D - C * F + j_pow(-1), q2))
    s.erratum("Eq11c:dth-d2x:first-Qprime", "Eq 11c, −C/Q′ vs Eq 22 j²q⁻¹ (normalization slip)",
              lambda: _monomial_div(-C, q2) - J2 * QI, (1 + 2 * J) * QI)
    s.zero("Eq11d:jF", "Eq 11d, d²x d²θ = jF d²θ d²x vs Eq 23", lambda: J * F - J2 * Q)
    return RESOLVED, s.checks


class NotFirstOrderError(AlgebraError):
    pass


def left_extract(df: Element) -> Tuple[Element, Element]:
    """Write a first-order form as ``dx·px + dθ·pth``; returns plane elements (px, pth)."""
    dfirst, plane = P.omega_dfirst(), P.plane()
    for w in df.terms:
        if any(g in (D2X, D2TH, XI) for g in w):
            raise NotFirstOrderError("left_extract needs first-order forms without d² letters or x⁻¹")
    e = normal_form(df.lift(dfirst))
    px: Dict[Word, Scalar] = {}
    pth: Dict[Word, Scalar] = {}
    for w, c in e.items():
        if not w or w[0] not in (DX, DTH) or any(g in (DX, DTH) for g in w[1:]):
            raise NotFirstOrderError(f"word {format_word(w)} is not first order in the differentials")
        _add_into(px if w[0] == DX else pth, ((w[1:], c),))
    return normal_form(Element._raw(plane, px)), normal_form(Element._raw(plane, pth))


def _omega(expr: str) -> Element:
    """Tiny helper: product of tokens separated by spaces."""
    return P.omega().word(*expr.split())


def check_cartan_maurer() -> List[Check]:
    om = P.omega()
    s = Suite("cartan")
    w, u = cartan_w(), cartan_u()
    x, th, dx, dth, d2x, d2th, xi = (om.gen(t) for t in ("x", "th", "dx", "dth", "d2x", "d2th", "xi"))
    nf = normal_form

    s.zero("Eq27:xw", "Eq 27, x w = j² w x", lambda: nf(x * w - J2 * (w * x)))
    s.zero("Eq27:thw", "Eq 27, θ w = j w θ", lambda: nf(th * w - J * (w * th)))
    s.zero("Eq27:xu", "Eq 27, x u = q u x", lambda: nf(x * u - Q * (u * x)))
    s.zero("Eq27:thu", "Eq 27, θ u = j q u θ", lambda: nf(th * u - J * Q * (u * th)))

    s.zero("Eq28a:wdx", "Eq 28a, w dx = j dx w", lambda: nf(w * dx - J * (dx * w)))
    s.zero("Eq28a:udx", "Eq 28a, u dx = q⁻¹ dx u", lambda: nf(u * dx - QI * (dx * u)))
    s.zero("Eq28a:wdth", "Eq 28a, w dθ = j² dθ w + q⁻¹(1 − j) dx u",
           lambda: nf(w * dth - J2 * (dth * w) - QI * (1 - J) * (dx * u)))
    s.zero("Eq28a:udth", "Eq 28a, u dθ = q⁻¹ dθ u + q⁻²(1 − j) dx u θ x⁻¹",
           lambda: nf(u * dth - QI * (dth * u) - q_pow(-2) * (1 - J) * (dx * u * th * xi)))

    s.zero("Eq28b:wd2x", "Eq 28b, w d²x = j² d²x w", lambda: nf(w * d2x - J2 * (d2x * w)))
    s.zero("Eq28b:ud2x", "Eq 28b, u d²x = q⁻¹ d²x u", lambda: nf(u * d2x - QI * (d2x * u)))
    s.zero("Eq28b:wd2th", "Eq 28b, w d²θ = d²θ w + q⁻¹(j − j⁻¹) d²x u",
           lambda: nf(w * d2th - d2th * w - QI * (J - j_pow(-1)) * (d2x * u)))
    s.zero("Eq28b:ud2th", "Eq 28b, u d²θ = q⁻¹ d²θ u + q⁻²(1 − j) d²x u θ x⁻¹",
           lambda: nf(u * d2th - QI * (d2th * u) - q_pow(-2) * (1 - J) * (d2x * u * th * xi)))

    s.zero("Eq29:w3", "Eq 29, w³ = 0", lambda: nf(w * w * w))
    s.zero("Eq29:wu", "Eq 29, wu = uw", lambda: nf(w * u - u * w))

    dw = lambda: nf(differentiate(w))
    du = lambda: nf(differentiate(u))
    s.zero("Eq35:dw", "Eq 35, d w = d²x x⁻¹ − j w²", lambda: nf(differentiate(w) - (d2x * xi - J * (w * w))))
    s.zero("Eq35:du", "Eq 35, d u = d²θ x⁻¹ − d²x x⁻¹ θ x⁻¹ + u w",
           lambda: nf(differentiate(u) - (d2th * xi - d2x * xi * th * xi + u * w)))

    s.zero("Eq36-pre:wdw", "§5, w dw = j dw w", lambda: nf(w * dw() - J * (dw() * w)))
    s.zero("Eq36-pre:wdu", "§5, w du = j² du w + (j − j⁻¹) dw u",
           lambda: nf(w * du() - J2 * (du() * w) - (J - j_pow(-1)) * (dw() * u)))
    s.zero("Eq36-pre:udw", "§5, u dw = dw u", lambda: nf(u * dw() - dw() * u))
    s.zero("Eq36-pre:udu", "§5, u du = du u", lambda: nf(u * du() - du() * u))

    s.zero("Eq36:d2w", "Eq 36, d² w = 0", lambda: d_nf(w, 2))
    s.zero("Eq36:d2u", "Eq 36, d² u = 0", lambda: d_nf(u, 2))
    return s.checks
