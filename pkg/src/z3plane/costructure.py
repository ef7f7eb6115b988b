"""Coproduct, counit and antipode of the extended plane; the left coaction on forms."""

from __future__ import annotations

from typing import Callable, Dict, List, Mapping, Tuple

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
    all_words,
    normal_form,
    word_grade,
)
from .report import Check, Suite
from .scalar import ONE, ZERO, Scalar, j_pow, q_pow
from .tensor import TensorElement, tensor_multiply, tensor_normal_form

J, J2 = j_pow(1), j_pow(2)

Triple = Tuple[Word, Word, Word]


class UnknownGeneratorError(AlgebraError):
    pass


def _pair(left: Presentation, right: Presentation, terms: Mapping[Tuple[Word, Word], Scalar]) -> TensorElement:
    return TensorElement(left, right, terms)


class _HomMap:
    """Multiplicative extension of generator images into a tensor square."""

    def __init__(self, left: Presentation, right: Presentation, images: Dict[int, TensorElement], name: str) -> None:
        self.left, self.right, self.images, self.name = left, right, images, name
        self._cache: Dict[Word, TensorElement] = {(): TensorElement.unit(left, right)}

    def word(self, w: Word) -> TensorElement:
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        last = w[-1]
        if last not in self.images:
            raise UnknownGeneratorError(f"{self.name} is not defined on generator {last}")
        # normal-forming the running product keeps the expansion small
        out = tensor_normal_form(tensor_multiply(self.word(w[:-1]), self.images[last]))
        self._cache[w] = out
        return out

    def __call__(self, e: Element) -> TensorElement:
        out: Dict[Tuple[Word, Word], Scalar] = {}
        for w, c in e.items():
            _add_into(out, ((k, c * v) for k, v in self.word(w).items()))
        return TensorElement._raw(self.left, self.right, out)


def _coproduct_images(left: Presentation, right: Presentation) -> Dict[int, TensorElement]:
    return {
        X: _pair(left, right, {((X,), (X,)): ONE}),
        XI: _pair(left, right, {((XI,), (XI,)): ONE}),
        TH: _pair(left, right, {((TH,), (X,)): ONE, ((X,), (TH,)): ONE}),
    }


_MAPS: Dict[str, _HomMap] = {}


def _coproduct_map(right: Presentation | None = None) -> _HomMap:
    plane = P.plane()
    right = right or plane
    key = f"delta:{right.name}"
    if key not in _MAPS:
        _MAPS[key] = _HomMap(plane, right, _coproduct_images(plane, right), "Δ")
    return _MAPS[key]


def _delta_l_map() -> _HomMap:
    if "delta_L" not in _MAPS:
        plane, om = P.plane(), P.omega()
        images = _coproduct_images(plane, om)
        images[DX] = _pair(plane, om, {((X,), (DX,)): ONE})
        images[DTH] = _pair(plane, om, {((TH,), (DX,)): J, ((X,), (DTH,)): ONE})
        images[D2X] = _pair(plane, om, {((X,), (D2X,)): ONE})
        images[D2TH] = _pair(plane, om, {((TH,), (D2X,)): J2, ((X,), (D2TH,)): ONE})
        _MAPS["delta_L"] = _HomMap(plane, om, images, "Δ_L")
    return _MAPS["delta_L"]


def _plane_part(e: Element) -> Element:
    return e if e.pres is P.plane() else e.lift(P.plane())


def coproduct(e: Element, right: Presentation | None = None) -> TensorElement:
    """Δ(x)=x⊗x, Δ(θ)=θ⊗x+x⊗θ, Δ(x⁻¹)=x⁻¹⊗x⁻¹, extended multiplicatively with the twist.

    ``right`` lets the second leg live in a larger presentation (forms).
    """
    return _coproduct_map(right)(_plane_part(e))


_COUNIT = {X: ONE, XI: ONE, TH: ZERO, DX: ZERO, DTH: ZERO, D2X: ZERO, D2TH: ZERO}


def counit_word(w: Word) -> Scalar:
    for g in w:
        if g not in _COUNIT:
            raise UnknownGeneratorError(f"counit is not defined on generator {g}")
        if _COUNIT[g].is_zero():
            return ZERO
    return ONE


def counit(e: Element) -> Scalar:
    """ε(x)=ε(x⁻¹)=1, ε(θ)=0; every differential has counit 0."""
    total = ZERO
    for w, c in e.items():
        total = total + c * counit_word(w)
    return total


def _antipode_word(w: Word, plane: Presentation) -> Dict[Word, Scalar]:
    images = {X: {(XI,): ONE}, XI: {(X,): ONE}, TH: {(XI, TH, XI): -ONE}}
    twist = 0
    for i in range(len(w)):
        for k in range(i + 1, len(w)):
            twist += GRADES[w[i]] * GRADES[w[k]]
    acc: Dict[Word, Scalar] = {(): j_pow(twist)}
    for g in reversed(w):
        if g not in images:
            raise UnknownGeneratorError(f"antipode is not defined on generator {g}")
        nxt: Dict[Word, Scalar] = {}
        for a, ca in acc.items():
            _add_into(nxt, ((a + b, ca * cb) for b, cb in images[g].items()))
        acc = nxt
    return acc


def antipode(e: Element) -> Element:
    """S(x)=x⁻¹, S(θ)=-x⁻¹θx⁻¹, extended by S(ab) = j^(|a||b|) S(b) S(a); normal-formed."""
    plane = P.plane()
    e = _plane_part(e)
    out: Dict[Word, Scalar] = {}
    for w, c in e.items():
        _add_into(out, ((k, c * v) for k, v in _antipode_word(w, plane).items()))
    return normal_form(Element._raw(plane, out))


def phi_L(e: Element) -> TensorElement:
    """φ_L on first-order differentials: φ_L(dx)=x⊗dx, φ_L(dθ)=jθ⊗dx+x⊗dθ."""
    m = _delta_l_map()
    out: Dict[Tuple[Word, Word], Scalar] = {}
    for w, c in e.items():
        if w not in ((DX,), (DTH,)):
            raise UnknownGeneratorError("φ_L is only defined on dx and dθ")
        _add_into(out, ((k, c * v) for k, v in m.images[w[0]].items()))
    return TensorElement._raw(m.left, m.right, out)


def delta_L(e: Element) -> TensorElement:
    """Left coaction Ω → A ⊗ Ω, multiplicative with the twisted product."""
    om = P.omega()
    if e.pres is not om:
        e = e.lift(om)
    return _delta_l_map()(e)


def tau_d(t: TensorElement, d: Callable[[Element], Element]) -> TensorElement:
    """(τ ⊗ d)(A ⊗ B) = j^|A| A ⊗ dB, with τ(a) = j^grad(a) a."""
    om = P.omega()
    out: Dict[Tuple[Word, Word], Scalar] = {}
    for (a, b), c in t.items():
        db = d(Element._raw(om, {b: ONE}))
        ca = c * j_pow(word_grade(a))
        _add_into(out, (((a, wb), ca * cb) for wb, cb in db.items()))
    return TensorElement._raw(t.left, om, out)


# three-leg helpers


def _triple_nf(terms: Dict[Triple, Scalar], pres: Tuple[Presentation, Presentation, Presentation]) -> Dict[Triple, Scalar]:
    out: Dict[Triple, Scalar] = {}
    for (a, b, c), s in terms.items():
        na = pres[0].reduce_word(a)
        if not na:
            continue
        nb = pres[1].reduce_word(b)
        nc = pres[2].reduce_word(c)
        for wa, ca in na.items():
            for wb, cb in nb.items():
                _add_into(out, (((wa, wb, wc), s * ca * cb * cc) for wc, cc in nc.items()))
    return out


def _expand_left(t: TensorElement, f: Callable[[Word], TensorElement]) -> Dict[Triple, Scalar]:
    out: Dict[Triple, Scalar] = {}
    for (a, b), c in t.items():
        _add_into(out, (((a1, a2, b), c * v) for (a1, a2), v in f(a).items()))
    return out


def _expand_right(t: TensorElement, f: Callable[[Word], TensorElement]) -> Dict[Triple, Scalar]:
    out: Dict[Triple, Scalar] = {}
    for (a, b), c in t.items():
        _add_into(out, (((a, b1, b2), c * v) for (b1, b2), v in f(b).items()))
    return out


def coassociativity_residual(e: Element) -> Dict[Triple, Scalar]:
    """(Δ⊗id)Δ(e) - (id⊗Δ)Δ(e), each leg normal-formed; empty dict means equal."""
    plane = P.plane()
    delta = _coproduct_map()
    t = delta(_plane_part(e))
    lhs = _expand_left(t, delta.word)
    rhs = _expand_right(t, delta.word)
    diff = _add_into(dict(lhs), ((k, -v) for k, v in rhs.items()))
    return _triple_nf(diff, (plane, plane, plane))


def coaction_coassociativity_residual(e: Element) -> Dict[Triple, Scalar]:
    """(id⊗Δ_L)Δ_L(e) - (Δ⊗id)Δ_L(e)."""
    plane, om = P.plane(), P.omega()
    dl = _delta_l_map()
    t = delta_L(e)
    lhs = _expand_right(t, dl.word)
    rhs = _expand_left(t, _coproduct_map().word)
    diff = _add_into(dict(lhs), ((k, -v) for k, v in rhs.items()))
    return _triple_nf(diff, (plane, plane, om))


def counit_left(t: TensorElement) -> Element:
    """μ ∘ (ε ⊗ id)."""
    out: Dict[Word, Scalar] = {}
    for (a, b), c in t.items():
        _add_into(out, ((b, c * counit_word(a)),))
    return Element._raw(t.right, {k: v for k, v in out.items() if v})


def counit_right(t: TensorElement) -> Element:
    """μ' ∘ (id ⊗ ε)."""
    out: Dict[Word, Scalar] = {}
    for (a, b), c in t.items():
        _add_into(out, ((a, c * counit_word(b)),))
    return Element._raw(t.left, {k: v for k, v in out.items() if v})


def antipode_left(t: TensorElement, target: Presentation) -> Element:
    """m ∘ (S ⊗ id)."""
    plane = P.plane()
    out: Dict[Word, Scalar] = {}
    for (a, b), c in t.items():
        _add_into(out, ((sa + b, c * cs) for sa, cs in _antipode_word(a, plane).items()))
    return normal_form(Element._raw(target, out))


def antipode_right(t: TensorElement) -> Element:
    """m ∘ (id ⊗ S)."""
    plane = P.plane()
    out: Dict[Word, Scalar] = {}
    for (a, b), c in t.items():
        _add_into(out, ((a + sb, c * cs) for sb, cs in _antipode_word(b, plane).items()))
    return normal_form(Element._raw(plane, out))


def _tensor_residual(t: TensorElement) -> TensorElement:
    return tensor_normal_form(t)


def _triple_str(d: Dict[Triple, Scalar]) -> str:
    from .algebra import format_word

    if not d:
        return "0"
    return " + ".join(f"({c})*({format_word(a)} ⊗ {format_word(b)} ⊗ {format_word(cw)})" for (a, b, cw), c in d.items())


class _TripleResidual:
    """Wraps a triple-tensor residual so the report can test and print it."""

    def __init__(self, terms: Dict[Triple, Scalar]) -> None:
        self.terms = terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        return _triple_str(self.terms)


def plane_relations() -> List[Tuple[str, Element]]:
    """Every rewrite rule of the extended plane as an element ``lhs - rhs``."""
    plane = P.plane()
    out = []
    for lhs, rhs in plane.rules.items():
        e = plane.element({lhs: ONE}) - plane.element(rhs)
        out.append((plane.labels[lhs] or "nilpotency", e))
    return out


def check_hopf_axioms(max_word_len: int = 3) -> List[Check]:
    """Eq 5 on every word over {x⁻¹, x, θ} up to ``max_word_len``; Δ, ε, S respect the relations."""
    plane = P.plane()
    s = Suite("hopf")
    for w in all_words(plane.generators, max_word_len):
        if not w:
            continue
        e = plane.element({w: ONE})
        tag = "".join(plane_token(g) for g in w)
        s.zero(f"Eq5:coassoc:{tag}", "Eq 5, (Δ ⊗ id) ∘ Δ = (id ⊗ Δ) ∘ Δ",
               lambda e=e: _TripleResidual(coassociativity_residual(e)))
        s.zero(f"Eq5:counit-left:{tag}", "Eq 5, μ ∘ (ε ⊗ id) ∘ Δ = id",
               lambda e=e: normal_form(counit_left(coproduct(e)) - e))
        s.zero(f"Eq5:counit-right:{tag}", "Eq 5, μ' ∘ (id ⊗ ε) ∘ Δ = id",
               lambda e=e: normal_form(counit_right(coproduct(e)) - e))
        s.zero(f"Eq5:antipode-left:{tag}", "Eq 5, m ∘ (S ⊗ id) ∘ Δ = ε",
               lambda e=e: antipode_left(coproduct(e), plane) - plane.scalar(counit(e)))
        s.zero(f"Eq5:antipode-right:{tag}", "Eq 5, m ∘ (id ⊗ S) ∘ Δ = ε",
               lambda e=e: antipode_right(coproduct(e)) - plane.scalar(counit(e)))
    for label, rel in plane_relations():
        tag = label.split(":")[0] if ":" in label else label
        s.zero(f"Delta-preserves:{label}", "Eq 2 on Eq 1", lambda r=rel: tensor_normal_form(coproduct(r)))
        s.zero(f"eps-preserves:{label}", "Eq 3 on Eq 1", lambda r=rel: counit(r))
        s.zero(f"S-preserves:{label}", "Eq 4 on Eq 1", lambda r=rel: antipode(r))
    th = plane.gen("th")
    s.zero("Eq2:Delta(th)^3", "Eq 1, θ³ = 0 under Δ", lambda: tensor_normal_form(coproduct(th) ** 3))
    return s.checks


def plane_token(g: int) -> str:
    from .algebra import GENERATORS

    return {"xi": "X", "x": "x", "th": "t"}.get(GENERATORS[g].token, GENERATORS[g].token)


def omega_relations() -> List[Tuple[str, Element]]:
    """Every rewrite rule of the forms presentation as ``lhs - rhs`` (Eqs 1, 19-23, x⁻¹ rules)."""
    om = P.omega()
    return [
        (om.labels[lhs] or f"{plane_token(lhs[0])}^3 = 0", om.element({lhs: ONE}) - om.element(rhs))
        for lhs, rhs in om.rules.items()
    ]


def check_coaction_axioms() -> List[Check]:
    """Eqs 24, 25, 30 and the compatibility statements after Eq 32."""
    from .calculus import cartan_u, cartan_w, differentiate
    from .algebra import format_word

    plane, om = P.plane(), P.omega()
    s = Suite("hopf")
    w, u = cartan_w(), cartan_u()

    for label, rel in omega_relations():
        lhs = next(iter(k for k in rel.terms if len(k) == max(len(t) for t in rel.terms)))
        s.zero(f"DeltaL-invariant:{format_word(lhs)}", f"§3.2, Δ_L leaves invariant {label}",
               lambda r=rel: tensor_normal_form(delta_L(r)))

    samples = [(t, om.gen(t)) for t in ("xi", "x", "th", "dx", "dth", "d2x", "d2th")]
    samples += [("w", w), ("u", u), ("x*dth", om.word("x", "dth")), ("th*d2x*dx", om.word("th", "d2x", "dx"))]
    for tag, e in samples:
        s.zero(f"Eq24:coassoc:{tag}", "Eq 24, (id ⊗ Δ_L) ∘ Δ_L = (Δ ⊗ id) ∘ Δ_L",
               lambda e=e: _TripleResidual(coaction_coassociativity_residual(e)))
        s.zero(f"Eq24:counit:{tag}", "Eq 24, m ∘ (ε ⊗ id) ∘ Δ_L = id",
               lambda e=e: normal_form(counit_left(delta_L(e)) - e))

    for tag in ("x", "th", "xi"):
        a = plane.gen(tag)
        for k, name in ((1, "d"), (2, "d2")):
            def residual(a=a, k=k):
                da = a.lift(om)
                lhs = coproduct(a, om)
                for _ in range(k):
                    lhs = tau_d(lhs, differentiate)
                for _ in range(k):
                    da = differentiate(da)
                return tensor_normal_form(lhs - delta_L(da))
            s.zero(f"Eq25:{name}:{tag}", "Eq 25, (τ ⊗ d) ∘ Δ(a) = Δ_L(d a)", residual)
    for tag, mono in (("x*th", ("x", "th")), ("th^2", ("th", "th")), ("x^2*th", ("x", "x", "th"))):
        a = plane.word(*mono)
        s.zero(f"Eq25:d:{tag}", "Eq 25, (τ ⊗ d) ∘ Δ(a) = Δ_L(d a)",
               lambda a=a: tensor_normal_form(tau_d(coproduct(a, om), differentiate) - delta_L(differentiate(a.lift(om)))))

    one = plane.one()
    s.zero("Eq30:w", "Eq 30, Δ_L(w) = 1 ⊗ w",
           lambda: tensor_normal_form(delta_L(w) - _tensor(one, w)))
    s.zero("Eq30:u", "Eq 30, Δ_L(u) = 1 ⊗ u",
           lambda: tensor_normal_form(delta_L(u) - _tensor(one, u)))
    s.zero("Eq31:eps(w)", "Eq 31, ε(w) = 0", lambda: counit(w))
    s.zero("Eq31:eps(u)", "Eq 31, ε(u) = 0", lambda: counit(u))

    x = om.gen("x")
    s.zero("Eq32-post:DeltaL(xw)=Delta(x)DeltaL(w)", "§4, Δ_L(x w) = Δ(x) Δ_L(w)",
           lambda: tensor_normal_form(delta_L(x * w) - tensor_multiply(coproduct(plane.gen("x"), om), delta_L(w))))
    s.zero("Eq32-post:DeltaL(xw)=j2DeltaL(wx)", "§4, Δ_L(x w) = j² Δ_L(w x)",
           lambda: tensor_normal_form(delta_L(x * w) - delta_L(w * x).scale(J2)))
    s.zero("Eq32-post:DeltaL(w^3)", "§4, Δ_L(w³) = 0", lambda: tensor_normal_form(delta_L(w * w * w)))
    for tag, e in (("w", w), ("u", u), ("w*u", w * u), ("u^2", u * u)):
        s.zero(f"Eq32-post:coassoc:{tag}", "§4, (id ⊗ Δ_L) ∘ Δ_L = (Δ ⊗ id) ∘ Δ_L",
               lambda e=e: _TripleResidual(coaction_coassociativity_residual(e)))
        s.zero(f"Eq32-post:counit:{tag}", "§4, m ∘ (ε ⊗ id) ∘ Δ_L = id",
               lambda e=e: normal_form(counit_left(delta_L(e)) - e))
        s.zero(f"Eq32-post:antipode:{tag}", "§4, m ∘ (S ⊗ id) ∘ Δ_L = id",
               lambda e=e: antipode_left(delta_L(e), om) - normal_form(e))
    return s.checks


def _tensor(a: Element, b: Element) -> TensorElement:
    from .tensor import tensor

    return tensor(a, b)
