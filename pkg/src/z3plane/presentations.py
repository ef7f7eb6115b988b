"""The bundled presentations: plane, forms, dual plane, GL_{q,j}(1|1), partials.

Relations are transcribed as ``lower = c * upper + extra`` where ``upper``
is the descending word, then inverted into a rule by
:func:`~z3plane.algebra.solve_for_descending`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .algebra import (
    A,
    BE,
    D2TH,
    D2X,
    DD,
    DTH,
    DX,
    GA,
    GRADES,
    PHI,
    PTH,
    PX,
    TH,
    X,
    XI,
    Y,
    Presentation,
    RewriteRule,
    Word,
    _add_into,
    solve_for_descending,
)
from .scalar import ONE, ZERO, Scalar, ScalarLike, j_pow, q_pow

J = j_pow(1)
J2 = j_pow(2)
Q = q_pow(1)
QI = q_pow(-1)

# (lower, upper) word pair, coefficient c, extra terms, label.
Relation = Tuple[Word, Word, Scalar, Dict[Word, Scalar], str]


def relation(lower: Word, c: ScalarLike, upper: Word, extra: Mapping[Word, ScalarLike] | None = None, label: str = "") -> Relation:
    return (lower, upper, Scalar.coerce(c), {w: Scalar.coerce(v) for w, v in (extra or {}).items()}, label)


def rule_from_relation(rel: Relation, order: Sequence[int]) -> RewriteRule:
    """Orient ``lower = c*upper + extra`` so the descending word (under ``order``) is rewritten."""
    lower, upper, c, extra, label = rel
    rank = {g: i for i, g in enumerate(order)}
    if [rank[g] for g in upper] > [rank[g] for g in lower]:
        return RewriteRule(upper, solve_for_descending((lower, upper), c, extra), label)
    rhs: Dict[Word, Scalar] = {upper: c}
    _add_into(rhs, extra.items())
    return RewriteRule(lower, rhs, label)


def nilpotent(g: int, label: str = "") -> RewriteRule:
    return RewriteRule((g, g, g), {}, label)


def relation_element(pres: Presentation, rel: Relation):
    """``lower - c*upper - extra`` as an element of ``pres``."""
    lower, upper, c, extra, _ = rel
    terms: Dict[Word, Scalar] = {lower: ONE}
    _add_into(terms, ((upper, -c),))
    _add_into(terms, ((w, -v) for w, v in extra.items()))
    return pres.element(terms)


def inverse_rules(relations: Iterable[Relation]) -> List[RewriteRule]:
    """x^-1 rules: both cancellations plus ``g x^-1`` for every ``x g = c g x + E``.

    Conjugating by x^-1 gives ``g x^-1 = c x^-1 g + x^-1 E x^-1``.
    """
    rules = [
        RewriteRule((X, XI), {(): ONE}, "x x^-1 = 1"),
        RewriteRule((XI, X), {(): ONE}, "x^-1 x = 1"),
    ]
    for lower, upper, c, extra, label in relations:
        if len(lower) == 2 and lower[0] == X and upper == (lower[1], X):
            g = lower[1]
            rhs: Dict[Word, Scalar] = {(XI, g): c}
            _add_into(rhs, (((XI,) + w + (XI,), v) for w, v in extra.items()))
            rules.append(RewriteRule((g, XI), rhs, f"conjugate of {label}"))
    return rules


# Plane: x theta = q theta x, theta^3 = 0
PLANE_RELATIONS: List[Relation] = [
    relation((X, TH), Q, (TH, X), label="Eq1: x th = q th x"),
]

# Eq 19
FORM_RELATIONS_19: List[Relation] = [
    relation((X, DX), J2, (DX, X), label="Eq19: x dx = j^2 dx x"),
    relation((X, DTH), Q, (DTH, X), {(DX, TH): J2 - 1}, label="Eq19: x dth = q dth x + (j^2-1) dx th"),
    relation((TH, DX), J * QI, (DX, TH), label="Eq19: th dx = j q^-1 dx th"),
    relation((TH, DTH), J, (DTH, TH), label="Eq19: th dth = j dth th"),
]
# Eq 20 (the cube is a separate rule)
FORM_RELATIONS_20: List[Relation] = [
    relation((DX, DTH), J * Q, (DTH, DX), label="Eq20: dx dth = j q dth dx"),
]
# Eq 21
FORM_RELATIONS_21: List[Relation] = [
    relation((X, D2X), J2, (D2X, X), label="Eq21: x d2x = j^2 d2x x"),
    relation((X, D2TH), Q, (D2TH, X), {(D2X, TH): J2 - 1}, label="Eq21: x d2th = q d2th x + (j^2-1) d2x th"),
    relation((TH, D2X), QI, (D2X, TH), label="Eq21: th d2x = q^-1 d2x th"),
    relation((TH, D2TH), ONE, (D2TH, TH), label="Eq21: th d2th = d2th th"),
]
# Eq 22
FORM_RELATIONS_22: List[Relation] = [
    relation((DX, D2X), j_pow(-2), (D2X, DX), label="Eq22: dx d2x = j^-2 d2x dx"),
    relation((DX, D2TH), Q, (D2TH, DX), {(D2X, DTH): J - j_pow(-1)}, label="Eq22: dx d2th = q d2th dx + (j-j^-1) d2x dth"),
    relation((DTH, D2X), J2 * QI, (D2X, DTH), label="Eq22: dth d2x = j^2 q^-1 d2x dth"),
    relation((DTH, D2TH), ONE, (D2TH, DTH), label="Eq22: dth d2th = d2th dth"),
]
# Eq 23
FORM_RELATIONS_23: List[Relation] = [
    relation((D2X, D2TH), J2 * Q, (D2TH, D2X), label="Eq23: d2x d2th = j^2 q d2th d2x"),
]

FORM_RELATIONS: List[Relation] = (
    FORM_RELATIONS_19 + FORM_RELATIONS_20 + FORM_RELATIONS_21 + FORM_RELATIONS_22 + FORM_RELATIONS_23
)

# Dual plane: phi y = q j y phi, phi^3 = 0
DUAL_RELATIONS: List[Relation] = [
    relation((PHI, Y), Q * J, (Y, PHI), label="Eq58: phi y = q j y phi"),
]

# GL_{q,j}(1|1), Eq 63
GL_RELATIONS: List[Relation] = [
    relation((A, BE), j_pow(-1) * QI, (BE, A), label="Eq63: a be = j^-1 q^-1 be a"),
    relation((DD, BE), J * QI, (BE, DD), label="Eq63: d be = j q^-1 be d"),
    relation((A, GA), Q, (GA, A), label="Eq63: a ga = q ga a"),
    relation((DD, GA), Q, (GA, DD), label="Eq63: d ga = q ga d"),
    relation((A, DD), ONE, (DD, A), {(BE, GA): QI * (1 - J)}, label="Eq63: a d = d a + q^-1 (1-j) be ga"),
    relation((BE, GA), Q * Q, (GA, BE), label="Eq63: be ga = q^2 ga be"),
]

PLANE_ORDER = (XI, X, TH)
OMEGA_ORDER = (XI, X, TH, DX, DTH, D2X, D2TH)
DFIRST_ORDER = (DX, DTH, X, TH)
DUAL_ORDER = (PHI, Y)
GL_ORDER = (A, BE, GA, DD)
GL_PLANE_ORDER = GL_ORDER + (X, TH)
GL_DUAL_ORDER = GL_ORDER + DUAL_ORDER
MIXED_ORDER = (X, TH, PX, PTH)


def _partial_rules() -> List[RewriteRule]:
    # Eq 52 is already stated with the descending word on the left.
    return [
        RewriteRule((PX, X), {(): ONE, (X, PX): J2, (TH, PTH): J2 - 1}, "Eq52: px x = 1 + j^2 x px + (j^2-1) th pth"),
        RewriteRule((PX, TH), {(TH, PX): J2 * QI}, "Eq52: px th = j^2 q^-1 th px"),
        RewriteRule((PTH, X), {(X, PTH): Q}, "Eq52: pth x = q x pth"),
        RewriteRule((PTH, TH), {(): ONE, (TH, PTH): J2}, "Eq52: pth th = 1 + j^2 th pth"),
        rule_from_relation(relation((PX, PTH), J * Q, (PTH, PX), label="Eq53: px pth = j q pth px"), MIXED_ORDER),
        nilpotent(PTH, "Eq53: pth^3 = 0"),
    ]


def cross_rules(outer: Sequence[int], inner: Sequence[int]) -> List[RewriteRule]:
    """j-commutativity ``p e -> j^(|p||e|) e p`` moving each ``e`` in ``inner`` left of ``p``."""
    return [
        RewriteRule((p, e), {(e, p): j_pow(GRADES[p] * GRADES[e])}, "j-commutativity")
        for p in outer
        for e in inner
    ]


FORM_WEIGHTS = {DTH: 4, D2TH: 4}


@lru_cache(maxsize=None)
def plane() -> Presentation:
    rels = PLANE_RELATIONS
    rules = [rule_from_relation(r, PLANE_ORDER) for r in rels] + [nilpotent(TH, "Eq1: th^3 = 0")] + inverse_rules(rels)
    return Presentation("plane", PLANE_ORDER, rules)


@lru_cache(maxsize=None)
def omega() -> Presentation:
    rels = PLANE_RELATIONS + FORM_RELATIONS
    rules = (
        [rule_from_relation(r, OMEGA_ORDER) for r in rels]
        + [nilpotent(TH, "Eq1: th^3 = 0"), nilpotent(DX, "Eq20: dx^3 = 0")]
        + inverse_rules(rels)
    )
    return Presentation("omega", OMEGA_ORDER, rules, weights=FORM_WEIGHTS)


@lru_cache(maxsize=None)
def omega_dfirst() -> Presentation:
    """First-order forms with differentials ordered to the left (Eq 19 read as written)."""
    rels = PLANE_RELATIONS + FORM_RELATIONS_19 + FORM_RELATIONS_20
    rules = [rule_from_relation(r, DFIRST_ORDER) for r in rels] + [nilpotent(TH), nilpotent(DX)]
    return Presentation("omega-dfirst", DFIRST_ORDER, rules)


@lru_cache(maxsize=None)
def dual() -> Presentation:
    rules = [rule_from_relation(r, DUAL_ORDER) for r in DUAL_RELATIONS] + [nilpotent(PHI, "Eq58: phi^3 = 0")]
    return Presentation("dual", DUAL_ORDER, rules)


def gl_rules(relations: Sequence[Relation] = GL_RELATIONS, extra: Sequence[RewriteRule] = ()) -> List[RewriteRule]:
    return [rule_from_relation(r, GL_ORDER) for r in relations] + [nilpotent(GA, "Eq63: ga^3 = 0")] + list(extra)


@lru_cache(maxsize=None)
def gl() -> Presentation:
    return Presentation("gl", GL_ORDER, gl_rules())


def gl_plane_from(relations: Sequence[Relation], name: str = "gl-plane", extra: Sequence[RewriteRule] = ()) -> Presentation:
    rules = gl_rules(relations, extra)
    rules += [rule_from_relation(r, GL_PLANE_ORDER) for r in PLANE_RELATIONS] + [nilpotent(TH)]
    rules += cross_rules((X, TH), GL_ORDER)
    return Presentation(name, GL_PLANE_ORDER, rules)


def gl_dual_from(relations: Sequence[Relation], name: str = "gl-dual", extra: Sequence[RewriteRule] = ()) -> Presentation:
    rules = gl_rules(relations, extra)
    rules += [rule_from_relation(r, GL_DUAL_ORDER) for r in DUAL_RELATIONS] + [nilpotent(PHI)]
    rules += cross_rules(DUAL_ORDER, GL_ORDER)
    return Presentation(name, GL_DUAL_ORDER, rules)


@lru_cache(maxsize=None)
def gl_plane() -> Presentation:
    return gl_plane_from(GL_RELATIONS)


@lru_cache(maxsize=None)
def gl_dual() -> Presentation:
    return gl_dual_from(GL_RELATIONS)


@lru_cache(maxsize=None)
def mixed_partial() -> Presentation:
    rules = [rule_from_relation(r, MIXED_ORDER) for r in PLANE_RELATIONS] + [nilpotent(TH)] + _partial_rules()
    return Presentation("mixed-partial", MIXED_ORDER, rules)


BUNDLED = {
    "plane": plane,
    "omega": omega,
    "dual": dual,
    "gl": gl,
    "gl-plane": gl_plane,
    "gl-dual": gl_dual,
    "mixed-partial": mixed_partial,
}


def get(name: str) -> Presentation:
    try:
        return BUNDLED[name]()
    except KeyError:
        raise KeyError(f"unknown algebra {name!r}; choose from {', '.join(BUNDLED)}") from None
