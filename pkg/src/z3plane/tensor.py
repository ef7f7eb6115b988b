"""Graded tensor products with the j-twisted multiplication rule.

``(A ⊗ B)(C ⊗ D) = j^(|B||C|) AC ⊗ BD`` where ``|.|`` is the Z3 grade of a
whole word.  The two legs may belong to different presentations.
"""

from __future__ import annotations

from typing import Dict, Iterator, Mapping, Tuple

from .algebra import (
    Element,
    MixedPresentationError,
    Presentation,
    Word,
    _add_into,
    format_element,
    word_grade,
)
from .scalar import ONE, Scalar, ScalarLike, j_pow

WordPair = Tuple[Word, Word]


class TensorElement:
    __slots__ = ("left", "right", "_terms")

    def __init__(
        self,
        left: Presentation,
        right: Presentation,
        terms: Mapping[WordPair, ScalarLike] | None = None,
    ) -> None:
        self.left = left
        self.right = right
        clean: Dict[WordPair, Scalar] = {}
        for (a, b), c in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            left.check_word(a)
            right.check_word(b)
            _add_into(clean, (((a, b), Scalar.coerce(c)),))
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def _raw(cls, left: Presentation, right: Presentation, terms: Dict[WordPair, Scalar]) -> "TensorElement":
        t = object.__new__(cls)
        t.left, t.right, t._terms = left, right, terms
        return t

    @classmethod
    def unit(cls, left: Presentation, right: Presentation) -> "TensorElement":
        return cls._raw(left, right, {((), ()): ONE})

    @property
    def terms(self) -> Dict[WordPair, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[WordPair, Scalar]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: "TensorElement") -> None:
        if other.left is not self.left or other.right is not self.right:
            raise MixedPresentationError(
                f"tensor legs differ: {self.left.name}⊗{self.right.name} vs {other.left.name}⊗{other.right.name}"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.left is other.left and self.right is other.right and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.left.name, self.right.name, frozenset(self._terms.items())))

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        return TensorElement._raw(self.left, self.right, _add_into(dict(self._terms), other._terms.items()))

    def __neg__(self) -> "TensorElement":
        return TensorElement._raw(self.left, self.right, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, s: ScalarLike) -> "TensorElement":
        s = Scalar.coerce(s)
        if not s:
            return TensorElement._raw(self.left, self.right, {})
        return TensorElement._raw(self.left, self.right, {k: c * s for k, c in self._terms.items()})

    def __mul__(self, other: "TensorElement | ScalarLike") -> "TensorElement":
        if isinstance(other, TensorElement):
            return tensor_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other: ScalarLike) -> "TensorElement":
        return self.scale(other)

    def __pow__(self, n: int) -> "TensorElement":
        result = TensorElement.unit(self.left, self.right)
        for _ in range(n):
            result = tensor_multiply(result, self)
        return result

    def nf(self) -> "TensorElement":
        return tensor_normal_form(self)

    def __repr__(self) -> str:
        return f"TensorElement[{self.left.name}⊗{self.right.name}]({self})"

    def __str__(self) -> str:
        return format_tensor(self)


def tensor(a: Element, b: Element) -> TensorElement:
    """``a ⊗ b`` for plain elements (no twist: nothing is reordered)."""
    out: Dict[WordPair, Scalar] = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            _add_into(out, (((wa, wb), ca * cb),))
    return TensorElement._raw(a.pres, b.pres, out)


def tensor_multiply(t1: TensorElement, t2: TensorElement) -> TensorElement:
    """Bilinear extension of the j-twisted product on word pairs."""
    t1._check(t2)
    out: Dict[WordPair, Scalar] = {}
    for (a, b), c1 in t1._terms.items():
        gb = word_grade(b)
        for (c, d), c2 in t2._terms.items():
            coeff = c1 * c2
            twist = (gb * word_grade(c)) % 3
            if twist:
                coeff = coeff * j_pow(twist)
            _add_into(out, (((a + c, b + d), coeff),))
    return TensorElement._raw(t1.left, t1.right, out)


def tensor_normal_form(t: TensorElement) -> TensorElement:
    """Normal-form each leg in its own presentation."""
    out: Dict[WordPair, Scalar] = {}
    lp, rp = t.left, t.right
    for (a, b), c in t._terms.items():
        na = lp.reduce_word(a)
        if not na:
            continue
        nb = rp.reduce_word(b)
        for wa, ca in na.items():
            cca = c * ca
            _add_into(out, (((wa, wb), cca * cb) for wb, cb in nb.items()))
    return TensorElement._raw(lp, rp, out)


def left_factor_map(t: TensorElement, fn, target: Presentation) -> Element:
    """Apply ``m ∘ (fn ⊗ id)``: ``fn`` maps a left word to an Element of ``target``."""
    out: Dict[Word, Scalar] = {}
    for (a, b), c in t._terms.items():
        img = fn(a)
        for wa, ca in img.items():
            _add_into(out, ((wa + b, c * ca),))
    return Element._raw(target, out)


def multiply_legs(t: TensorElement, target: Presentation) -> Element:
    """The multiplication map ``m(a ⊗ b) = ab`` into ``target``."""
    out: Dict[Word, Scalar] = {}
    for (a, b), c in t._terms.items():
        w = a + b
        target.check_word(w)
        _add_into(out, ((w, c),))
    return Element._raw(target, out)


def format_tensor(t: TensorElement) -> str:
    if t.is_zero():
        return "0"
    pieces = []
    for (a, b) in sorted(t._terms, key=lambda k: (len(k[0]) + len(k[1]), k)):
        c = t._terms[(a, b)]
        la = format_element(Element._raw(t.left, {a: ONE}))
        lb = format_element(Element._raw(t.right, {b: ONE}))
        body = f"{la} ⊗ {lb}"
        if c == -1:
            body = f"-({body})"
        elif c != 1:
            cs = str(c)
            body = f"{cs}*({body})" if c.is_monomial() else f"({cs})*({body})"
        pieces.append(body)
    return " + ".join(pieces)
