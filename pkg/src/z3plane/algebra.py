"""Graded free algebras over :class:`Scalar` and their rewriting quotients.

Words are tuples of global generator ids.  An :class:`Element` is a finite
linear combination of words tied to a :class:`Presentation`; products are
plain concatenation and :func:`normal_form` is always explicit.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .scalar import ONE, ZERO, Scalar, ScalarLike, j_pow

Word = Tuple[int, ...]


@dataclass(frozen=True)
class Generator:
    id: int
    symbol: str
    token: str
    grade: int


# Global generator table.  Ids are stable; each presentation picks a subset
# and an order of its own.
_GENERATOR_SPECS = [
    ("x⁻¹", "xi", 0),
    ("x", "x", 0),
    ("θ", "th", 1),
    ("dx", "dx", 1),
    ("dθ", "dth", 2),
    ("d²x", "d2x", 2),
    ("d²θ", "d2th", 0),
    ("φ", "phi", 1),
    ("y", "y", 2),
    ("a", "a", 0),
    ("β", "be", 2),
    ("γ", "ga", 1),
    ("d", "dd", 0),
    ("∂x", "px", 0),
    ("∂θ", "pth", 2),
]

GENERATORS: Tuple[Generator, ...] = tuple(
    Generator(i, sym, tok, grade) for i, (sym, tok, grade) in enumerate(_GENERATOR_SPECS)
)
BY_TOKEN: Dict[str, Generator] = {g.token: g for g in GENERATORS}
GRADES: Tuple[int, ...] = tuple(g.grade for g in GENERATORS)

XI, X, TH, DX, DTH, D2X, D2TH, PHI, Y, A, BE, GA, DD, PX, PTH = range(len(GENERATORS))


def word_grade(word: Word) -> int:
    return sum(GRADES[g] for g in word) % 3


class AlgebraError(Exception):
    """Base class for errors raised by the rewriting layer."""


class MixedPresentationError(AlgebraError):
    pass


class RewriteBudgetExceeded(AlgebraError):
    pass


class NonHomogeneousError(AlgebraError):
    pass


class Element:
    """Finite linear combination of words with Scalar coefficients."""

    __slots__ = ("pres", "_terms")

    def __init__(self, pres: "Presentation", terms: Mapping[Word, ScalarLike] | None = None) -> None:
        self.pres = pres
        clean: Dict[Word, Scalar] = {}
        if terms:
            for w, c in terms.items():
                w = tuple(w)
                pres.check_word(w)
                c = Scalar.coerce(c)
                if w in clean:
                    c = clean[w] + c
                if c.is_zero():
                    clean.pop(w, None)
                else:
                    clean[w] = c
        self._terms = clean

    @classmethod
    def _raw(cls, pres: "Presentation", terms: Dict[Word, Scalar]) -> "Element":
        e = object.__new__(cls)
        e.pres = pres
        e._terms = terms
        return e

    @property
    def terms(self) -> Dict[Word, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Word, Scalar]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: "Element") -> None:
        if other.pres is not self.pres:
            raise MixedPresentationError(
                f"elements live in different presentations ({self.pres.name} vs {other.pres.name})"
            )

    def _coerce(self, other: "Element | ScalarLike") -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        return self.pres.scalar(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.pres is other.pres and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.pres.name, frozenset(self._terms.items())))

    def __add__(self, other: "Element | ScalarLike") -> "Element":
        other = self._coerce(other)
        return Element._raw(self.pres, _add_into(dict(self._terms), other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element._raw(self.pres, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "Element | ScalarLike") -> "Element":
        return self + (-self._coerce(other))

    def __rsub__(self, other: ScalarLike) -> "Element":
        return self.pres.scalar(other) - self

    def __mul__(self, other: "Element | ScalarLike") -> "Element":
        if isinstance(other, Element):
            return multiply(self, other)
        s = Scalar.coerce(other)
        return self.scale(s)

    def __rmul__(self, other: ScalarLike) -> "Element":
        return self.scale(Scalar.coerce(other))

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative powers of elements are not defined")
        result = self.pres.one()
        for _ in range(n):
            result = multiply(result, self)
        return result

    def scale(self, s: ScalarLike) -> "Element":
        s = Scalar.coerce(s)
        if s.is_zero():
            return Element._raw(self.pres, {})
        return Element._raw(self.pres, {w: c * s for w, c in self._terms.items()})

    def nf(self) -> "Element":
        return normal_form(self, self.pres)

    def lift(self, pres: "Presentation") -> "Element":
        """The same combination of words, viewed in a presentation containing its letters."""
        for w in self._terms:
            pres.check_word(w)
        return Element._raw(pres, dict(self._terms))

    def __repr__(self) -> str:
        return f"Element[{self.pres.name}]({format_element(self)})"

    def __str__(self) -> str:
        return format_element(self)


def _add_into(acc: Dict[Word, Scalar], items: Iterable[Tuple[Word, Scalar]]) -> Dict[Word, Scalar]:
    for w, c in items:
        s = acc.get(w)
        if s is None:
            acc[w] = c
        else:
            s = s + c
            if s.is_zero():
                del acc[w]
            else:
                acc[w] = s
    return acc


def format_word(word: Word) -> str:
    if not word:
        return "1"
    out = []
    for tok, run in itertools.groupby(word):
        n = len(list(run))
        t = GENERATORS[tok].token
        out.append(t if n == 1 else f"{t}^{n}")
    return "*".join(out)


def format_element(e: Element) -> str:
    """Render in the expression grammar; words sorted for stable output."""
    if e.is_zero():
        return "0"
    pieces = []
    for w in sorted(e._terms, key=lambda w: (len(w), w)):
        c = e._terms[w]
        cs = str(c)
        ws = format_word(w)
        if not w:
            body = cs if c.is_monomial() else f"({cs})"
        elif c == 1:
            body = ws
        elif c == -1:
            body = "-" + ws
        elif c.is_monomial():
            body = f"{cs}*{ws}"
        else:
            body = f"({cs})*{ws}"
        pieces.append(body)
    out = pieces[0]
    for p in pieces[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Mapping[Word, Scalar]
    label: str = ""


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: int) -> None:
        self.left = limit

    def step(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise RewriteBudgetExceeded("rewrite step budget exceeded; rule set does not terminate")


DEFAULT_BUDGET = 10**6


class Presentation:
    """Generators in a fixed order plus oriented rewrite rules.

    Termination is checked at construction: every right-hand-side word must
    be smaller than its left-hand side in the weighted-degree/lex order given
    by ``weights`` and the generator order.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[int],
        rules: Iterable[RewriteRule],
        weights: Mapping[int, int] | None = None,
        validate: bool = True,
    ) -> None:
        self.name = name
        self.generators: Tuple[int, ...] = tuple(generators)
        self.rank = {g: i for i, g in enumerate(self.generators)}
        self.weights = {g: (weights or {}).get(g, 1) for g in self.generators}
        self.rules: Dict[Word, Dict[Word, Scalar]] = {}
        self.labels: Dict[Word, str] = {}
        for r in rules:
            if r.lhs in self.rules:
                raise AlgebraError(f"duplicate rule for {format_word(r.lhs)}")
            for w in (r.lhs, *r.rhs):
                self.check_word(w)
            self.rules[r.lhs] = {w: Scalar.coerce(c) for w, c in r.rhs.items() if not Scalar.coerce(c).is_zero()}
            self.labels[r.lhs] = r.label
        self._lhs_lengths = sorted({len(l) for l in self.rules})
        self._cache: Dict[str, Dict[Word, Dict[Word, Scalar]]] = {"left": {}, "right": {}}
        if validate:
            self.validate()

    def __repr__(self) -> str:
        return f"Presentation({self.name!r}, {len(self.generators)} generators, {len(self.rules)} rules)"

    def check_word(self, word: Word) -> None:
        for g in word:
            if g not in self.rank:
                raise MixedPresentationError(
                    f"generator {GENERATORS[g].token if 0 <= g < len(GENERATORS) else g!r} "
                    f"is not in presentation {self.name}"
                )

    def order_key(self, word: Word) -> Tuple[int, int, Tuple[int, ...]]:
        return (sum(self.weights[g] for g in word), len(word), tuple(self.rank[g] for g in word))

    def validate(self) -> None:
        """Each rule must decrease the order and preserve the Z3 grade."""
        for lhs, rhs in self.rules.items():
            key = self.order_key(lhs)
            g = word_grade(lhs)
            for w in rhs:
                if not self.order_key(w) < key:
                    raise AlgebraError(
                        f"rule {format_word(lhs)} -> {format_word(w)} does not decrease the term order"
                    )
                if word_grade(w) != g:
                    raise AlgebraError(f"rule {format_word(lhs)} is not grade-homogeneous")

    # construction helpers

    def element(self, terms: Mapping[Word, ScalarLike] | None = None) -> Element:
        return Element(self, terms)

    def scalar(self, s: ScalarLike) -> Element:
        s = Scalar.coerce(s)
        return Element._raw(self, {(): s} if s else {})

    def one(self) -> Element:
        return self.scalar(ONE)

    def zero(self) -> Element:
        return Element._raw(self, {})

    def gen(self, token: str | int) -> Element:
        g = BY_TOKEN[token].id if isinstance(token, str) else token
        self.check_word((g,))
        return Element._raw(self, {(g,): ONE})

    def word(self, *tokens: str | int) -> Element:
        w = tuple(BY_TOKEN[t].id if isinstance(t, str) else t for t in tokens)
        self.check_word(w)
        return Element._raw(self, {w: ONE})

    def is_normal(self, word: Word) -> bool:
        return self._find_redex(word, "left") is None

    # rewriting

    def _find_redex(self, word: Word, strategy: str) -> Optional[Tuple[int, int]]:
        rules = self.rules
        n = len(word)
        positions = range(n) if strategy == "left" else range(n - 1, -1, -1)
        for i in positions:
            for length in self._lhs_lengths:
                if i + length <= n and word[i : i + length] in rules:
                    return i, length
        return None

    def reduce_word(self, word: Word, strategy: str = "left", budget: int = DEFAULT_BUDGET) -> Dict[Word, Scalar]:
        return self._reduce(tuple(word), strategy, _Budget(budget))

    def _reduce(self, word: Word, strategy: str, budget: _Budget) -> Dict[Word, Scalar]:
        cache = self._cache[strategy]
        hit = cache.get(word)
        if hit is not None:
            return hit
        redex = self._find_redex(word, strategy)
        if redex is None:
            result = {word: ONE}
        else:
            i, length = redex
            budget.step()
            prefix, suffix = word[:i], word[i + length :]
            result = {}
            for w, c in self.rules[word[i : i + length]].items():
                sub = self._reduce(prefix + w + suffix, strategy, budget)
                _add_into(result, ((w2, c * c2) for w2, c2 in sub.items()))
        cache[word] = result
        return result

    def clear_cache(self) -> None:
        for c in self._cache.values():
            c.clear()


def multiply(e1: Element, e2: Element) -> Element:
    """Concatenation product, extended bilinearly; not normal-formed."""
    e1._check(e2)
    out: Dict[Word, Scalar] = {}
    for w1, c1 in e1._terms.items():
        for w2, c2 in e2._terms.items():
            _add_into(out, (((w1 + w2), c1 * c2),))
    return Element._raw(e1.pres, out)


def normal_form(
    e: Element,
    p: Presentation | None = None,
    strategy: str = "left",
    budget: int = DEFAULT_BUDGET,
) -> Element:
    """Rewrite until no rule applies.  ``strategy`` picks the leftmost or rightmost redex."""
    p = p or e.pres
    if p is not e.pres:
        e = e.lift(p)
    b = _Budget(budget)
    out: Dict[Word, Scalar] = {}
    for w, c in e._terms.items():
        _add_into(out, ((w2, c * c2) for w2, c2 in p._reduce(w, strategy, b).items()))
    return Element._raw(p, out)


def grade_of(e: Element) -> int | str:
    """Common Z3 grade of all words, ``"mixed"`` otherwise (0 for the zero element)."""
    grades = {word_grade(w) for w in e._terms}
    if len(grades) > 1:
        return "mixed"
    return grades.pop() if grades else 0


def graded_commutator(e1: Element, e2: Element, p: Presentation | None = None) -> Element:
    """``e1 e2 - j^(a b) e2 e1`` in normal form, for homogeneous elements."""
    a, b = grade_of(e1), grade_of(e2)
    if a == "mixed" or b == "mixed":
        raise NonHomogeneousError("graded commutator needs homogeneous arguments")
    return normal_form(e1 * e2 - (e2 * e1).scale(j_pow(a * b)), p)


@dataclass
class ConfluenceReport:
    presentation: str
    words_checked: int = 0
    confluent: bool = True
    witness: Optional[Word] = None
    left: Optional[Element] = None
    right: Optional[Element] = None

    def __bool__(self) -> bool:
        return self.confluent


def all_words(alphabet: Sequence[int], max_len: int) -> Iterator[Word]:
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def check_local_confluence(
    p: Presentation,
    max_len: int = 4,
    random_words: int = 0,
    random_len: int = 8,
    seed: int = 0,
) -> ConfluenceReport:
    """Compare leftmost-first and rightmost-first normal forms.

    All words up to ``max_len`` are checked exhaustively, then
    ``random_words`` random words of length ``random_len``.
    """
    if max_len < 3:
        raise ValueError("max_len must be at least 3 to cover rule overlaps")
    report = ConfluenceReport(p.name)
    rng = random.Random(seed)
    rand = (tuple(rng.choice(p.generators) for _ in range(random_len)) for _ in range(random_words))
    for w in itertools.chain(all_words(p.generators, max_len), rand):
        report.words_checked += 1
        left = p.reduce_word(w, "left")
        right = p.reduce_word(w, "right")
        if left != right:
            report.confluent = False
            report.witness = w
            report.left = Element._raw(p, dict(left))
            report.right = Element._raw(p, dict(right))
            break
    return report


def solve_for_descending(
    pres_words: Tuple[Word, Word],
    lower_coeff: ScalarLike,
    extra: Mapping[Word, ScalarLike] | None = None,
) -> Dict[Word, Scalar]:
    """Invert ``lower = c * upper + extra`` into a rule ``upper -> c^-1 (lower - extra)``.

    ``pres_words`` is ``(lower, upper)`` where ``upper`` is the descending word.
    """
    from .scalar import scalar_inv

    lower, upper = pres_words
    inv = scalar_inv(lower_coeff)
    rhs: Dict[Word, Scalar] = {lower: inv}
    for w, c in (extra or {}).items():
        rhs = _add_into(rhs, ((w, -(Scalar.coerce(c) * inv)),))
    return rhs
