"""Exact coefficients: Laurent polynomials in q over the cyclotomic field Q(j).

``j`` is a primitive cube root of unity, so every element of Q(j) is stored
as ``re + jm*j`` with ``j**2`` rewritten to ``-1 - j``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, Tuple, Union

Rational = Union[int, Fraction]


def _canon(v: Rational) -> Rational:
    """Integers stay ``int``; other rationals become reduced ``Fraction``."""
    if type(v) is int:
        return v
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


class CycloNum:
    """An element ``re + jm*j`` of Q(j).

    Components are ``int`` when integral and ``Fraction`` otherwise.
    """

    __slots__ = ("re", "jm")

    def __init__(self, re: Rational = 0, jm: Rational = 0) -> None:
        self.re = _canon(re)
        self.jm = _canon(jm)

    @classmethod
    def _raw(cls, re: Rational, jm: Rational) -> "CycloNum":
        c = object.__new__(cls)
        c.re = re if type(re) is int else _canon(re)
        c.jm = jm if type(jm) is int else _canon(jm)
        return c

    @classmethod
    def coerce(cls, value: "CycloNum | Rational") -> "CycloNum":
        if isinstance(value, CycloNum):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value, 0)
        raise TypeError(f"cannot coerce {value!r} to CycloNum")

    def is_zero(self) -> bool:
        return not self.re and not self.jm

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycloNum(other)
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self.re == other.re and self.jm == other.jm

    def __hash__(self) -> int:
        return hash((self.re, self.jm))

    def __add__(self, other: "CycloNum | Rational") -> "CycloNum":
        if type(other) is not CycloNum:
            other = CycloNum.coerce(other)
        return CycloNum._raw(self.re + other.re, self.jm + other.jm)

    __radd__ = __add__

    def __neg__(self) -> "CycloNum":
        return CycloNum._raw(-self.re, -self.jm)

    def __sub__(self, other: "CycloNum | Rational") -> "CycloNum":
        if type(other) is not CycloNum:
            other = CycloNum.coerce(other)
        return CycloNum._raw(self.re - other.re, self.jm - other.jm)

    def __rsub__(self, other: Rational) -> "CycloNum":
        return CycloNum.coerce(other) - self

    def __mul__(self, other: "CycloNum | Rational") -> "CycloNum":
        if type(other) is not CycloNum:
            other = CycloNum.coerce(other)
        a, b, c, d = self.re, self.jm, other.re, other.jm
        bd = b * d
        # (a + bj)(c + dj) = ac + (ad + bc) j + bd j^2,  j^2 = -1 - j
        return CycloNum._raw(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def conjugate(self) -> "CycloNum":
        """Complex conjugate: j -> j^2."""
        # a + b j^2 = (a - b) - b j
        return CycloNum._raw(self.re - self.jm, -self.jm)

    def norm(self) -> Rational:
        return self.re * self.re - self.re * self.jm + self.jm * self.jm

    def inverse(self) -> "CycloNum":
        return cyclo_inv(self)

    def __truediv__(self, other: "CycloNum | Rational") -> "CycloNum":
        return self * cyclo_inv(CycloNum.coerce(other))

    def __repr__(self) -> str:
        return f"CycloNum({self.re}, {self.jm})"

    def __str__(self) -> str:
        return _format_cyclo(self)


def cyclo_inv(c: CycloNum) -> CycloNum:
    """Inverse in Q(j) via the norm ``a^2 - ab + b^2`` and the conjugate."""
    n = c.norm()
    if n == 0:
        raise ZeroDivisionError("inverse of zero in Q(j)")
    conj = c.conjugate()
    return CycloNum(Fraction(conj.re) / n, Fraction(conj.jm) / n)


def _format_rational(r: Rational) -> str:
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def _format_cyclo(c: CycloNum) -> str:
    parts = []
    if c.re:
        parts.append(_format_rational(c.re))
    if c.jm:
        if c.jm == 1:
            jpart = "j"
        elif c.jm == -1:
            jpart = "-j"
        else:
            jpart = f"{_format_rational(c.jm)}*j"
        if parts and not jpart.startswith("-"):
            parts.append("+ " + jpart)
        elif parts:
            parts.append("- " + jpart[1:])
        else:
            parts.append(jpart)
    return " ".join(parts) if parts else "0"


ScalarLike = Union["Scalar", CycloNum, int, Fraction]


class Scalar:
    """Finitely supported map from q-exponent to a nonzero CycloNum."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[int, CycloNum] | None = None) -> None:
        clean: Dict[int, CycloNum] = {}
        if terms:
            for k, c in terms.items():
                c = CycloNum.coerce(c)
                if not c.is_zero():
                    clean[int(k)] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: Dict[int, CycloNum]) -> "Scalar":
        s = object.__new__(cls)
        s._terms = terms
        s._hash = None
        return s

    @classmethod
    def coerce(cls, value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        c = CycloNum.coerce(value)
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, coeff: "CycloNum | Rational", exponent: int = 0) -> "Scalar":
        c = CycloNum.coerce(coeff)
        return cls._raw({exponent: c} if c else {})

    @property
    def terms(self) -> Dict[int, CycloNum]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, CycloNum]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, CycloNum)):
            other = Scalar.coerce(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: ScalarLike) -> "Scalar":
        if not isinstance(other, _SCALAR_TYPES):
            return NotImplemented
        other = Scalar.coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: ScalarLike) -> "Scalar":
        if not isinstance(other, _SCALAR_TYPES):
            return NotImplemented
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other: ScalarLike) -> "Scalar":
        if not isinstance(other, _SCALAR_TYPES):
            return NotImplemented
        other = Scalar.coerce(other)
        if not self._terms or not other._terms:
            return ZERO
        out: Dict[int, CycloNum] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                p = c1 * c2
                s = out.get(k)
                out[k] = p if s is None else s + p
        return Scalar._raw({k: c for k, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return scalar_inv(self) ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        return self * scalar_inv(Scalar.coerce(other))

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        return format_scalar(self)


_SCALAR_TYPES = (Scalar, CycloNum, int, Fraction)


def format_scalar(s: Scalar) -> str:
    """Render in the expression grammar, e.g. ``(1 + 2*j)*q^-1 + 3``."""
    if s.is_zero():
        return "0"
    pieces = []
    for k, c in s.items():
        cs = _format_cyclo(c)
        simple = c.jm == 0 or c.re == 0
        if k == 0:
            body = cs if simple else f"({cs})"
        else:
            qpart = "q" if k == 1 else f"q^{k}"
            if c == 1:
                body = qpart
            elif c == -1:
                body = "-" + qpart
            elif simple:
                body = f"{cs}*{qpart}"
            else:
                body = f"({cs})*{qpart}"
        pieces.append(body)
    out = pieces[0]
    for p in pieces[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def scalar_add(s1: ScalarLike, s2: ScalarLike) -> Scalar:
    return Scalar.coerce(s1) + s2


def scalar_neg(s: ScalarLike) -> Scalar:
    return -Scalar.coerce(s)


def scalar_mul(s1: ScalarLike, s2: ScalarLike) -> Scalar:
    return Scalar.coerce(s1) * s2


def scalar_eq(s1: ScalarLike, s2: ScalarLike) -> bool:
    return Scalar.coerce(s1) == Scalar.coerce(s2)


def is_zero(s: ScalarLike) -> bool:
    return Scalar.coerce(s).is_zero()


def scalar_inv(s: ScalarLike) -> Scalar:
    """Invert a Laurent monomial ``c*q^k``; other elements are not units."""
    s = Scalar.coerce(s)
    if not s.is_monomial():
        raise ValueError(f"non-monomial scalar {s} has no inverse in the Laurent ring")
    ((k, c),) = s._terms.items()
    return Scalar._raw({-k: cyclo_inv(c)})


_J_POWERS = (CycloNum(1, 0), CycloNum(0, 1), CycloNum(-1, -1))


def j_pow(k: int) -> Scalar:
    return Scalar._raw({0: _J_POWERS[k % 3]})


def q_pow(k: int) -> Scalar:
    return Scalar._raw({k: CycloNum(1, 0)})


ZERO = Scalar._raw({})
ONE = Scalar._raw({0: CycloNum(1, 0)})
J = j_pow(1)
J2 = j_pow(2)
Q = q_pow(1)
QINV = q_pow(-1)
