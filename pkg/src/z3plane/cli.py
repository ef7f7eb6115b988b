"""Expression parser, evaluator and the verification runner behind the ``z3plane`` command.

Grammar::

    expr   := ["+" | "-"] term (("+" | "-") term)*
    term   := factor ("*"? factor)*
    factor := atom ("^" sint)?
    atom   := rational | name | name "(" expr ")" | "(" expr ")"
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Sequence, Tuple, Union

from . import calculus, costructure, glqj, operators
from . import presentations as P
from .algebra import AlgebraError, Element, Presentation, check_local_confluence, normal_form
from .report import FAIL, PASS, Check, Suite, all_ok, sort_checks
from .scalar import J, ONE, Q, CycloNum, Scalar, cyclo_inv, j_pow
from .tensor import TensorElement, tensor_multiply, tensor_normal_form

TOKENS = ("x", "xi", "th", "dx", "dth", "d2x", "d2th", "w", "u", "phi", "y",
          "a", "be", "ga", "dd", "px", "pth", "q", "j")
FUNCTIONS = ("d", "Delta", "DeltaL", "S", "eps", "nf")
ALGEBRAS = ("plane", "omega", "dual", "gl", "gl-plane", "mixed-partial")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownTokenError(ParseError):
    pass


class EvalError(ValueError):
    pass


# AST


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Ast"


@dataclass(frozen=True)
class Pow:
    base: "Ast"
    exp: int


@dataclass(frozen=True)
class Mul:
    factors: Tuple["Ast", ...]


@dataclass(frozen=True)
class Add:
    terms: Tuple[Tuple[int, "Ast"], ...]  # (sign, term)


Ast = Union[Num, Name, Call, Pow, Mul, Add]

_LEX = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z][A-Za-z0-9]*)|(.))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _LEX.match(text, pos)
        if m.end() == pos or (m.lastindex is None):
            break
        start = m.start(m.lastindex)
        offset = len(text[:start].encode("utf-8"))
        kind = ("num", "name", "op")[m.lastindex - 1]
        tok = m.group(m.lastindex)
        if kind == "op" and tok not in "+-*^()":
            raise ParseError(f"unexpected character {tok!r}", offset)
        out.append((kind, tok, offset))
        pos = m.end()
    out.append(("end", "", len(text.encode("utf-8"))))
    return out


class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> Tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op: str) -> None:
        kind, tok, off = self.take()
        if kind != "op" or tok != op:
            raise ParseError(f"expected {op!r}", off)

    def expr(self) -> Ast:
        terms = []
        sign = 1
        kind, tok, _ = self.peek()
        if kind == "op" and tok in "+-":
            self.take()
            sign = -1 if tok == "-" else 1
        terms.append((sign, self.term()))
        while True:
            kind, tok, _ = self.peek()
            if kind == "op" and tok in "+-":
                self.take()
                terms.append((-1 if tok == "-" else 1, self.term()))
            else:
                break
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Add(tuple(terms))

    def term(self) -> Ast:
        factors = [self.factor()]
        while True:
            kind, tok, _ = self.peek()
            if kind == "op" and tok == "*":
                self.take()
                factors.append(self.factor())
            elif kind in ("num", "name") or (kind == "op" and tok == "("):
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def factor(self) -> Ast:
        base = self.atom()
        kind, tok, _ = self.peek()
        if kind == "op" and tok == "^":
            self.take()
            sign = 1
            kind, tok, off = self.peek()
            if kind == "op" and tok in "+-":
                self.take()
                sign = -1 if tok == "-" else 1
            kind, tok, off = self.take()
            if kind != "num" or "/" in tok:
                raise ParseError("expected an integer exponent", off)
            return Pow(base, sign * int(tok))
        return base

    def atom(self) -> Ast:
        kind, tok, off = self.take()
        if kind == "num":
            return Num(Fraction(tok))
        if kind == "name":
            if tok in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(tok, arg)
            if tok not in TOKENS:
                raise UnknownTokenError(
                    f"unknown token {tok!r}; valid tokens: {', '.join(TOKENS)}; functions: {', '.join(FUNCTIONS)}", off
                )
            return Name(tok)
        if kind == "op" and tok == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError("unexpected end of input" if kind == "end" else f"unexpected {tok!r}", off)


def parse(text: str) -> Ast:
    p = _Parser(text)
    tree = p.expr()
    kind, tok, off = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {tok!r}", off)
    return tree


# evaluation

Value = Union[Scalar, Element, TensorElement]


def _algebra_tokens(algebra: str) -> Dict[str, Callable[[], Value]]:
    pres = P.get(algebra)
    table: Dict[str, Callable[[], Value]] = {"q": lambda: Q, "j": lambda: J}
    for tok in TOKENS:
        try:
            pres.gen(tok)
        except (AlgebraError, KeyError):
            continue
        table[tok] = lambda tok=tok: pres.gen(tok)
    if algebra == "omega":
        table["w"] = calculus.cartan_w
        table["u"] = calculus.cartan_u
    return table


def _promote(a: Element, b: Element) -> Tuple[Element, Element]:
    if a.pres is b.pres:
        return a, b
    try:
        return a, b.lift(a.pres)
    except AlgebraError:
        return a.lift(b.pres), b


def _add(a: Value, b: Value) -> Value:
    if isinstance(a, Scalar) and isinstance(b, Scalar):
        return a + b
    if isinstance(a, TensorElement) or isinstance(b, TensorElement):
        if isinstance(a, TensorElement) and isinstance(b, TensorElement):
            return a + b
        t = a if isinstance(a, TensorElement) else b
        s = b if t is a else a
        if isinstance(s, Scalar):
            return t + TensorElement.unit(t.left, t.right).scale(s)
        raise EvalError("cannot add an element to a tensor")
    if isinstance(a, Scalar):
        return b.pres.scalar(a) + b
    if isinstance(b, Scalar):
        return a + a.pres.scalar(b)
    a, b = _promote(a, b)
    return a + b


def _mul(a: Value, b: Value) -> Value:
    if isinstance(a, Scalar):
        return a * b if isinstance(b, Scalar) else b.scale(a)
    if isinstance(b, Scalar):
        return a.scale(b)
    if isinstance(a, TensorElement) and isinstance(b, TensorElement):
        return tensor_multiply(a, b)
    if isinstance(a, Element) and isinstance(b, Element):
        a, b = _promote(a, b)
        return a * b
    raise EvalError("cannot multiply an element with a tensor")


def _pow(base: Value, n: int, pres: Presentation) -> Value:
    if isinstance(base, Scalar):
        return base ** n
    if isinstance(base, TensorElement):
        if n < 0:
            raise EvalError("negative powers of tensors are not defined")
        return base ** n
    if n < 0:
        nb = normal_form(base)
        if "xi" in _names(pres) and nb == nb.pres.gen("x"):
            return nb.pres.gen("xi") ** (-n)
        raise EvalError("negative powers are only defined for scalars and x")
    return base ** n


def _names(pres: Presentation) -> List[str]:
    from .algebra import GENERATORS

    return [GENERATORS[g].token for g in pres.generators]


def _apply(fn: str, v: Value, algebra: str) -> Value:
    if fn == "nf":
        if isinstance(v, Scalar):
            return v
        return tensor_normal_form(v) if isinstance(v, TensorElement) else normal_form(v)
    if isinstance(v, TensorElement):
        raise EvalError(f"{fn} is not applicable to tensors")
    if isinstance(v, Scalar):
        v = P.get(algebra).scalar(v)
    if fn == "d":
        if algebra not in ("plane", "omega"):
            raise EvalError(f"d is not applicable in algebra {algebra}")
        return calculus.differentiate(v)
    if fn == "Delta":
        if algebra == "plane":
            return costructure.coproduct(v)
        if algebra == "mixed-partial":
            return operators.partial_coproduct(v)
        raise EvalError(f"Delta is not applicable in algebra {algebra}")
    if fn == "DeltaL":
        if algebra not in ("plane", "omega"):
            raise EvalError(f"DeltaL is not applicable in algebra {algebra}")
        return costructure.delta_L(v)
    if fn == "S":
        if algebra != "plane":
            raise EvalError(f"S is not applicable in algebra {algebra}")
        return costructure.antipode(v)
    if fn == "eps":
        if algebra in ("plane", "omega"):
            return costructure.counit(v)
        if algebra == "mixed-partial":
            return operators.partial_counit(v)
        raise EvalError(f"eps is not applicable in algebra {algebra}")
    raise EvalError(f"unknown function {fn}")


def evaluate(tree: Ast, algebra: str = "plane") -> Value:
    """Evaluate a parsed expression in one of the bundled algebras."""
    if algebra not in ALGEBRAS:
        raise EvalError(f"unknown algebra {algebra!r}; choose from {', '.join(ALGEBRAS)}")
    pres = P.get(algebra)
    table = _algebra_tokens(algebra)

    def go(node: Ast) -> Value:
        if isinstance(node, Num):
            return Scalar.coerce(node.value)
        if isinstance(node, Name):
            if node.name not in table:
                raise EvalError(f"token {node.name!r} is not in algebra {algebra}")
            return table[node.name]()
        if isinstance(node, Call):
            return _apply(node.fn, go(node.arg), algebra)
        if isinstance(node, Pow):
            return _pow(go(node.base), node.exp, pres)
        if isinstance(node, Mul):
            out = go(node.factors[0])
            for f in node.factors[1:]:
                out = _mul(out, go(f))
            return out
        if isinstance(node, Add):
            out: Value = Scalar.coerce(0)
            for sign, t in node.terms:
                v = go(t)
                out = _add(out, v if sign > 0 else _mul(Scalar.coerce(-1), v))
            return out
        raise EvalError(f"cannot evaluate {node!r}")

    return go(tree)


def eval_text(text: str, algebra: str = "plane") -> Value:
    return evaluate(parse(text), algebra)


def format_value(v: Value) -> str:
    return str(v)


# suites


def random_cyclo(rng: random.Random, bound: int = 50) -> CycloNum:
    def r() -> Fraction:
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    return CycloNum(r(), r())


def check_scalars(samples: int = 1000, seed: int = 0) -> List[Check]:
    s = Suite("scalars")
    s.zero("j^3=1", "§2, j³ = 1", lambda: J ** 3 - ONE)
    s.zero("j^2+j+1=0", "§2, j² + j + 1 = 0", lambda: J ** 2 + J + ONE)
    s.zero("j^-1=j^2", "§2, j⁻¹ = j²", lambda: J ** -1 - j_pow(2))
    s.zero("q*q^-1=1", "ℚ(j)[q, q⁻¹]", lambda: Q * Q ** -1 - ONE)

    def inversion() -> str:
        rng = random.Random(seed)
        for _ in range(samples):
            c = random_cyclo(rng)
            if c.is_zero():
                continue
            if c * cyclo_inv(c) != CycloNum(1, 0):
                return f"{c}"
        return ""

    s.zero(f"inverse-roundtrip:n={samples}", "ℚ(j) is a field", inversion)
    return s.checks


CONFLUENCE_TARGETS = ("plane", "omega", "dual", "gl", "gl-plane", "gl-dual", "mixed-partial")


def check_confluence(max_word_len: int = 4, random_words: int = 1000, seed: int = 0) -> List[Check]:
    s = Suite("confluence")
    refs = {
        "plane": "Eq 1", "omega": "Eqs 19-23 and the x⁻¹ rules", "dual": "Eq 58", "gl": "Eq 63",
        "gl-plane": "Eq 63 with j-commutativity", "gl-dual": "Eq 63 with j-commutativity",
        "mixed-partial": "Eqs 52-53",
    }
    for name in CONFLUENCE_TARGETS:
        def run(name=name):
            r = check_local_confluence(P.get(name), max_len=max_word_len, random_words=random_words, seed=seed)
            return True if r.confluent else f"{r.witness}: {r.left} vs {r.right}"
        s.true(f"confluent:{name}:len<={max_word_len}", f"{refs[name]}, two-strategy agreement", run)
    return s.checks


@dataclass
class Options:
    max_degree: int = 8
    max_word_len: int = 4
    random_words: int = 1000


SUITES: Dict[str, Callable[[Options], List[Check]]] = {
    "scalars": lambda o: check_scalars(),
    "confluence": lambda o: check_confluence(o.max_word_len, o.random_words),
    "hopf": lambda o: costructure.check_hopf_axioms(3) + costructure.check_coaction_axioms(),
    "calculus": lambda o: calculus.check_d_well_defined() + calculus.check_d_cubed(o.max_degree)
    + calculus.resolve_coefficients()[1],
    "cartan": lambda o: calculus.check_cartan_maurer(),
    "lie": lambda o: operators.check_lie_relations(max(o.max_degree, 3)) + operators.check_coproducts(),
    "partial": lambda o: operators.check_partials(),
    "gl": lambda o: glqj.check_all(),
}


def run_suites(selection: Iterable[str] = ("all",), options: Options | None = None) -> Tuple[List[Check], int]:
    """Run the named suites; returns the sorted checks and the process exit code."""
    options = options or Options()
    names: List[str] = []
    for sel in selection:
        if sel == "all":
            names.extend(SUITES)
        elif sel in SUITES:
            names.append(sel)
        else:
            raise KeyError(f"unknown suite {sel!r}; choose from {', '.join([*SUITES, 'all'])}")
    checks: List[Check] = []
    for name in dict.fromkeys(names):
        checks.extend(SUITES[name](options))
    checks = sort_checks(checks)
    return checks, 0 if all_ok(checks) else 1


def _print_checks(checks: Sequence[Check], as_json: bool, out) -> None:
    for c in checks:
        if as_json:
            out.write(json.dumps(c.to_json(), ensure_ascii=False) + "\n")
        else:
            line = f"{c.status:<17} {c.suite:<11} {c.id}"
            if c.residual and c.status != PASS:
                line += f"  [{c.residual}]"
            out.write(line + "\n")
    if not as_json:
        failed = sum(1 for c in checks if not c.ok)
        out.write(f"{len(checks)} checks, {failed} failed\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="z3plane", description="Exact verifier for the Z3-graded quantum superplane.")
    ap.add_argument("expr", nargs="?", help="expression to evaluate; omit to run verification suites")
    ap.add_argument("--algebra", default="plane", choices=ALGEBRAS)
    ap.add_argument("--max-degree", type=int, default=8)
    ap.add_argument("--max-word-len", type=int, default=4)
    ap.add_argument("--random-words", type=int, default=1000, help="random length-8 words per confluence check")
    ap.add_argument("--json", action="store_true", help="one JSON object per check")
    ap.add_argument("--check", action="append", choices=[*SUITES, "all"], help="suite to run (repeatable)")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = sys.stdout
    if args.expr is not None and not args.check:
        try:
            value = eval_text(args.expr, args.algebra)
        except ParseError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        except (EvalError, AlgebraError, ValueError, ZeroDivisionError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        if args.json:
            out.write(json.dumps({"algebra": args.algebra, "value": format_value(value)}, ensure_ascii=False) + "\n")
        else:
            out.write(format_value(value) + "\n")
        return 0
    if args.max_degree < 3 or args.max_word_len < 3:
        print("error: --max-degree and --max-word-len must be at least 3", file=sys.stderr)
        return 2
    opts = Options(args.max_degree, args.max_word_len, args.random_words)
    checks, code = run_suites(args.check or ["all"], opts)
    _print_checks(checks, args.json, out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
