"""Limit-probability expression trees.

The expression family contains the constants 0 and 1 and the variable c, and
is closed under sums, differences, scaling by exact rationals, products, and
base-e exponentiation.  Products of non-rational subtrees are included as a
first-class node: the worked limit laws need c*c*c, which rational closure
alone cannot express.

Text form (round-trips exactly):

    expr   := term (('+' | '-') term)*
    term   := QLIT '*' term | QLIT | factor ('*' factor)*
    factor := '0' | '1' | 'c' | 'exp' '(' expr ')' | '(' expr ')'
    QLIT   := 'q:' '-'? digits ('/' digits)?

A rational literal scales everything to its right within the term, so
`q:-1/6 * c * c * c` is (-1/6)(c*c*c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .errors import ParameterError

ClosedForm = Union["Zero", "One", "C", "Sum", "Difference", "RationalScale", "Product", "Exp"]


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class C:
    pass


@dataclass(frozen=True)
class Sum:
    left: ClosedForm
    right: ClosedForm


@dataclass(frozen=True)
class Difference:
    left: ClosedForm
    right: ClosedForm


@dataclass(frozen=True)
class RationalScale:
    q: Fraction
    arg: ClosedForm

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))


@dataclass(frozen=True)
class Product:
    left: ClosedForm
    right: ClosedForm


@dataclass(frozen=True)
class Exp:
    arg: ClosedForm


class EvaluationOverflowError(ArithmeticError):
    """Evaluation left the finite float range; carries the node path."""

    def __init__(self, path: str):
        super().__init__(f"overflow at node path {path}")
        self.path = path


def evaluate(f: ClosedForm, c: float) -> float:
    """Exact recursive evaluation at the point c; Exp is base e."""
    if not math.isfinite(c):
        raise ParameterError("evaluation point must be finite")

    def go(node: ClosedForm, path: str) -> float:
        if isinstance(node, Zero):
            return 0.0
        if isinstance(node, One):
            return 1.0
        if isinstance(node, C):
            return c
        if isinstance(node, Sum):
            return _finite(go(node.left, path + ".left") + go(node.right, path + ".right"), path)
        if isinstance(node, Difference):
            return _finite(go(node.left, path + ".left") - go(node.right, path + ".right"), path)
        if isinstance(node, RationalScale):
            return _finite(float(node.q) * go(node.arg, path + ".arg"), path)
        if isinstance(node, Product):
            return _finite(go(node.left, path + ".left") * go(node.right, path + ".right"), path)
        if isinstance(node, Exp):
            x = go(node.arg, path + ".arg")
            try:
                return _finite(math.exp(x), path)
            except OverflowError:
                raise EvaluationOverflowError(path)
        raise TypeError(f"not a closed-form node: {node!r}")

    return go(f, "root")


def _finite(x: float, path: str) -> float:
    if not math.isfinite(x):
        raise EvaluationOverflowError(path)
    return x


def differentiate(f: ClosedForm) -> ClosedForm:
    """Symbolic d/dc, staying inside the family."""
    if isinstance(f, (Zero, One)):
        return Zero()
    if isinstance(f, C):
        return One()
    if isinstance(f, Sum):
        return Sum(differentiate(f.left), differentiate(f.right))
    if isinstance(f, Difference):
        return Difference(differentiate(f.left), differentiate(f.right))
    if isinstance(f, RationalScale):
        return RationalScale(f.q, differentiate(f.arg))
    if isinstance(f, Product):
        return Sum(Product(differentiate(f.left), f.right), Product(f.left, differentiate(f.right)))
    if isinstance(f, Exp):
        return Product(differentiate(f.arg), f)
    raise TypeError(f"not a closed-form node: {f!r}")


# -- text form ---------------------------------------------------------------


def serialize(f: ClosedForm) -> str:
    if isinstance(f, Zero):
        return "0"
    if isinstance(f, One):
        return "1"
    if isinstance(f, C):
        return "c"
    if isinstance(f, Exp):
        return f"exp({serialize(f.arg)})"
    if isinstance(f, Sum):
        return f"{serialize(f.left)} + {_term_str(f.right)}"
    if isinstance(f, Difference):
        return f"{serialize(f.left)} - {_term_str(f.right)}"
    if isinstance(f, RationalScale):
        return f"q:{f.q} * {_term_str(f.arg)}"
    if isinstance(f, Product):
        return f"{_factor_str(f.left)} * {_factor_str(f.right)}"
    raise TypeError(f"not a closed-form node: {f!r}")


def _term_str(f: ClosedForm) -> str:
    if isinstance(f, (Sum, Difference)):
        return f"({serialize(f)})"
    return serialize(f)


def _factor_str(f: ClosedForm) -> str:
    if isinstance(f, (Sum, Difference, RationalScale)):
        return f"({serialize(f)})"
    return serialize(f)


class ExpressionSyntaxError(ValueError):
    def __init__(self, pos: int, msg: str):
        super().__init__(f"column {pos}: {msg}")
        self.pos = pos


def parse(text: str) -> ClosedForm:
    """Parse the text form; inverse of `serialize`."""
    toks = _lex(text)
    i = 0

    def peek() -> tuple[str, str, int]:
        return toks[i]

    def take(kind: str) -> tuple[str, str, int]:
        nonlocal i
        t = toks[i]
        if t[0] != kind:
            raise ExpressionSyntaxError(t[2], f"expected {kind}, found {t[1]!r}")
        i += 1
        return t

    def expr() -> ClosedForm:
        node = term()
        while peek()[0] in ("+", "-"):
            op = take(peek()[0])
            rhs = term()
            node = Sum(node, rhs) if op[0] == "+" else Difference(node, rhs)
        return node

    def term() -> ClosedForm:
        if peek()[0] == "qlit":
            tok = take("qlit")
            q = Fraction(tok[1][2:])
            if peek()[0] == "*":
                take("*")
                return RationalScale(q, term())
            return RationalScale(q, One())
        node = factor()
        while peek()[0] == "*":
            take("*")
            node = Product(node, factor())
        return node

    def factor() -> ClosedForm:
        kind, text_, pos = peek()
        if kind == "0":
            take("0")
            return Zero()
        if kind == "1":
            take("1")
            return One()
        if kind == "c":
            take("c")
            return C()
        if kind == "exp":
            take("exp")
            take("(")
            node = expr()
            take(")")
            return Exp(node)
        if kind == "(":
            take("(")
            node = expr()
            take(")")
            return node
        raise ExpressionSyntaxError(pos, f"unexpected {text_!r}")

    node = expr()
    if peek()[0] != "eof":
        raise ExpressionSyntaxError(peek()[2], f"trailing input {peek()[1]!r}")
    return node


def _lex(text: str) -> list[tuple[str, str, int]]:
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("q:", i):
            j = i + 2
            if j < len(text) and text[j] == "-":
                j += 1
            while j < len(text) and (text[j].isdigit() or text[j] == "/"):
                j += 1
            lit = text[i:j]
            try:
                Fraction(lit[2:])
            except (ValueError, ZeroDivisionError):
                raise ExpressionSyntaxError(i, f"bad rational literal {lit!r}")
            toks.append(("qlit", lit, i))
            i = j
            continue
        if text.startswith("exp", i):
            toks.append(("exp", "exp", i))
            i += 3
            continue
        if ch in "01c+-*()":
            toks.append((ch, ch, i))
            i += 1
            continue
        raise ExpressionSyntaxError(i, f"unexpected character {ch!r}")
    toks.append(("eof", "", len(text)))
    return toks


# -- worked examples ---------------------------------------------------------


def c_power(k: int) -> ClosedForm:
    node: ClosedForm = C()
    for _ in range(k - 1):
        node = Product(node, C())
    return node


@dataclass(frozen=True)
class BuiltinExample:
    """An event sentence together with the limit law its probability obeys.

    `formula_gives` records which probability the closed form is the limit
    of: "sentence" when it is lim Pr[sentence holds], "negation" when it is
    lim Pr[sentence fails].  The triangle and isolated-triangle formulas are
    non-existence probabilities paired with existence sentences; the Monte
    Carlo tests confirm this reading.
    """

    name: str
    sentence: "object"
    closed_form: ClosedForm
    formula_gives: str
    predicate: Callable


def builtin_examples() -> dict[str, BuiltinExample]:
    """The three worked limit laws: triangle, isolated triangle, unspiked."""
    from . import graphs
    from .logic import formulas

    triangle_form = Exp(RationalScale(Fraction(-1, 6), c_power(3)))
    # exp(-c^3 exp(-3c) / 6)
    isolated_form = Exp(
        RationalScale(
            Fraction(-1, 6),
            Product(c_power(3), Exp(RationalScale(Fraction(-3), C()))),
        )
    )
    # exp(-c^3 exp(-3c exp(-c)) / 6)
    unspiked_form = Exp(
        RationalScale(
            Fraction(-1, 6),
            Product(
                c_power(3),
                Exp(RationalScale(Fraction(-3), Product(C(), Exp(RationalScale(Fraction(-1), C()))))),
            ),
        )
    )
    return {
        "triangle": BuiltinExample(
            "triangle",
            formulas.triangle_sentence(),
            triangle_form,
            "negation",
            graphs.has_triangle,
        ),
        "isolated_triangle": BuiltinExample(
            "isolated_triangle",
            formulas.isolated_triangle_sentence(),
            isolated_form,
            "negation",
            graphs.has_isolated_triangle,
        ),
        "unspiked_triangle": BuiltinExample(
            "unspiked_triangle",
            formulas.no_unspiked_triangle_sentence(),
            unspiked_form,
            "sentence",
            lambda g: not graphs.has_unspiked_triangle(g),
        ),
    }
