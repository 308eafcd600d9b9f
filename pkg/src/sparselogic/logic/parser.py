"""Text grammar for sentences.

    formula  := quantified | implied
    quantified := ('forall' | 'exists') IDENT '.' formula        (maximal scope)
    implied  := or-form ('->' implied)?                          (right assoc)
    or-form  := and-form ('|' and-form)*
    and-form := unary ('&' unary)*
    unary    := '!' unary | quantified | atom | '(' formula ')'
    atom     := IDENT ('~' | '=') IDENT | IDENT 'in' IDENT

Identifiers match [A-Za-z][A-Za-z0-9_]*; a lowercase first letter makes a
vertex variable, uppercase a set variable.  `forall`, `exists`, `in` are
reserved.  Errors carry 1-based line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    Adj,
    And,
    Eq,
    Exists,
    Forall,
    Implies,
    Member,
    Not,
    Or,
    Sentence,
    free_variables,
    is_set_var,
)

_KEYWORDS = {"forall", "exists", "in"}

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<arrow>->)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>[~=&|!().])"
)


class SentenceSyntaxError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class UnboundVariableError(ValueError):
    def __init__(self, names):
        names = sorted(names)
        super().__init__(f"unbound variable(s): {', '.join(names)}")
        self.names = names


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'ident', 'kw', 'arrow', one of ~ = & | ! ( ) ., or 'eof'
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise SentenceSyntaxError(line, col, f"unexpected character {text[i]!r}")
        lexeme = m.group(0)
        if m.lastgroup == "ws":
            pass
        elif m.lastgroup == "arrow":
            toks.append(_Tok("arrow", lexeme, line, col))
        elif m.lastgroup == "ident":
            kind = "kw" if lexeme in _KEYWORDS else "ident"
            toks.append(_Tok(kind, lexeme, line, col))
        else:
            toks.append(_Tok(lexeme, lexeme, line, col))
        for ch in lexeme:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
        i = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, what: str | None = None) -> _Tok:
        t = self.toks[self.i]
        if t.kind != kind:
            raise SentenceSyntaxError(t.line, t.col, f"expected {what or kind}, found {t.text!r}")
        self.i += 1
        return t

    def formula(self) -> Sentence:
        return self.implied()

    def implied(self) -> Sentence:
        lhs = self.or_form()
        if self.peek().kind == "arrow":
            self.take("arrow")
            return Implies(lhs, self.implied())
        return lhs

    def or_form(self) -> Sentence:
        node = self.and_form()
        while self.peek().kind == "|":
            self.take("|")
            node = Or(node, self.and_form())
        return node

    def and_form(self) -> Sentence:
        node = self.unary()
        while self.peek().kind == "&":
            self.take("&")
            node = And(node, self.unary())
        return node

    def unary(self) -> Sentence:
        t = self.peek()
        if t.kind == "!":
            self.take("!")
            return Not(self.unary())
        if t.kind == "kw" and t.text in ("forall", "exists"):
            self.i += 1
            var = self.take("ident", "a variable name")
            self.take(".", "'.'")
            body = self.formula()
            return Forall(var.text, body) if t.text == "forall" else Exists(var.text, body)
        if t.kind == "(":
            self.take("(")
            node = self.formula()
            self.take(")", "')'")
            return node
        if t.kind == "ident":
            return self.atom()
        raise SentenceSyntaxError(t.line, t.col, f"unexpected {t.text!r}")

    def atom(self) -> Sentence:
        left = self.take("ident", "a variable name")
        t = self.peek()
        if t.kind == "~":
            self.take("~")
            right = self.take("ident", "a variable name")
            self._vertex(left)
            self._vertex(right)
            return Adj(left.text, right.text)
        if t.kind == "=":
            self.take("=")
            right = self.take("ident", "a variable name")
            self._vertex(left)
            self._vertex(right)
            return Eq(left.text, right.text)
        if t.kind == "kw" and t.text == "in":
            self.i += 1
            right = self.take("ident", "a set variable name")
            self._vertex(left)
            if not is_set_var(right.text):
                raise SentenceSyntaxError(
                    right.line, right.col, f"{right.text!r} is not a set variable (uppercase)"
                )
            return Member(left.text, right.text)
        raise SentenceSyntaxError(t.line, t.col, f"expected '~', '=' or 'in' after {left.text!r}")

    @staticmethod
    def _vertex(tok: _Tok) -> None:
        if is_set_var(tok.text):
            raise SentenceSyntaxError(
                tok.line, tok.col, f"{tok.text!r} is not a vertex variable (lowercase)"
            )


def parse(text: str, allow_free: bool = False) -> Sentence:
    """Parse a sentence; rejects free variables unless `allow_free`."""
    p = _Parser(_lex(text))
    node = p.formula()
    t = p.peek()
    if t.kind != "eof":
        raise SentenceSyntaxError(t.line, t.col, f"trailing input {t.text!r}")
    if not allow_free:
        free = free_variables(node)
        if free:
            raise UnboundVariableError(free)
    return node


def load_sentence(path: str, allow_free: bool = False) -> Sentence:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read(), allow_free=allow_free)
