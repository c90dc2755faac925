"""Surface syntax for types, contexts and terms.

Types::

    T ::= i | 1 | <>T | T * T | T -> T | (T)

``<>`` binds tightest, then ``*``, then ``->``; both binary operators
associate to the right.

Terms::

    t ::= x | () | (t, u) | (t) | fst t | snd t | return t | t u
        | \\x. t | \\x:T. t
        | letmap x = t in u | letjoin x = t in u | let x = t in u

Application is left associative; ``fst``/``snd``/``return`` take one
argument at application strength.  Binder bodies extend as far right as
possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .syntax import (
    App, BASE, Dia, Fst, Fun, Lam, Let, LetJoin, LetMap, Pair, Prod, Return,
    Snd, Term, Type, UNIT, UnitTm, Var,
)


class ParseError(Exception):
    def __init__(self, line: int, column: int, expected: str, found: str = ""):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        got = f", found {found!r}" if found else ", found end of input"
        super().__init__(f"{line}:{column}: expected {expected}{got}")


@dataclass(frozen=True)
class Token:
    kind: str  # 'name', 'sym', 'eof'
    text: str
    line: int
    col: int


KEYWORDS = {"fst", "snd", "return", "letmap", "letjoin", "let", "in"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<sym><>|->|\(\)|[()\\.,:=*])
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*|1)
""", re.VERBOSE)


def tokenize(text: str) -> list:
    out, pos, line, col = [], 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(line, col, "a token", text[pos])
        s = m.group()
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, s, line, col))
        for ch in s:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def fail(self, expected: str):
        t = self.tok
        raise ParseError(t.line, t.col, expected, t.text)

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def eat(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        t = self.tok
        self.pos += 1
        return t

    def ident(self) -> str:
        t = self.tok
        if t.kind != "name" or t.text in KEYWORDS or t.text == "1":
            self.fail("a variable name")
        self.pos += 1
        return t.text

    def end(self):
        if self.tok.kind != "eof":
            self.fail("end of input")

    # ---- types

    def type(self) -> Type:
        left = self.prod()
        if self.at("->"):
            self.eat("->")
            return Fun(left, self.type())
        return left

    def prod(self) -> Type:
        left = self.type_atom()
        if self.at("*"):
            self.eat("*")
            return Prod(left, self.prod())
        return left

    def type_atom(self) -> Type:
        t = self.tok
        if t.text == "i" and t.kind == "name":
            self.pos += 1
            return BASE
        if t.text == "1":
            self.pos += 1
            return UNIT
        if self.at("<>"):
            self.eat("<>")
            return Dia(self.type_atom())
        if self.at("("):
            self.eat("(")
            inner = self.type()
            self.eat(")")
            return inner
        self.fail("a type")

    # ---- terms

    def term(self, scope: list) -> Term:
        if self.at("\\"):
            self.eat("\\")
            x = self.ident()
            ty = None
            if self.at(":"):
                self.eat(":")
                ty = self.type()
            self.eat(".")
            return Lam(ty, self.term(scope + [x]), x)
        for kw, cls in (("letmap", LetMap), ("letjoin", LetJoin), ("let", Let)):
            if self.at(kw):
                self.eat(kw)
                x = self.ident()
                self.eat("=")
                bound = self.term(scope)
                self.eat("in")
                return cls(bound, self.term(scope + [x]), x)
        return self.app(scope)

    def _starts_arg(self) -> bool:
        t = self.tok
        if t.kind == "eof":
            return False
        if t.text in ("(", "()"):
            return True
        return t.kind == "name" and t.text not in KEYWORDS and t.text != "1"

    def app(self, scope: list) -> Term:
        head = self.prefixed(scope)
        while self._starts_arg():
            head = App(head, self.arg(scope))
        return head

    def prefixed(self, scope: list) -> Term:
        for kw, cls in (("fst", Fst), ("snd", Snd), ("return", Return)):
            if self.at(kw):
                self.eat(kw)
                return cls(self.arg(scope))
        return self.arg(scope)

    def arg(self, scope: list) -> Term:
        t = self.tok
        if self.at("()"):
            self.pos += 1
            return UnitTm()
        if self.at("("):
            self.eat("(")
            first = self.term(scope)
            if self.at(","):
                self.eat(",")
                second = self.term(scope)
                self.eat(")")
                return Pair(first, second)
            self.eat(")")
            return first
        if t.kind == "name" and t.text not in KEYWORDS and t.text != "1":
            self.pos += 1
            for k, name in enumerate(reversed(scope)):
                if name == t.text:
                    return Var(k)
            raise ParseError(t.line, t.col, "a bound variable", t.text)
        self.fail("a term")


def parse_type(text: str) -> Type:
    p = _Parser(text)
    ty = p.type()
    p.end()
    return ty


def parse_term(text: str, names: Sequence[str] = ()) -> Term:
    """Parse a term whose free variables are drawn from ``names`` (leftmost first)."""
    p = _Parser(text)
    t = p.term(list(names))
    p.end()
    return t


def parse_ctx(text: str) -> tuple:
    """Parse ``x:T, y:U`` into (names, types).  Empty input is the empty context."""
    p = _Parser(text)
    names, types = [], []
    if p.tok.kind == "eof":
        return (), ()
    while True:
        names.append(p.ident())
        p.eat(":")
        types.append(p.type())
        if not p.at(","):
            break
        p.eat(",")
    p.end()
    return tuple(names), tuple(types)
