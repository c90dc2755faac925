"""Types, contexts and terms shared by the four lax modal calculi.

Terms are nameless: ``Var(k)`` points at the k-th context entry counting
from the right.  Binders keep a surface name in ``hint`` purely for
printing; hints never take part in equality or hashing, so ``==`` on terms
is alpha-equivalence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence, Union


class Flavor(enum.Enum):
    SLC = "slc"
    RLC = "rlc"
    JLC = "jlc"
    MLC = "mlc"

    @classmethod
    def parse(cls, text: str) -> "Flavor":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown flavor {text!r}") from None

    def __str__(self) -> str:
        return self.name


# Modal constructs available in each flavor, keyed by term class name.
FLAVOR_CONSTRUCTS = {
    Flavor.SLC: frozenset({"LetMap"}),
    Flavor.RLC: frozenset({"LetMap", "Return"}),
    Flavor.JLC: frozenset({"LetMap", "LetJoin"}),
    Flavor.MLC: frozenset({"Return", "Let"}),
}


# --------------------------------------------------------------------- types

@dataclass(frozen=True)
class Base:
    def __str__(self) -> str:
        return show_type(self)


@dataclass(frozen=True)
class Unit:
    def __str__(self) -> str:
        return show_type(self)


@dataclass(frozen=True)
class Prod:
    left: "Type"
    right: "Type"

    def __str__(self) -> str:
        return show_type(self)


@dataclass(frozen=True)
class Fun:
    dom: "Type"
    cod: "Type"

    def __str__(self) -> str:
        return show_type(self)


@dataclass(frozen=True)
class Dia:
    body: "Type"

    def __str__(self) -> str:
        return show_type(self)


Type = Union[Base, Unit, Prod, Fun, Dia]
Ctx = tuple  # tuple[Type, ...]; rightmost entry is the most recent binding

BASE = Base()
UNIT = Unit()


def show_type(ty: Type, prec: int = 0) -> str:
    """Render a type; ``<>`` binds tighter than ``*``, which binds tighter than ``->``."""
    match ty:
        case Base():
            return "i"
        case Unit():
            return "1"
        case Dia(body):
            return "<>" + show_type(body, 3)
        case Prod(l, r):
            s = f"{show_type(l, 2)} * {show_type(r, 1)}"
            return f"({s})" if prec > 1 else s
        case Fun(d, c):
            s = f"{show_type(d, 1)} -> {show_type(c, 0)}"
            return f"({s})" if prec > 0 else s
    raise TypeError(f"not a type: {ty!r}")


def type_size(ty: Type) -> int:
    match ty:
        case Prod(l, r) | Fun(l, r):
            return 1 + type_size(l) + type_size(r)
        case Dia(b):
            return 1 + type_size(b)
    return 1


def subformulas(ty: Type) -> set:
    out = {ty}
    match ty:
        case Prod(l, r) | Fun(l, r):
            out |= subformulas(l) | subformulas(r)
        case Dia(b):
            out |= subformulas(b)
    return out


# --------------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class UnitTm:
    pass


@dataclass(frozen=True)
class Pair:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Fst:
    arg: "Term"


@dataclass(frozen=True)
class Snd:
    arg: "Term"


@dataclass(frozen=True)
class Lam:
    # ty is None only for unannotated surface lambdas; infer rejects those.
    ty: Type | None
    body: "Term"
    hint: str = field(default="", compare=False)


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Return:
    arg: "Term"


@dataclass(frozen=True)
class LetMap:
    bound: "Term"
    body: "Term"
    hint: str = field(default="", compare=False)


@dataclass(frozen=True)
class LetJoin:
    bound: "Term"
    body: "Term"
    hint: str = field(default="", compare=False)


@dataclass(frozen=True)
class Let:
    bound: "Term"
    body: "Term"
    hint: str = field(default="", compare=False)


Term = Union[Var, UnitTm, Pair, Fst, Snd, Lam, App, Return, LetMap, LetJoin, Let]
LET_FORMS = (LetMap, LetJoin, Let)
MODAL_FORMS = (Return, LetMap, LetJoin, Let)


class FlavorViolation(Exception):
    """A modal construct was used in a flavor that does not have it."""

    def __init__(self, flavor: Flavor, construct: str, path: tuple = ()):
        self.flavor = flavor
        self.construct = construct
        self.path = path
        where = f" at {'/'.join(map(str, path))}" if path else ""
        super().__init__(f"{construct.lower()} is not available in {flavor}{where}")


def check_flavor(flavor: Flavor, t: Term, path: tuple = ()) -> None:
    """Raise FlavorViolation for the first construct ``flavor`` lacks."""
    name = type(t).__name__
    if isinstance(t, MODAL_FORMS) and name not in FLAVOR_CONSTRUCTS[flavor]:
        raise FlavorViolation(flavor, name, path)
    for label, child in children(t):
        check_flavor(flavor, child, path + (label,))


def children(t: Term) -> list:
    """Immediate subterms with a path label for each."""
    match t:
        case Pair(l, r):
            return [("left", l), ("right", r)]
        case Fst(a) | Snd(a) | Return(a):
            return [("arg", a)]
        case Lam(_, b):
            return [("body", b)]
        case App(f, a):
            return [("fn", f), ("arg", a)]
        case LetMap(b, u) | LetJoin(b, u) | Let(b, u):
            return [("bound", b), ("body", u)]
    return []


def alpha_eq(t: Term, u: Term) -> bool:
    return t == u


def is_well_scoped(t: Term, depth: int) -> bool:
    match t:
        case Var(k):
            return 0 <= k < depth
        case Lam(_, b):
            return is_well_scoped(b, depth + 1)
        case LetMap(b, u) | LetJoin(b, u) | Let(b, u):
            return is_well_scoped(b, depth) and is_well_scoped(u, depth + 1)
    return all(is_well_scoped(c, depth) for _, c in children(t))


def term_depth(t: Term) -> int:
    cs = children(t)
    return 1 + max((term_depth(c) for _, c in cs), default=0)


# ------------------------------------------------------------------ printing

_KEYWORDS = {"fst", "snd", "return", "letmap", "letjoin", "let", "in"}


_DEFAULT_NAMES = ("x", "y", "z", "w", "u", "v")


def _fresh(hint: str, names: Sequence[str]) -> str:
    if not hint or hint in _KEYWORDS:
        for cand in _DEFAULT_NAMES:
            if cand not in names:
                return cand
        hint = "x"
    base = hint.rstrip("0123456789") or "x"
    cand, n = hint, 0
    while cand in names:
        n += 1
        cand = f"{base}{n}"
    return cand


def print_term(t: Term, names: Sequence[str] = (), annotate: bool = False) -> str:
    """Render ``t`` in surface syntax.

    ``names`` lists the context's variable names, leftmost binding first.
    With ``annotate`` every lambda carries its domain type, which makes the
    output parse back to an alpha-equal term.
    """
    return _show(t, list(names), annotate, 0)


# precedence levels: 0 binder body, 1 application, 2 argument
def _show(t: Term, names: list, ann: bool, prec: int) -> str:
    match t:
        case Var(k):
            if k >= len(names):
                return f"#{k}"
            return names[len(names) - 1 - k]
        case UnitTm():
            return "()"
        case Pair(l, r):
            return f"({_show(l, names, ann, 0)}, {_show(r, names, ann, 0)})"
        case Fst(a) | Snd(a) | Return(a):
            kw = {Fst: "fst", Snd: "snd", Return: "return"}[type(t)]
            s = f"{kw} {_show(a, names, ann, 2)}"
            return f"({s})" if prec > 1 else s
        case App(f, a):
            s = f"{_show(f, names, ann, 1)} {_show(a, names, ann, 2)}"
            return f"({s})" if prec > 1 else s
        case Lam(ty, b, hint):
            x = _fresh(hint, names)
            head = f"\\{x}:{show_type(ty)}" if ann and ty is not None else f"\\{x}"
            s = f"{head}. {_show(b, names + [x], ann, 0)}"
            return f"({s})" if prec > 0 else s
        case LetMap(b, u, hint) | LetJoin(b, u, hint) | Let(b, u, hint):
            kw = {LetMap: "letmap", LetJoin: "letjoin", Let: "let"}[type(t)]
            x = _fresh(hint, names)
            s = f"{kw} {x} = {_show(b, names, ann, 1)} in {_show(u, names + [x], ann, 0)}"
            return f"({s})" if prec > 0 else s
    raise TypeError(f"not a term: {t!r}")
