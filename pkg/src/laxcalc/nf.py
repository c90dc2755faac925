"""Neutral terms and normal forms, their enumeration, and inadmissibility checks.

Neutrals are elimination chains headed by a variable; normal forms are
eta-long and beta-normal.  The modal normal forms depend on the flavor:

    SLC   letmap x = n in m
    RLC   letmap x = n in m  |  return m
    JLC   letmap x = n in m  |  letjoin x = n in m'
    MLC   return m           |  let x = n in m'

where ``n`` is a neutral of modal type and ``m'`` is itself modal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

from .ope import OPE, ope_table
from .syntax import (
    App, Base, Ctx, Dia, Flavor, FLAVOR_CONSTRUCTS, Fst, Fun, Lam, Let,
    LetJoin, LetMap, Pair, Prod, Return, Snd, Term, Type, Unit, UnitTm, Var,
    subformulas,
)


# ------------------------------------------------------------------ grammar

@dataclass(frozen=True)
class NVar:
    index: int


@dataclass(frozen=True)
class NFst:
    arg: "Neutral"


@dataclass(frozen=True)
class NSnd:
    arg: "Neutral"


@dataclass(frozen=True)
class NApp:
    fn: "Neutral"
    arg: "NormalForm"


Neutral = Union[NVar, NFst, NSnd, NApp]


@dataclass(frozen=True)
class Up:
    ne: Neutral


@dataclass(frozen=True)
class NUnit:
    pass


@dataclass(frozen=True)
class NPair:
    left: "NormalForm"
    right: "NormalForm"


@dataclass(frozen=True)
class NLam:
    ty: Type
    body: "NormalForm"
    hint: str = field(default="", compare=False)


@dataclass(frozen=True)
class NReturn:
    arg: "NormalForm"


@dataclass(frozen=True)
class NLetMap:
    bound: Neutral
    body: "NormalForm"
    hint: str = field(default="", compare=False)


@dataclass(frozen=True)
class NLetJoin:
    bound: Neutral
    body: "NormalForm"
    hint: str = field(default="", compare=False)


@dataclass(frozen=True)
class NLet:
    bound: Neutral
    body: "NormalForm"
    hint: str = field(default="", compare=False)


NormalForm = Union[Up, NUnit, NPair, NLam, NReturn, NLetMap, NLetJoin, NLet]

_NF_CONSTRUCT = {NReturn: "Return", NLetMap: "LetMap", NLetJoin: "LetJoin", NLet: "Let"}


def embed(n) -> Term:
    """Forget that a neutral or normal form is one."""
    match n:
        case NVar(k):
            return Var(k)
        case NFst(a):
            return Fst(embed(a))
        case NSnd(a):
            return Snd(embed(a))
        case NApp(f, a):
            return App(embed(f), embed(a))
        case Up(ne):
            return embed(ne)
        case NUnit():
            return UnitTm()
        case NPair(l, r):
            return Pair(embed(l), embed(r))
        case NLam(ty, b, hint):
            return Lam(ty, embed(b), hint)
        case NReturn(a):
            return Return(embed(a))
        case NLetMap(b, u, hint):
            return LetMap(embed(b), embed(u), hint)
        case NLetJoin(b, u, hint):
            return LetJoin(embed(b), embed(u), hint)
        case NLet(b, u, hint):
            return Let(embed(b), embed(u), hint)
    raise TypeError(f"not a neutral or normal form: {n!r}")


def weaken_ne(i: OPE, n: Neutral) -> Neutral:
    return _wk(ope_table(i), n, 0)


def weaken_nf(i: OPE, m: NormalForm) -> NormalForm:
    return _wk(ope_table(i), m, 0)


def _wk(table: tuple, n, depth: int):
    match n:
        case NVar(k):
            return n if k < depth else NVar(table[k - depth] + depth)
        case NFst(a):
            return NFst(_wk(table, a, depth))
        case NSnd(a):
            return NSnd(_wk(table, a, depth))
        case NApp(f, a):
            return NApp(_wk(table, f, depth), _wk(table, a, depth))
        case Up(ne):
            return Up(_wk(table, ne, depth))
        case NUnit():
            return n
        case NPair(l, r):
            return NPair(_wk(table, l, depth), _wk(table, r, depth))
        case NReturn(a):
            return NReturn(_wk(table, a, depth))
        case NLam(ty, b, hint):
            return NLam(ty, _wk(table, b, depth + 1), hint)
        case NLetMap(b, u, hint) | NLetJoin(b, u, hint) | NLet(b, u, hint):
            return type(n)(_wk(table, b, depth), _wk(table, u, depth + 1), hint)
    raise TypeError(f"not a neutral or normal form: {n!r}")


class NotNormal(Exception):
    pass


def ne_type(flavor: Flavor, ctx: Ctx, n: Neutral) -> Type:
    """Type of a neutral, checking the neutral grammar on the way."""
    match n:
        case NVar(k):
            if not 0 <= k < len(ctx):
                raise NotNormal(f"unbound variable #{k}")
            return ctx[len(ctx) - 1 - k]
        case NFst(a) | NSnd(a):
            ty = ne_type(flavor, ctx, a)
            if not isinstance(ty, Prod):
                raise NotNormal("projection from a non-product neutral")
            return ty.left if isinstance(n, NFst) else ty.right
        case NApp(f, a):
            ty = ne_type(flavor, ctx, f)
            if not isinstance(ty, Fun):
                raise NotNormal("application of a non-function neutral")
            check_nf(flavor, ctx, ty.dom, a)
            return ty.cod
    raise NotNormal(f"not a neutral: {n!r}")


def check_nf(flavor: Flavor, ctx: Ctx, ty: Type, m: NormalForm) -> None:
    """Raise NotNormal unless ``m`` is a normal form of ``ty`` in ``flavor``."""
    ctx = tuple(ctx)
    if type(m) in _NF_CONSTRUCT and _NF_CONSTRUCT[type(m)] not in FLAVOR_CONSTRUCTS[flavor]:
        raise NotNormal(f"{_NF_CONSTRUCT[type(m)].lower()} is not a {flavor} normal form")
    match m, ty:
        case Up(n), Base():
            if ne_type(flavor, ctx, n) != ty:
                raise NotNormal("neutral of the wrong type under up")
            return
        case NUnit(), Unit():
            return
        case NPair(l, r), Prod(a, b):
            check_nf(flavor, ctx, a, l)
            check_nf(flavor, ctx, b, r)
            return
        case NLam(dom, b), Fun(a, c) if dom == a:
            check_nf(flavor, ctx + (a,), c, b)
            return
        case NReturn(a), Dia(body):
            check_nf(flavor, ctx, body, a)
            return
        case (NLetMap(n, u) | NLetJoin(n, u) | NLet(n, u)), Dia(body):
            nty = ne_type(flavor, ctx, n)
            if not isinstance(nty, Dia):
                raise NotNormal("let-bound neutral is not modal")
            check_nf(flavor, ctx + (nty.body,), body if isinstance(m, NLetMap) else ty, u)
            return
    raise NotNormal(f"{type(m).__name__} is not a normal form of type {ty}")


def is_nf(flavor: Flavor, ctx: Ctx, ty: Type, m) -> bool:
    try:
        check_nf(flavor, ctx, ty, m)
    except NotNormal:
        return False
    return True


def nf_height(m) -> int:
    """Height of the Ne/Nf derivation; variables are leaves of height 1."""
    match m:
        case NVar(_) | NUnit():
            return 1
        case NFst(a) | NSnd(a) | Up(a) | NReturn(a):
            return 1 + nf_height(a)
        case NLam(_, b):
            return 1 + nf_height(b)
        case NApp(a, b) | NPair(a, b) | NLetMap(a, b) | NLetJoin(a, b) | NLet(a, b):
            return 1 + max(nf_height(a), nf_height(b))
    raise TypeError(f"not a neutral or normal form: {m!r}")


def neutral_subformula_ok(ctx: Ctx, ty: Type) -> bool:
    """Is ``ty`` a subformula of some type in ``ctx``?"""
    return any(ty in subformulas(c) for c in ctx)


# -------------------------------------------------------------- enumeration

def enumerate_nf(flavor: Flavor, ctx: Ctx, ty: Type, depth: int) -> list:
    """All normal forms of ``ty`` in ``ctx`` with derivation height <= depth."""
    return list(_nfs(flavor, tuple(ctx), ty, depth))


def enumerate_ne(flavor: Flavor, ctx: Ctx, depth: int) -> list:
    """All (neutral, type) pairs in ``ctx`` with derivation height <= depth."""
    return list(_nes(flavor, tuple(ctx), depth))


@lru_cache(maxsize=None)
def _nes(fl: Flavor, ctx: Ctx, depth: int) -> tuple:
    if depth <= 0:
        return ()
    out = [(NVar(k), ctx[len(ctx) - 1 - k]) for k in range(len(ctx))]
    for n, ty in _nes(fl, ctx, depth - 1):
        match ty:
            case Prod(a, b):
                out.append((NFst(n), a))
                out.append((NSnd(n), b))
            case Fun(a, b):
                out.extend((NApp(n, m), b) for m in _nfs(fl, ctx, a, depth - 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _nfs(fl: Flavor, ctx: Ctx, ty: Type, depth: int) -> tuple:
    if depth <= 0:
        return ()
    d = depth - 1
    allowed = FLAVOR_CONSTRUCTS[fl]
    match ty:
        case Base():
            return tuple(Up(n) for n, nty in _nes(fl, ctx, d) if nty == ty)
        case Unit():
            return (NUnit(),)
        case Prod(a, b):
            rights = _nfs(fl, ctx, b, d)
            return tuple(NPair(l, r) for l in _nfs(fl, ctx, a, d) for r in rights)
        case Fun(a, b):
            return tuple(NLam(a, m) for m in _nfs(fl, ctx + (a,), b, d))
        case Dia(body):
            out = []
            if "Return" in allowed:
                out.extend(NReturn(m) for m in _nfs(fl, ctx, body, d))
            modal = [(n, nty.body) for n, nty in _nes(fl, ctx, d) if isinstance(nty, Dia)]
            if "LetMap" in allowed:
                for n, a in modal:
                    out.extend(NLetMap(n, m) for m in _nfs(fl, ctx + (a,), body, d))
            for cls, name in ((NLetJoin, "LetJoin"), (NLet, "Let")):
                if name in allowed:
                    for n, a in modal:
                        out.extend(cls(n, m) for m in _nfs(fl, ctx + (a,), ty, d))
            return tuple(out)
    raise TypeError(f"not a type: {ty!r}")


# ------------------------------------------------------------- inhabitation

def inhabited(flavor: Flavor, ctx: Ctx, ty: Type) -> bool:
    """Decide whether some normal form of ``ty`` exists in ``ctx``.

    Contexts are read as sets of hypotheses, so every reachable goal is a
    pair (set of subformulas, subformula) and the search space is finite.
    The answer is the least fixpoint of the normal-form rules over it.
    """
    return _Saturation(flavor).solve(frozenset(ctx), ty)


class _Saturation:
    def __init__(self, flavor: Flavor):
        self.allowed = FLAVOR_CONSTRUCTS[flavor]
        self.known: dict = {}

    def solve(self, hyps: frozenset, ty: Type) -> bool:
        goals = self._reachable(("nf", hyps, ty))
        self.known = {g: False for g in goals}
        changed = True
        while changed:
            changed = False
            for g in goals:
                if not self.known[g] and self._step(g):
                    self.known[g] = True
                    changed = True
        return self.known[("nf", hyps, ty)]

    def _candidates(self, hyps: frozenset) -> set:
        # types that could be synthesized from hyps by projections/applications
        out = set()
        for h in hyps:
            out |= subformulas(h)
        return out

    def _deps(self, goal) -> list:
        kind, hyps, ty = goal
        deps = []
        if kind == "ne":
            for c in self._candidates(hyps):
                match c:
                    case Prod(a, b) if ty in (a, b):
                        deps.append(("ne", hyps, c))
                    case Fun(a, b) if b == ty:
                        deps += [("ne", hyps, c), ("nf", hyps, a)]
            return deps
        match ty:
            case Base():
                deps.append(("ne", hyps, ty))
            case Prod(a, b):
                deps += [("nf", hyps, a), ("nf", hyps, b)]
            case Fun(a, b):
                deps.append(("nf", hyps | {a}, b))
            case Dia(body):
                if "Return" in self.allowed:
                    deps.append(("nf", hyps, body))
                for c in self._candidates(hyps):
                    if isinstance(c, Dia):
                        deps.append(("ne", hyps, c))
                        if "LetMap" in self.allowed:
                            deps.append(("nf", hyps | {c.body}, body))
                        if self.allowed & {"LetJoin", "Let"}:
                            deps.append(("nf", hyps | {c.body}, ty))
        return deps

    def _reachable(self, root) -> list:
        seen, todo, order = {root}, [root], []
        while todo:
            g = todo.pop()
            order.append(g)
            for d in self._deps(g):
                if d not in seen:
                    seen.add(d)
                    todo.append(d)
        return order

    def _step(self, goal) -> bool:
        k = self.known
        kind, hyps, ty = goal
        if kind == "ne":
            if ty in hyps:
                return True
            for c in self._candidates(hyps):
                match c:
                    case Prod(a, b) if ty in (a, b) and k[("ne", hyps, c)]:
                        return True
                    case Fun(a, b) if b == ty and k[("ne", hyps, c)] and k[("nf", hyps, a)]:
                        return True
            return False
        match ty:
            case Base():
                return k[("ne", hyps, ty)]
            case Unit():
                return True
            case Prod(a, b):
                return k[("nf", hyps, a)] and k[("nf", hyps, b)]
            case Fun(a, b):
                return k[("nf", hyps | {a}, b)]
            case Dia(body):
                if "Return" in self.allowed and k[("nf", hyps, body)]:
                    return True
                for c in self._candidates(hyps):
                    if not (isinstance(c, Dia) and k[("ne", hyps, c)]):
                        continue
                    if "LetMap" in self.allowed and k[("nf", hyps | {c.body}, body)]:
                        return True
                    if self.allowed & {"LetJoin", "Let"} and k[("nf", hyps | {c.body}, ty)]:
                        return True
        return False


# ---------------------------------------------------------------- verdicts

@dataclass(frozen=True)
class Inhabited:
    witness: NormalForm

    def __str__(self) -> str:
        from .syntax import print_term
        return f"Inhabited: {print_term(embed(self.witness), annotate=True)}"


@dataclass(frozen=True)
class Empty:
    """No normal form up to ``depth``; ``saturated`` means none at any depth."""
    depth: int
    saturated: bool

    def __str__(self) -> str:
        return "Empty" if self.saturated else f"Empty up to depth {self.depth} (not saturated)"


Verdict = Union[Inhabited, Empty]


def check_inadmissible(flavor: Flavor, ty: Type, depth: int) -> Verdict:
    """Search for a closed normal form of ``ty``.

    Returns the first one found within ``depth``; otherwise reports whether
    the finite saturation search proves that none exists at all.
    """
    found = enumerate_nf(flavor, (), ty, depth)
    if found:
        return Inhabited(found[0])
    return Empty(depth, saturated=not inhabited(flavor, (), ty))
