"""Order-preserving embeddings between contexts, and weakening along them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Union

from .syntax import (
    App, Ctx, Fst, Lam, Let, LetJoin, LetMap, Pair, Return, Snd, Term,
    Type, UnitTm, Var,
)


class ContractViolation(Exception):
    """Arguments do not fit together (mismatched contexts, bad index...)."""


@dataclass(frozen=True)
class OBase:
    """The empty context embeds into itself."""


@dataclass(frozen=True)
class Drop:
    """Extend the target context by ``ty``."""
    ty: Type
    rest: "OPE"


@dataclass(frozen=True)
class Keep:
    """Extend both contexts by ``ty``."""
    ty: Type
    rest: "OPE"


OPE = Union[OBase, Drop, Keep]


def ope_id(ctx: Ctx) -> OPE:
    out: OPE = OBase()
    for ty in ctx:
        out = Keep(ty, out)
    return out


def ope_drop(ctx: Ctx, ty: Type) -> OPE:
    """The embedding of ``ctx`` into ``ctx, ty``."""
    return Drop(ty, ope_id(ctx))


@lru_cache(maxsize=None)
def ope_dom(i: OPE) -> Ctx:
    match i:
        case OBase():
            return ()
        case Drop(_, rest):
            return ope_dom(rest)
        case Keep(ty, rest):
            return ope_dom(rest) + (ty,)
    raise ContractViolation(f"not an OPE: {i!r}")


@lru_cache(maxsize=None)
def ope_cod(i: OPE) -> Ctx:
    match i:
        case OBase():
            return ()
        case Drop(ty, rest) | Keep(ty, rest):
            return ope_cod(rest) + (ty,)
    raise ContractViolation(f"not an OPE: {i!r}")


def ope_compose(i: OPE, j: OPE) -> OPE:
    """Compose ``i : G <= G'`` with ``j : G' <= G''``."""
    if ope_cod(i) != ope_dom(j):
        raise ContractViolation(
            f"cannot compose: codomain {ope_cod(i)} differs from domain {ope_dom(j)}")
    return _compose(i, j)


@lru_cache(maxsize=4096)
def _compose(i: OPE, j: OPE) -> OPE:
    match i, j:
        case _, OBase():
            return i
        case _, Drop(ty, j2):
            return Drop(ty, _compose(i, j2))
        case Drop(ty, i2), Keep(_, j2):
            return Drop(ty, _compose(i2, j2))
        case Keep(ty, i2), Keep(_, j2):
            return Keep(ty, _compose(i2, j2))
    raise ContractViolation(f"cannot compose {i!r} with {j!r}")


@lru_cache(maxsize=4096)
def ope_table(i: OPE) -> tuple:
    """Index map of ``i``: entry k is the target index of source index k."""
    match i:
        case OBase():
            return ()
        case Drop(_, rest):
            return tuple(k + 1 for k in ope_table(rest))
        case Keep(_, rest):
            return (0,) + tuple(k + 1 for k in ope_table(rest))
    raise ContractViolation(f"not an OPE: {i!r}")


def ope_var(i: OPE, k: int) -> int:
    table = ope_table(i)
    if not 0 <= k < len(table):
        raise ContractViolation(f"variable #{k} is outside the embedding's domain")
    return table[k]


def is_identity(i: OPE) -> bool:
    return not any(isinstance(n, Drop) for n in _nodes(i))


def _nodes(i: OPE):
    while not isinstance(i, OBase):
        yield i
        i = i.rest


def rename(t: Term, f: Callable[[int], int]) -> Term:
    """Apply a variable renaming, lifting it under binders."""
    match t:
        case Var(k):
            return Var(f(k))
        case UnitTm():
            return t
        case Pair(l, r):
            return Pair(rename(l, f), rename(r, f))
        case Fst(a):
            return Fst(rename(a, f))
        case Snd(a):
            return Snd(rename(a, f))
        case Return(a):
            return Return(rename(a, f))
        case App(g, a):
            return App(rename(g, f), rename(a, f))
        case Lam(ty, b, hint):
            return Lam(ty, rename(b, _lift(f)), hint)
        case LetMap(b, u, hint) | LetJoin(b, u, hint) | Let(b, u, hint):
            return type(t)(rename(b, f), rename(u, _lift(f)), hint)
    raise TypeError(f"not a term: {t!r}")


def _lift(f: Callable[[int], int]) -> Callable[[int], int]:
    return lambda k: 0 if k == 0 else f(k - 1) + 1


def weaken(i: OPE, t: Term) -> Term:
    """Move ``t`` from the domain of ``i`` to its codomain."""
    if is_identity(i):
        return t
    table = ope_table(i)

    def f(k: int) -> int:
        if k >= len(table):
            raise ContractViolation(f"variable #{k} is outside the embedding's domain")
        return table[k]

    return rename(t, f)


def shift(t: Term, by: int = 1) -> Term:
    """Weaken ``t`` past ``by`` fresh innermost bindings."""
    return rename(t, lambda k: k + by)


def enumerate_opes(dom: Ctx, cod: Ctx):
    """Every OPE from ``dom`` into ``cod``, in a fixed order."""
    if not cod:
        if not dom:
            yield OBase()
        return
    *cod_init, top = cod
    cod_init = tuple(cod_init)
    if dom and dom[-1] == top:
        for rest in enumerate_opes(dom[:-1], cod_init):
            yield Keep(top, rest)
    if len(dom) <= len(cod_init):
        for rest in enumerate_opes(dom, cod_init):
            yield Drop(top, rest)
