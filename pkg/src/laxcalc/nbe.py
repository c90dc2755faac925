"""Normalization by evaluation over contexts as worlds.

Worlds are contexts, the intuitionistic relation is an OPE, and the modal
relation is a chain of modal neutrals (``MAcc``) whose shape depends on the
flavor:

    SLC   Single
    RLC   Nil | Single
    JLC   Single | Cons(n, rest)          (never empty)
    MLC   Nil | Cons(n, rest)

Each chain entry binds one fresh variable, mirroring the let-bindings of
the flavor's normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .nf import (
    NApp, NFst, NLam, NLet, NLetJoin, NLetMap, NPair, NReturn, NSnd, NUnit,
    NVar, Neutral, NormalForm, Up, weaken_ne,
)
from .ope import (
    ContractViolation, Keep, OPE, ope_compose, ope_cod, ope_drop, ope_id,
)
from .syntax import (
    App, Base, Ctx, Dia, Flavor, FlavorViolation, Fst, Fun, Lam, Let,
    LetJoin, LetMap, Pair, Prod, Return, Snd, Term, Type, Unit, UnitTm, Var,
)
from .typecheck import TypeMismatch, infer


# ------------------------------------------------------- modal accessibility

@dataclass(frozen=True)
class Nil:
    pass


@dataclass(frozen=True)
class Single:
    """One step ``G -> G, ty`` witnessed by ``ne : <>ty`` in G."""
    ne: Neutral
    ty: Type


@dataclass(frozen=True)
class Cons:
    """A step ``G -> G, ty`` followed by ``rest`` from ``G, ty``."""
    ne: Neutral
    ty: Type
    rest: "MAcc"


MAcc = Union[Nil, Single, Cons]

_SHAPES = {
    Flavor.SLC: (Single,),
    Flavor.RLC: (Nil, Single),
    Flavor.JLC: (Single, Cons),
    Flavor.MLC: (Nil, Cons),
}


def macc_steps(m: MAcc) -> list:
    out = []
    while not isinstance(m, Nil):
        out.append((m.ne, m.ty))
        if isinstance(m, Single):
            break
        m = m.rest
    return out


def macc_target(ctx: Ctx, m: MAcc) -> Ctx:
    return tuple(ctx) + tuple(ty for _, ty in macc_steps(m))


def macc_valid(flavor: Flavor, m: MAcc) -> bool:
    """Does ``m`` have a shape the flavor's relation allows?"""
    if not isinstance(m, _SHAPES[flavor]):
        return False
    if isinstance(m, Cons):
        if flavor is Flavor.JLC and isinstance(m.rest, Nil):
            return False
        return macc_valid(flavor, m.rest)
    return True


def macc_step(flavor: Flavor, n: Neutral, ty: Type) -> MAcc:
    """The one-step witness carrying ``n``."""
    return Cons(n, ty, Nil()) if flavor is Flavor.MLC else Single(n, ty)


def macc_include(ctx: Ctx, m: MAcc) -> OPE:
    """The OPE from ``ctx`` to the target of ``m``: one Drop per step."""
    out = ope_id(ctx)
    cur = tuple(ctx)
    for _, ty in macc_steps(m):
        out = ope_compose(out, ope_drop(cur, ty))
        cur = cur + (ty,)
    return out


def macc_factor(i: OPE, m: MAcc) -> tuple:
    """Transport ``m`` along ``i``.

    Returns ``(m2, j)`` with ``m2`` starting at the codomain of ``i`` and
    ``j`` the OPE from the old target to the new one.
    """
    match m:
        case Nil():
            return Nil(), i
        case Single(n, ty):
            return Single(weaken_ne(i, n), ty), Keep(ty, i)
        case Cons(n, ty, rest):
            rest2, j = macc_factor(Keep(ty, i), rest)
            return Cons(weaken_ne(i, n), ty, rest2), j
    raise ContractViolation(f"not a modal witness: {m!r}")


def macc_refl(flavor: Flavor, ctx: Ctx = ()) -> MAcc:
    if flavor not in (Flavor.RLC, Flavor.MLC):
        raise FlavorViolation(flavor, "Return")
    return Nil()


def macc_trans(flavor: Flavor, m1: MAcc, m2: MAcc) -> MAcc:
    """Concatenate two chains (the second starts where the first ends)."""
    if flavor not in (Flavor.JLC, Flavor.MLC):
        raise FlavorViolation(flavor, "LetJoin" if flavor is Flavor.RLC else "Let")
    match m1:
        case Nil():
            return m2
        case Single(n, ty):
            return Cons(n, ty, m2)
        case Cons(n, ty, rest):
            return Cons(n, ty, macc_trans(flavor, rest, m2))
    raise ContractViolation(f"not a modal witness: {m1!r}")


# ----------------------------------------------------------- semantic values

class _UnitVal:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "UNIT"


UNIT_VAL = _UnitVal()


@dataclass(frozen=True)
class PairVal:
    left: object
    right: object


@dataclass(frozen=True, eq=False)
class FunVal:
    """Kripke function: ``fn(i, a)`` for ``i`` leaving ``world``."""
    world: Ctx
    fn: Callable

    def apply(self, i: OPE, arg):
        return self.fn(i, arg)


@dataclass(frozen=True)
class DiaVal:
    target: Ctx
    macc: MAcc
    payload: object


@dataclass(frozen=True)
class SemEnv:
    world: Ctx
    values: tuple

    def lookup(self, k: int):
        if not 0 <= k < len(self.values):
            raise ContractViolation(f"environment has no entry #{k}")
        return self.values[len(self.values) - 1 - k]

    def extend(self, v) -> "SemEnv":
        return SemEnv(self.world, self.values + (v,))


def transport(i: OPE, v):
    """Move a semantic value along ``i``."""
    match v:
        case _UnitVal():
            return v
        case NVar() | NFst() | NSnd() | NApp():
            return weaken_ne(i, v)
        case PairVal(l, r):
            return PairVal(transport(i, l), transport(i, r))
        case FunVal(_, fn):
            return FunVal(ope_cod(i), lambda j, a: fn(ope_compose(i, j), a))
        case DiaVal(_, m, a):
            m2, j = macc_factor(i, m)
            return DiaVal(ope_cod(j), m2, transport(j, a))
    raise ContractViolation(f"not a semantic value: {v!r}")


def transport_env(i: OPE, env: SemEnv) -> SemEnv:
    return SemEnv(ope_cod(i), tuple(transport(i, v) for v in env.values))


# ---------------------------------------------------------------- evaluation

def eval_term(flavor: Flavor, t: Term, env: SemEnv):
    match t:
        case Var(k):
            return env.lookup(k)
        case UnitTm():
            return UNIT_VAL
        case Pair(l, r):
            return PairVal(eval_term(flavor, l, env), eval_term(flavor, r, env))
        case Fst(a):
            return _proj(eval_term(flavor, a, env), 0)
        case Snd(a):
            return _proj(eval_term(flavor, a, env), 1)
        case Lam(_, body):
            def fn(i, a, body=body, env=env):
                return eval_term(flavor, body, transport_env(i, env).extend(a))
            return FunVal(env.world, fn)
        case App(f, a):
            fv = eval_term(flavor, f, env)
            if not isinstance(fv, FunVal):
                raise ContractViolation("application of a non-function value")
            return fv.apply(ope_id(env.world), eval_term(flavor, a, env))
        case Return(a):
            return DiaVal(env.world, macc_refl(flavor, env.world), eval_term(flavor, a, env))
        case LetMap(b, u):
            m, a, env2 = _enter(flavor, b, env)
            return DiaVal(env2.world, m, eval_term(flavor, u, env2.extend(a)))
        case LetJoin(b, u) | Let(b, u):
            m, a, env2 = _enter(flavor, b, env)
            inner = eval_term(flavor, u, env2.extend(a))
            if not isinstance(inner, DiaVal):
                raise ContractViolation("let body did not evaluate to a modal value")
            return DiaVal(inner.target, macc_trans(flavor, m, inner.macc), inner.payload)
    raise ContractViolation(f"not a term: {t!r}")



def _proj(v, k: int):
    if not isinstance(v, PairVal):
        raise ContractViolation("projection from a non-pair value")
    return v.left if k == 0 else v.right


def _enter(flavor: Flavor, b: Term, env: SemEnv):
    """Evaluate a modal bound term and move ``env`` into its target world."""
    d = eval_term(flavor, b, env)
    if not isinstance(d, DiaVal):
        raise ContractViolation("let-bound term did not evaluate to a modal value")
    env2 = transport_env(macc_include(env.world, d.macc), env)
    return d.macc, d.payload, env2


# ------------------------------------------------------------ reify / reflect

def reflect(flavor: Flavor, ty: Type, n: Neutral, ctx: Ctx):
    match ty:
        case Base():
            return n
        case Unit():
            return UNIT_VAL
        case Prod(a, b):
            return PairVal(reflect(flavor, a, NFst(n), ctx), reflect(flavor, b, NSnd(n), ctx))
        case Fun(a, b):
            def fn(i, arg, n=n):
                ctx2 = ope_cod(i)
                return reflect(flavor, b, NApp(weaken_ne(i, n), reify(flavor, a, arg, ctx2)), ctx2)
            return FunVal(tuple(ctx), fn)
        case Dia(a):
            ctx2 = tuple(ctx) + (a,)
            return DiaVal(ctx2, macc_step(flavor, n, a), reflect(flavor, a, NVar(0), ctx2))
    raise ContractViolation(f"not a type: {ty!r}")


def reify(flavor: Flavor, ty: Type, v, ctx: Ctx) -> NormalForm:
    ctx = tuple(ctx)
    match ty:
        case Base():
            return Up(v)
        case Unit():
            return NUnit()
        case Prod(a, b):
            return NPair(reify(flavor, a, v.left, ctx), reify(flavor, b, v.right, ctx))
        case Fun(a, b):
            ctx2 = ctx + (a,)
            arg = reflect(flavor, a, NVar(0), ctx2)
            return NLam(a, reify(flavor, b, v.apply(ope_drop(ctx, a), arg), ctx2))
        case Dia(a):
            if not isinstance(v, DiaVal):
                raise ContractViolation("reify at a modal type needs a modal value")
            return _reify_chain(flavor, a, v.macc, v.payload, ctx)
    raise ContractViolation(f"not a type: {ty!r}")


def _reify_chain(flavor: Flavor, a: Type, m: MAcc, payload, ctx: Ctx) -> NormalForm:
    match m:
        case Nil():
            return NReturn(reify(flavor, a, payload, ctx))
        case Single(n, ty):
            return NLetMap(n, reify(flavor, a, payload, ctx + (ty,)))
        case Cons(n, ty, rest):
            inner = _reify_chain(flavor, a, rest, payload, ctx + (ty,))
            return (NLet if flavor is Flavor.MLC else NLetJoin)(n, inner)
    raise ContractViolation(f"not a modal witness: {m!r}")


# ------------------------------------------------------------------ drivers

def identity_env(flavor: Flavor, ctx: Ctx) -> SemEnv:
    ctx = tuple(ctx)
    n = len(ctx)
    return SemEnv(ctx, tuple(reflect(flavor, ty, NVar(n - 1 - pos), ctx)
                             for pos, ty in enumerate(ctx)))


def quote(flavor: Flavor, ctx: Ctx, ty: Type, f: Callable[[SemEnv], object]) -> NormalForm:
    """Read back a semantic map ``env -> value`` at the identity environment."""
    return reify(flavor, ty, f(identity_env(flavor, ctx)), ctx)


def norm(flavor: Flavor, ctx: Ctx, t: Term) -> NormalForm:
    ty = infer(flavor, ctx, t)
    return quote(flavor, ctx, ty, lambda env: eval_term(flavor, t, env))


def decide_equal(flavor: Flavor, ctx: Ctx, t: Term, u: Term) -> bool:
    ty_t, ty_u = infer(flavor, ctx, t), infer(flavor, ctx, u)
    if ty_t != ty_u:
        raise TypeMismatch(f"terms have different types {ty_t} and {ty_u}")
    return norm(flavor, ctx, t) == norm(flavor, ctx, u)

