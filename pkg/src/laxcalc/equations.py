"""The equational theories of the four calculi as an executable catalog.

Each rule is a schema over metavariables.  A metavariable has a premise
``ctx, extra ⊢ mv : type`` where ``extra`` is an optional bound variable
and both types are patterns over the type variables A, B, C.  Instantiating
a rule checks the supplied terms against those premises and builds the two
sides.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .ope import Drop, Keep, ope_id, rename, shift, weaken
from .syntax import (
    App, Ctx, Dia, Flavor, FlavorViolation, Fst, Fun, Lam, Let, LetJoin,
    LetMap, Pair, Prod, Return, Snd, Term, Type, Unit, UnitTm, Var, show_type,
)
from .typecheck import IllTyped, infer, substitute

ALL = frozenset(Flavor)
SLC, RLC, JLC, MLC = Flavor.SLC, Flavor.RLC, Flavor.JLC, Flavor.MLC


class BindingTypeMismatch(Exception):
    pass


@dataclass(frozen=True)
class TV:
    """A type variable inside a rule premise."""
    name: str


def _match(pat, ty: Type, env: dict) -> bool:
    match pat:
        case TV(name):
            if name in env:
                return env[name] == ty
            env[name] = ty
            return True
        case Dia(p):
            return isinstance(ty, Dia) and _match(p, ty.body, env)
        case Prod(p, q):
            return isinstance(ty, Prod) and _match(p, ty.left, env) and _match(q, ty.right, env)
        case Fun(p, q):
            return isinstance(ty, Fun) and _match(p, ty.dom, env) and _match(q, ty.cod, env)
    return pat == ty


def _resolve(pat, env: dict) -> Type:
    match pat:
        case TV(name):
            return env[name]
        case Dia(p):
            return Dia(_resolve(p, env))
        case Prod(p, q):
            return Prod(_resolve(p, env), _resolve(q, env))
        case Fun(p, q):
            return Fun(_resolve(p, env), _resolve(q, env))
    return pat


@dataclass(frozen=True)
class Premise:
    metavar: str
    binder: object  # type pattern of the extra bound variable, or None
    type: object


A, B, C = TV("A"), TV("B"), TV("C")


@dataclass(frozen=True)
class EqRule:
    name: str
    flavors: frozenset
    premises: tuple
    build: Callable  # (bindings, tyenv, ctx) -> (lhs, rhs)
    oriented: bool   # usable left to right by rewrite_step

    @property
    def metavars(self) -> tuple:
        return tuple(p.metavar for p in self.premises)


def _wk_under(ctx: Ctx, e: dict, t: Term) -> Term:
    """Move ``t`` from ``G, y:B`` to ``G, x:A, y:B``."""
    return weaken(Keep(e["B"], Drop(e["A"], ope_id(ctx))), t)


RULES: list[EqRule] = [
    # STLC
    EqRule("Unit-eta", ALL, (Premise("t", None, Unit()),),
           lambda b, e, g: (b["t"], UnitTm()), False),
    EqRule("Prod-eta", ALL, (Premise("t", None, Prod(A, B)),),
           lambda b, e, g: (b["t"], Pair(Fst(b["t"]), Snd(b["t"]))), False),
    EqRule("Prod-beta1", ALL, (Premise("t", None, A), Premise("u", None, B)),
           lambda b, e, g: (Fst(Pair(b["t"], b["u"])), b["t"]), True),
    EqRule("Prod-beta2", ALL, (Premise("t", None, A), Premise("u", None, B)),
           lambda b, e, g: (Snd(Pair(b["t"], b["u"])), b["u"]), True),
    EqRule("Fun-eta", ALL, (Premise("t", None, Fun(A, B)),),
           lambda b, e, g: (b["t"], Lam(e["A"], App(shift(b["t"]), Var(0)))), False),
    EqRule("Fun-beta", ALL, (Premise("u", None, A), Premise("t", A, B)),
           lambda b, e, g: (App(Lam(e["A"], b["t"]), b["u"]), substitute(b["t"], b["u"])), True),
    # MLC
    EqRule("ML/Dia-beta", frozenset({MLC}), (Premise("t", None, A), Premise("u", A, Dia(B))),
           lambda b, e, g: (Let(Return(b["t"]), b["u"]), substitute(b["u"], b["t"])), True),
    EqRule("ML/Dia-eta", frozenset({MLC}), (Premise("t", None, Dia(A)),),
           lambda b, e, g: (b["t"], Let(b["t"], Return(Var(0)))), False),
    EqRule("ML/Dia-ass", frozenset({MLC}),
           (Premise("t", None, Dia(A)), Premise("u", A, Dia(B)), Premise("u'", B, Dia(C))),
           lambda b, e, g: (Let(Let(b["t"], b["u"]), b["u'"]),
                         Let(b["t"], Let(b["u"], _wk_under(g, e, b["u'"])))), True),
    # SLC
    EqRule("SL/Dia-eta", frozenset({SLC}), (Premise("t", None, Dia(A)),),
           lambda b, e, g: (b["t"], LetMap(b["t"], Var(0))), False),
    EqRule("SL/Dia-beta", frozenset({SLC}),
           (Premise("t", None, Dia(A)), Premise("u", A, B), Premise("u'", B, C)),
           lambda b, e, g: (LetMap(LetMap(b["t"], b["u"]), b["u'"]),
                         LetMap(b["t"], substitute(_wk_under(g, e, b["u'"]), b["u"]))),
           True),
    # RLC
    EqRule("RL/Dia-eta", frozenset({RLC}), (Premise("t", None, Dia(A)),),
           lambda b, e, g: (b["t"], LetMap(b["t"], Var(0))), False),
    EqRule("RL/Dia-beta1", frozenset({RLC}),
           (Premise("t", None, Dia(A)), Premise("u", A, B), Premise("u'", B, C)),
           lambda b, e, g: (LetMap(LetMap(b["t"], b["u"]), b["u'"]),
                         LetMap(b["t"], substitute(_wk_under(g, e, b["u'"]), b["u"]))),
           True),
    EqRule("RL/Dia-beta2", frozenset({RLC}), (Premise("t", None, A), Premise("u", A, B)),
           lambda b, e, g: (LetMap(Return(b["t"]), b["u"]), Return(substitute(b["u"], b["t"]))),
           True),
    # JLC
    EqRule("JL/Dia-eta", frozenset({JLC}), (Premise("t", None, Dia(A)),),
           lambda b, e, g: (b["t"], LetMap(b["t"], Var(0))), False),
    EqRule("JL/Dia-beta1", frozenset({JLC}),
           (Premise("t", None, Dia(A)), Premise("u", A, B), Premise("u'", B, C)),
           lambda b, e, g: (LetMap(LetMap(b["t"], b["u"]), b["u'"]),
                         LetMap(b["t"], substitute(_wk_under(g, e, b["u'"]), b["u"]))),
           True),
    EqRule("JL/Dia-beta2", frozenset({JLC}),
           (Premise("t", None, Dia(A)), Premise("u", A, B), Premise("u'", B, Dia(C))),
           lambda b, e, g: (LetJoin(LetMap(b["t"], b["u"]), b["u'"]),
                         LetJoin(b["t"], substitute(_wk_under(g, e, b["u'"]), b["u"]))),
           True),
    EqRule("JL/Dia-com", frozenset({JLC}),
           (Premise("t", None, Dia(A)), Premise("u", A, Dia(B)), Premise("u'", B, C)),
           lambda b, e, g: (LetMap(LetJoin(b["t"], b["u"]), b["u'"]),
                         LetJoin(b["t"], LetMap(b["u"], _wk_under(g, e, b["u'"])))),
           True),
    EqRule("JL/Dia-ass", frozenset({JLC}),
           (Premise("t", None, Dia(A)), Premise("u", A, Dia(B)), Premise("u'", B, Dia(C))),
           lambda b, e, g: (LetJoin(LetJoin(b["t"], b["u"]), b["u'"]),
                         LetJoin(b["t"], LetJoin(b["u"], _wk_under(g, e, b["u'"])))),
           True),
]

RULES_BY_NAME = {r.name: r for r in RULES}
STLC_RULES = [r for r in RULES if r.flavors == ALL]
MODAL_RULES = [r for r in RULES if r.flavors != ALL]


def rules_for(flavor: Flavor) -> list:
    return [r for r in RULES if flavor in r.flavors]


def _rule(rule) -> EqRule:
    return RULES_BY_NAME[rule] if isinstance(rule, str) else rule


def instantiate(rule, bindings: dict, ctx: Ctx = (), flavor: Flavor | None = None) -> tuple:
    """Check ``bindings`` against the rule's premises in ``ctx`` and build (lhs, rhs)."""
    rule = _rule(rule)
    flavor = flavor or min(rule.flavors, key=lambda f: list(Flavor).index(f))
    if flavor not in rule.flavors:
        raise BindingTypeMismatch(f"{rule.name} is not a rule of {flavor}")
    ctx = tuple(ctx)
    env: dict = {}
    for p in rule.premises:
        if p.metavar not in bindings:
            raise BindingTypeMismatch(f"{rule.name}: no binding for {p.metavar}")
        local = ctx
        if p.binder is not None:
            local = ctx + (_resolve(p.binder, env),)
        try:
            ty = infer(flavor, local, bindings[p.metavar])
        except (IllTyped, FlavorViolation) as exc:
            raise BindingTypeMismatch(f"{rule.name}: {p.metavar} is ill typed: {exc}") from exc
        if not _match(p.type, ty, env):
            raise BindingTypeMismatch(
                f"{rule.name}: {p.metavar} has type {show_type(ty)}, "
                f"which does not fit its premise")
    return rule.build(bindings, env, ctx)


def random_instance(rule, flavor: Flavor, rng: random.Random, depth: int = 4, max_ctx: int = 3):
    """Random (ctx, lhs, rhs) for ``rule`` with generated metavariable bindings."""
    from .gen import TermGen, random_ctx, random_type

    rule = _rule(rule)
    gen = TermGen(flavor, rng)
    while True:
        ctx = random_ctx(rng, max_ctx)
        env = {n: random_type(rng, 2) for n in "ABC"}
        bindings, ok = {}, True
        for p in rule.premises:
            local = ctx if p.binder is None else ctx + (_resolve(p.binder, env),)
            ty = _resolve(p.type, env)
            if not gen.ok(local, ty):
                ok = False
                break
            bindings[p.metavar] = gen.term(local, ty, rng.randint(1, depth))
        if ok:
            lhs, rhs = instantiate(rule, bindings, ctx, flavor)
            return ctx, lhs, rhs


# ------------------------------------------------------------------ rewriting

def _top_steps(flavor: Flavor, t: Term) -> list:
    """Results of oriented rules applied at the root of ``t``."""
    out = []
    match t:
        case Fst(Pair(l, _)):
            out.append(l)
        case Snd(Pair(_, r)):
            out.append(r)
        case App(Lam(_, body), u):
            out.append(substitute(body, u))
    if flavor is MLC:
        match t:
            case Let(Return(u), body):
                out.append(substitute(body, u))
            case Let(Let(t0, u), u2):
                out.append(Let(t0, Let(u, _shift_under(u2))))
    if flavor in (SLC, RLC, JLC):
        match t:
            case LetMap(LetMap(t0, u), u2):
                out.append(LetMap(t0, substitute(_shift_under(u2), u)))
    if flavor is RLC:
        match t:
            case LetMap(Return(u), body):
                out.append(Return(substitute(body, u)))
    if flavor is JLC:
        match t:
            case LetJoin(LetMap(t0, u), u2):
                out.append(LetJoin(t0, substitute(_shift_under(u2), u)))
            case LetMap(LetJoin(t0, u), u2):
                out.append(LetJoin(t0, LetMap(u, _shift_under(u2))))
            case LetJoin(LetJoin(t0, u), u2):
                out.append(LetJoin(t0, LetJoin(u, _shift_under(u2))))
    return out


def _shift_under(t: Term) -> Term:
    """Insert a fresh variable just below the innermost one (``G, y`` to ``G, x, y``)."""
    return rename(t, lambda k: 0 if k == 0 else k + 1)


def rewrite_step(flavor: Flavor, t: Term) -> set:
    """Every term one oriented beta/ass/com step away from ``t``."""
    out = set(_top_steps(flavor, t))
    match t:
        case Pair(l, r):
            out |= {Pair(l2, r) for l2 in rewrite_step(flavor, l)}
            out |= {Pair(l, r2) for r2 in rewrite_step(flavor, r)}
        case Fst(a) | Snd(a) | Return(a):
            out |= {type(t)(a2) for a2 in rewrite_step(flavor, a)}
        case App(f, a):
            out |= {App(f2, a) for f2 in rewrite_step(flavor, f)}
            out |= {App(f, a2) for a2 in rewrite_step(flavor, a)}
        case Lam(ty, body, hint):
            out |= {Lam(ty, b2, hint) for b2 in rewrite_step(flavor, body)}
        case LetMap(b, u, hint) | LetJoin(b, u, hint) | Let(b, u, hint):
            out |= {type(t)(b2, u, hint) for b2 in rewrite_step(flavor, b)}
            out |= {type(t)(b, u2, hint) for u2 in rewrite_step(flavor, u)}
    return out


def catalog() -> list:
    """Machine-readable listing of the rules."""
    order = list(Flavor)
    return [
        {
            "name": r.name,
            "flavors": [f.name for f in sorted(r.flavors, key=order.index)],
            "metavariables": list(r.metavars),
            "arity": len(r.premises),
            "oriented": r.oriented,
        }
        for r in RULES
    ]
