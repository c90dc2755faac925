"""Syntax-directed type inference and single-variable substitution."""

from __future__ import annotations

from .ope import shift
from .syntax import (
    App, Ctx, Dia, Flavor, FlavorViolation, FLAVOR_CONSTRUCTS, Fst,
    Fun, Lam, Let, LetJoin, LetMap, Pair, Prod, Return, Snd, Term, Type,
    Unit, UnitTm, Var, show_type,
)

__all__ = ["IllTyped", "TypeMismatch", "infer", "check", "substitute", "subst"]


class IllTyped(Exception):
    """A typing rule's premises do not hold; ``path`` locates the subterm."""

    def __init__(self, reason: str, path: tuple = ()):
        self.reason = reason
        self.path = path
        where = "/".join(map(str, path)) or "<root>"
        super().__init__(f"{reason} (at {where})")


class TypeMismatch(Exception):
    pass


def infer(flavor: Flavor, ctx: Ctx, t: Term) -> Type:
    return _infer(flavor, tuple(ctx), t, ())


def check(flavor: Flavor, ctx: Ctx, t: Term, ty: Type) -> None:
    got = infer(flavor, ctx, t)
    if got != ty:
        raise IllTyped(f"expected {show_type(ty)}, found {show_type(got)}")


def _gate(flavor: Flavor, t: Term, path: tuple) -> None:
    name = type(t).__name__
    if name not in FLAVOR_CONSTRUCTS[flavor]:
        raise FlavorViolation(flavor, name, path)


def _infer(fl: Flavor, ctx: Ctx, t: Term, path: tuple) -> Type:
    match t:
        case Var(k):
            if not 0 <= k < len(ctx):
                raise IllTyped(f"unbound variable #{k}", path)
            return ctx[len(ctx) - 1 - k]
        case UnitTm():
            return Unit()
        case Pair(l, r):
            return Prod(_infer(fl, ctx, l, path + ("left",)),
                        _infer(fl, ctx, r, path + ("right",)))
        case Fst(a) | Snd(a):
            ty = _infer(fl, ctx, a, path + ("arg",))
            if not isinstance(ty, Prod):
                raise IllTyped(f"projection from non-product {show_type(ty)}", path)
            return ty.left if isinstance(t, Fst) else ty.right
        case Lam(dom, b):
            if dom is None:
                raise IllTyped("lambda needs a type annotation, write \\x:T. body", path)
            return Fun(dom, _infer(fl, ctx + (dom,), b, path + ("body",)))
        case App(f, a):
            fty = _infer(fl, ctx, f, path + ("fn",))
            if not isinstance(fty, Fun):
                raise IllTyped(f"application of non-function {show_type(fty)}", path)
            aty = _infer(fl, ctx, a, path + ("arg",))
            if aty != fty.dom:
                raise IllTyped(
                    f"argument has type {show_type(aty)}, function expects {show_type(fty.dom)}",
                    path)
            return fty.cod
        case Return(a):
            _gate(fl, t, path)
            return Dia(_infer(fl, ctx, a, path + ("arg",)))
        case LetMap(b, u) | LetJoin(b, u) | Let(b, u):
            _gate(fl, t, path)
            bty = _infer(fl, ctx, b, path + ("bound",))
            if not isinstance(bty, Dia):
                raise IllTyped(f"bound term has non-modal type {show_type(bty)}", path)
            uty = _infer(fl, ctx + (bty.body,), u, path + ("body",))
            if isinstance(t, LetMap):
                return Dia(uty)
            if not isinstance(uty, Dia):
                raise IllTyped(f"body has non-modal type {show_type(uty)}", path + ("body",))
            return uty
    raise IllTyped(f"not a term: {t!r}", path)


def subst(t: Term, sigma, depth: int = 0) -> Term:
    """Apply ``sigma`` (index -> term, or None to keep a variable) to ``t``.

    ``sigma`` sees indices relative to the outside of ``t``; terms it returns
    are shifted under the binders crossed on the way down.
    """
    match t:
        case Var(k):
            if k < depth:
                return t
            r = sigma(k - depth)
            return Var(k) if r is None else shift(r, depth) if depth else r
        case UnitTm():
            return t
        case Pair(l, r):
            return Pair(subst(l, sigma, depth), subst(r, sigma, depth))
        case Fst(a):
            return Fst(subst(a, sigma, depth))
        case Snd(a):
            return Snd(subst(a, sigma, depth))
        case Return(a):
            return Return(subst(a, sigma, depth))
        case App(f, a):
            return App(subst(f, sigma, depth), subst(a, sigma, depth))
        case Lam(ty, b, hint):
            return Lam(ty, subst(b, sigma, depth + 1), hint)
        case LetMap(b, u, hint) | LetJoin(b, u, hint) | Let(b, u, hint):
            return type(t)(subst(b, sigma, depth), subst(u, sigma, depth + 1), hint)
    raise TypeError(f"not a term: {t!r}")


def substitute(t: Term, u: Term) -> Term:
    """``t`` lives in ``G, x:A`` and ``u`` in ``G``; replace x by u."""
    return subst(t, lambda k: u if k == 0 else Var(k - 1))

