"""Seeded random generation of types and well-typed terms.

Generation is goal directed: every subgoal the generator commits to is
first checked for inhabitation, so it never paints itself into a corner
(there is no closed term of type ``i``, for example).
"""

from __future__ import annotations

import random
from functools import lru_cache

from .nf import embed, enumerate_nf, inhabited
from .syntax import (
    App, BASE, Ctx, Dia, Flavor, FLAVOR_CONSTRUCTS, Fst, Fun, Lam, Let,
    LetJoin, LetMap, Pair, Prod, Return, Snd, Term, Type, UNIT, Unit, UnitTm,
    Var, subformulas, term_depth,
)


def random_type(rng: random.Random, depth: int = 2) -> Type:
    # base/unit heavy: leaves win more often as depth shrinks
    if depth <= 0 or rng.random() < 0.4:
        return BASE if rng.random() < 0.75 else UNIT
    r = rng.random()
    if r < 0.35:
        return Dia(random_type(rng, depth - 1))
    if r < 0.7:
        return Fun(random_type(rng, depth - 1), random_type(rng, depth - 1))
    return Prod(random_type(rng, depth - 1), random_type(rng, depth - 1))


def random_ctx(rng: random.Random, max_len: int = 3, type_depth: int = 2) -> Ctx:
    return tuple(random_type(rng, type_depth) for _ in range(rng.randint(0, max_len)))


@lru_cache(maxsize=None)
def _ok(flavor: Flavor, hyps: frozenset, ty: Type) -> bool:
    return inhabited(flavor, tuple(hyps), ty)


@lru_cache(maxsize=None)
def smallest_term(flavor: Flavor, ctx: Ctx, ty: Type) -> Term | None:
    """The first normal form found by iterative deepening, as a term."""
    if not _ok(flavor, frozenset(ctx), ty):
        return None
    for d in range(1, 16):
        found = enumerate_nf(flavor, ctx, ty, d)
        if found:
            return embed(found[0])
    return None


class TermGen:
    """Random well-typed terms of a requested type in one flavor.

    Beta redexes and modal let-nestings are introduced on purpose so that
    normalization has work to do.
    """

    def __init__(self, flavor: Flavor, rng: random.Random):
        self.flavor = flavor
        self.rng = rng
        self.allowed = FLAVOR_CONSTRUCTS[flavor]

    def ok(self, ctx: Ctx, ty: Type) -> bool:
        return _ok(self.flavor, frozenset(ctx), ty)

    def term(self, ctx: Ctx, ty: Type, depth: int) -> Term:
        ctx = tuple(ctx)
        if not self.ok(ctx, ty):
            raise ValueError(f"no term of type {ty} in context {ctx}")
        if depth <= 1:
            return self._leaf(ctx, ty)
        builders = [self._intro, self._intro, self._redex, self._elim]
        if self._var_heads(ctx, ty):
            builders += [self._from_var, self._from_var]
        if isinstance(ty, Dia):
            builders += [self._modal, self._modal]
        for _ in range(6):
            t = self.rng.choice(builders)(ctx, ty, depth)
            if t is not None:
                return t
        return self._leaf(ctx, ty)

    def pick_type(self, ctx: Ctx, depth: int = 1, tries: int = 8) -> Type | None:
        """A random type inhabited in ``ctx``."""
        for _ in range(tries):
            a = random_type(self.rng, depth)
            if self.ok(ctx, a):
                return a
        return None

    # -- leaves

    def _leaf(self, ctx: Ctx, ty: Type) -> Term:
        hits = [k for k in range(len(ctx)) if ctx[len(ctx) - 1 - k] == ty]
        if hits and self.rng.random() < 0.7:
            return Var(self.rng.choice(hits))
        t = smallest_term(self.flavor, ctx, ty)
        if t is None:
            raise ValueError(f"no term of type {ty} in context {ctx}")
        return t

    # -- variables followed by eliminations

    def _reaches(self, ctx: Ctx, src: Type, goal: Type, fuel: int = 3) -> bool:
        if src == goal:
            return True
        if fuel == 0:
            return False
        match src:
            case Prod(a, b):
                return self._reaches(ctx, a, goal, fuel - 1) or self._reaches(ctx, b, goal, fuel - 1)
            case Fun(a, b):
                return self.ok(ctx, a) and self._reaches(ctx, b, goal, fuel - 1)
        return False

    def _var_heads(self, ctx: Ctx, ty: Type) -> list:
        return [k for k in range(len(ctx)) if self._reaches(ctx, ctx[len(ctx) - 1 - k], ty)]

    def _from_var(self, ctx: Ctx, ty: Type, depth: int) -> Term | None:
        heads = self._var_heads(ctx, ty)
        if not heads:
            return None
        k = self.rng.choice(heads)
        t: Term = Var(k)
        cur = ctx[len(ctx) - 1 - k]
        while cur != ty:
            match cur:
                case Prod(a, b):
                    go_left = self._reaches(ctx, a, ty) and (
                        not self._reaches(ctx, b, ty) or self.rng.random() < 0.5)
                    t, cur = (Fst(t), a) if go_left else (Snd(t), b)
                case Fun(a, b):
                    t, cur = App(t, self.term(ctx, a, depth - 1)), b
        return t

    # -- introductions

    def _intro(self, ctx: Ctx, ty: Type, depth: int) -> Term | None:
        d = depth - 1
        match ty:
            case Unit():
                return UnitTm()
            case Prod(a, b):
                return Pair(self.term(ctx, a, d), self.term(ctx, b, d))
            case Fun(a, b):
                return Lam(a, self.term(ctx + (a,), b, d))
            case Dia(_):
                return self._modal(ctx, ty, depth)
        return None

    def _modal_sources(self, ctx: Ctx) -> list:
        out = set()
        for c in ctx:
            out |= {s.body for s in subformulas(c) if isinstance(s, Dia)}
        for _ in range(3):
            out.add(random_type(self.rng, 1))
        return sorted((a for a in out if self.ok(ctx, Dia(a))), key=str)

    def _modal(self, ctx: Ctx, ty: Dia, depth: int) -> Term | None:
        d = depth - 1
        opts = []
        if "Return" in self.allowed and self.ok(ctx, ty.body):
            opts.append(("return", None))
        for a in self._modal_sources(ctx):
            ext = ctx + (a,)
            if "LetMap" in self.allowed and self.ok(ext, ty.body):
                opts.append(("letmap", a))
            for name in ("LetJoin", "Let"):
                if name in self.allowed and self.ok(ext, ty):
                    opts.append((name, a))
        if not opts:
            return None
        kind, a = self.rng.choice(opts)
        if kind == "return":
            return Return(self.term(ctx, ty.body, d))
        bound = self.term(ctx, Dia(a), d)
        if kind == "letmap":
            return LetMap(bound, self.term(ctx + (a,), ty.body, d))
        cls = LetJoin if kind == "LetJoin" else Let
        return cls(bound, self.term(ctx + (a,), ty, d))

    # -- eliminations and redexes

    def _elim(self, ctx: Ctx, ty: Type, depth: int) -> Term | None:
        d = depth - 1
        other = self.pick_type(ctx)
        if other is None:
            return None
        r = self.rng.random()
        if r < 0.3:
            return Fst(self.term(ctx, Prod(ty, other), d))
        if r < 0.5:
            return Snd(self.term(ctx, Prod(other, ty), d))
        return App(self.term(ctx, Fun(other, ty), d), self.term(ctx, other, d))

    def _redex(self, ctx: Ctx, ty: Type, depth: int) -> Term | None:
        d = depth - 1
        a = self.pick_type(ctx)
        if a is None:
            return None
        r = self.rng.random()
        if r < 0.25:
            return Fst(Pair(self.term(ctx, ty, d), self.term(ctx, a, d)))
        if r < 0.35:
            return Snd(Pair(self.term(ctx, a, d), self.term(ctx, ty, d)))
        if r < 0.75 or not isinstance(ty, Dia):
            return App(Lam(a, self.term(ctx + (a,), ty, d)), self.term(ctx, a, d))
        # a modal construct whose bound term is itself modal
        return self._modal(ctx, ty, depth)


def random_term(flavor: Flavor, rng: random.Random, ctx: Ctx, ty: Type, depth: int = 5) -> Term:
    return TermGen(flavor, rng).term(tuple(ctx), ty, depth)


def random_problem(flavor: Flavor, rng: random.Random, depth: int = 5, max_ctx: int = 3):
    """A random ``(ctx, type, term)`` triple, the term well typed and at most ``depth`` deep."""
    gen = TermGen(flavor, rng)
    while True:
        ctx = random_ctx(rng, max_ctx)
        ty = random_type(rng)
        if not gen.ok(ctx, ty):
            continue
        t = gen.term(ctx, ty, rng.randint(2, depth))
        if term_depth(t) <= depth:
            return ctx, ty, t
