import random

import pytest

import _frame_laws
from laxcalc.gen import random_problem
from laxcalc.nbe import (
    Cons, DiaVal, FunVal, Nil, PairVal, SemEnv, Single, UNIT_VAL, decide_equal,
    eval_term, identity_env, macc_factor, macc_include, macc_refl, macc_trans,
    macc_valid, norm, quote, reflect, reify, transport,
)
from laxcalc.nf import NFst, NLetMap, NReturn, NSnd, NVar, Up, embed, is_nf, weaken_nf
from laxcalc.ope import ContractViolation, Drop, Keep, OBase, ope_compose, ope_drop, ope_id, weaken
from laxcalc.parse import parse_term, parse_type
from laxcalc.syntax import BASE, UNIT, Dia, Flavor, FlavorViolation, Prod, print_term
from laxcalc.typecheck import TypeMismatch, infer

i = BASE
SLC, RLC, JLC, MLC = Flavor.SLC, Flavor.RLC, Flavor.JLC, Flavor.MLC


# ---- modal accessibility

def test_include_single_is_one_drop():
    assert macc_include((i,), Single(NVar(0), i)) == Drop(i, ope_id((i,)))


def test_include_nil_is_identity():
    assert macc_include((i,), Nil()) == ope_id((i,))


def test_include_two_entries():
    g = (Dia(Dia(i)),)
    m = Cons(NVar(0), Dia(i), Cons(NVar(0), i, Nil()))
    assert macc_include(g, m) == Drop(i, Drop(Dia(i), Keep(Dia(Dia(i)), OBase())))


def test_factor_examples():
    m = Single(NVar(0), i)
    g = (Dia(i),)
    assert macc_factor(ope_id(g), m) == (m, ope_id(g + (i,)))
    wk = ope_drop(g, UNIT)
    assert macc_factor(wk, m) == (Single(NVar(1), i), Keep(i, wk))
    assert macc_factor(wk, Nil()) == (Nil(), wk)


def test_refl_by_flavor():
    assert macc_refl(RLC, (i,)) == Nil()
    for fl in (SLC, JLC):
        with pytest.raises(FlavorViolation):
            macc_refl(fl)


def test_trans_by_flavor():
    a, b = Single(NVar(0), i), Single(NVar(1), i)
    assert macc_trans(JLC, a, b) == Cons(NVar(0), i, b)
    m = Cons(NVar(0), i, Nil())
    assert macc_trans(MLC, Nil(), m) == m == macc_trans(MLC, m, Nil())
    for fl in (SLC, RLC):
        with pytest.raises(FlavorViolation):
            macc_trans(fl, a, b)


def test_shapes():
    assert not macc_valid(SLC, Nil())
    assert not macc_valid(JLC, Cons(NVar(0), i, Nil()))
    assert macc_valid(JLC, Cons(NVar(0), i, Single(NVar(0), i)))
    assert not macc_valid(MLC, Single(NVar(0), i))
    assert not macc_valid(RLC, Cons(NVar(0), i, Nil()))


@pytest.mark.parametrize("fl", list(Flavor), ids=lambda f: f.value)
def test_frame_laws_small(fl):
    checked, failures = _frame_laws.check(fl, max_len=2, max_entries=2)
    assert checked > 0 and failures == []


# ---- values

def test_transport_laws():
    assert transport(ope_id((i,)), NVar(0)) == NVar(0)
    assert transport(ope_drop((i,), i), NVar(0)) == NVar(1)
    v = DiaVal((Dia(i), i), Single(NVar(0), i), NVar(0))
    wk = ope_drop((Dia(i),), UNIT)
    moved = transport(wk, v)
    assert moved.macc == Single(NVar(1), i)
    assert moved.payload == NVar(0)
    assert moved.target == (Dia(i), UNIT, i)


def test_eval_unit_and_return():
    env = SemEnv((i,), (NVar(0),))
    assert eval_term(RLC, parse_term("()"), env) is UNIT_VAL
    assert eval_term(RLC, parse_term("return x", ["x"]), env) == DiaVal((i,), Nil(), NVar(0))


def test_eval_letmap_identity_body():
    g = (Dia(i),)
    z = DiaVal(g + (i,), Single(NVar(0), i), NVar(0))
    out = eval_term(SLC, parse_term("letmap y = z in y", ["z"]), SemEnv(g, (z,)))
    assert out == z


def test_eval_rejects_stuck_terms():
    with pytest.raises(ContractViolation):
        eval_term(SLC, parse_term("fst x", ["x"]), SemEnv((i,), (NVar(0),)))


def test_reflect_examples():
    assert reflect(SLC, i, NVar(0), (i,)) == NVar(0)
    p = reflect(SLC, Prod(i, i), NVar(0), (Prod(i, i),))
    assert p == PairVal(NFst(NVar(0)), NSnd(NVar(0)))
    d = reflect(SLC, Dia(i), NVar(0), (Dia(i),))
    assert d == DiaVal((Dia(i), i), Single(NVar(0), i), NVar(0))
    assert isinstance(reflect(SLC, parse_type("i -> i"), NVar(0), (parse_type("i -> i"),)), FunVal)


def test_reify_examples():
    f = parse_type("i -> i")
    nf = reify(SLC, f, reflect(SLC, f, NVar(0), (f,)), (f,))
    assert print_term(embed(nf), ["f"]) == r"\x. f x"
    d = reflect(SLC, Dia(i), NVar(0), (Dia(i),))
    assert reify(SLC, Dia(i), d, (Dia(i),)) == NLetMap(NVar(0), Up(NVar(0)))
    r = DiaVal((i,), Nil(), NVar(0))
    assert reify(MLC, Dia(i), r, (i,)) == NReturn(Up(NVar(0)))


def test_quote_examples():
    assert embed(quote(MLC, (), UNIT, lambda env: UNIT_VAL)) == parse_term("()")
    z = (Dia(i),)
    out = quote(SLC, z, Dia(i), lambda env: eval_term(SLC, parse_term("z", ["z"]), env))
    assert print_term(embed(out), ["z"]) == "letmap x = z in x"
    out = quote(SLC, (i,), i, lambda env: env.lookup(0))
    assert print_term(embed(out), ["x"]) == "x"


# ---- normalization

@pytest.mark.parametrize("fl,ctx,term,expected", [
    (MLC, "x:i", "let y = return x in return y", "return x"),
    (SLC, "z:<>i", "z", "letmap x = z in x"),
    (SLC, "u:1", "u", "()"),
    (MLC, "u:1", "u", "()"),
    (SLC, "z:<><>i", "z", "letmap x = z in letmap y = x in y"),
    (MLC, "z:<><>i", "z", "let x = z in return (let y = x in return y)"),
    (JLC, "z:<><>i", "letjoin y = z in y", "letjoin x = z in letmap y = x in y"),
    (RLC, "x:i", "letmap y = return x in (y, y)", "return (x, x)"),
    (SLC, "p:i*<>i", "letmap y = snd p in (fst p, y)", "letmap x = snd p in (fst p, x)"),
])
def test_norm_examples(fl, ctx, term, expected):
    from laxcalc.parse import parse_ctx
    names, types = parse_ctx(ctx)
    nf = norm(fl, types, parse_term(term, names))
    assert print_term(embed(nf), names) == expected


def test_decide_equal_examples():
    k = parse_type("i -> i -> i")
    assert not decide_equal(SLC, (), parse_term(r"\x:i. \y:i. x"), parse_term(r"\x:i. \y:i. y"))
    t = parse_term(r"\x:i. \y:i. x")
    assert decide_equal(SLC, (), t, t)
    assert infer(SLC, (), t) == k
    with pytest.raises(TypeMismatch):
        decide_equal(SLC, (i,), parse_term("x", ["x"]), parse_term("()"))


@pytest.mark.parametrize("fl", list(Flavor), ids=lambda f: f.value)
def test_norm_contract_sampled(fl):
    rng = random.Random(2024)
    for _ in range(80):
        ctx, ty, t = random_problem(fl, rng)
        nf = norm(fl, ctx, t)
        assert is_nf(fl, ctx, ty, nf)
        assert norm(fl, ctx, embed(nf)) == nf
        assert decide_equal(fl, ctx, t, embed(nf))


@pytest.mark.parametrize("fl", list(Flavor), ids=lambda f: f.value)
def test_norm_natural_in_weakening(fl):
    rng = random.Random(11)
    for _ in range(40):
        ctx, ty, t = random_problem(fl, rng, depth=4)
        wk = ope_compose(ope_drop(ctx, UNIT), ope_drop(ctx + (UNIT,), i))
        assert norm(fl, ctx + (UNIT, i), weaken(wk, t)) == weaken_nf(wk, norm(fl, ctx, t))


def test_identity_env_reflects_variables():
    env = identity_env(SLC, (i, i))
    assert env.values == (NVar(1), NVar(0))
