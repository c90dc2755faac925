import random

import pytest

from laxcalc.equations import (
    BindingTypeMismatch, MODAL_RULES, RULES, STLC_RULES, catalog, instantiate,
    random_instance, rewrite_step, rules_for,
)
from laxcalc.nbe import decide_equal
from laxcalc.parse import parse_term, parse_type
from laxcalc.syntax import BASE, Dia, Flavor, Prod, UnitTm
from laxcalc.typecheck import infer

i = BASE

EXPECTED_NAMES = {
    "Unit-eta", "Prod-eta", "Prod-beta1", "Prod-beta2", "Fun-eta", "Fun-beta",
    "ML/Dia-beta", "ML/Dia-eta", "ML/Dia-ass",
    "SL/Dia-eta", "SL/Dia-beta",
    "RL/Dia-eta", "RL/Dia-beta1", "RL/Dia-beta2",
    "JL/Dia-eta", "JL/Dia-beta1", "JL/Dia-beta2", "JL/Dia-com", "JL/Dia-ass",
}


def test_catalog_is_complete_and_unique():
    names = [r.name for r in RULES]
    assert len(names) == len(set(names)) == 19
    assert set(names) == EXPECTED_NAMES
    assert len(STLC_RULES) == 6 and len(MODAL_RULES) == 13
    assert {f: len(rules_for(f)) for f in Flavor} == {
        Flavor.SLC: 8, Flavor.RLC: 9, Flavor.JLC: 11, Flavor.MLC: 9}


def test_catalog_rows():
    row = next(r for r in catalog() if r["name"] == "JL/Dia-com")
    assert row == {"name": "JL/Dia-com", "flavors": ["JLC"],
                   "metavariables": ["t", "u", "u'"], "arity": 3, "oriented": True}


def test_fun_beta_instance():
    lhs, rhs = instantiate("Fun-beta", {"u": UnitTm(), "t": parse_term("x", ["x"])})
    assert lhs == parse_term(r"(\x:1. x) ()")
    assert rhs == UnitTm()


def test_ml_beta_instance():
    ctx = (i,)
    lhs, rhs = instantiate("ML/Dia-beta", {
        "t": parse_term("x", ["x"]),
        "u": parse_term("return y", ["x", "y"]),
    }, ctx)
    assert lhs == parse_term("let y = return x in return y", ["x"])
    assert rhs == parse_term("return x", ["x"])


def test_sl_beta_instance():
    ctx = (Dia(i),)
    lhs, rhs = instantiate("SL/Dia-beta", {
        "t": parse_term("z", ["z"]),
        "u": parse_term("y", ["z", "y"]),
        "u'": parse_term("(y, y)", ["z", "y"]),
    }, ctx, Flavor.SLC)
    assert lhs == parse_term("letmap y = (letmap x = z in x) in (y, y)", ["z"])
    assert rhs == parse_term("letmap x = z in (x, x)", ["z"])


def test_mistyped_binding_rejected():
    with pytest.raises(BindingTypeMismatch):
        instantiate("Prod-eta", {"t": UnitTm()})
    with pytest.raises(BindingTypeMismatch):
        instantiate("JL/Dia-com", {"t": UnitTm(), "u": UnitTm(), "u'": UnitTm()}, (), Flavor.MLC)
    with pytest.raises(BindingTypeMismatch):
        instantiate("Fun-beta", {"u": UnitTm()})


@pytest.mark.parametrize("rule", RULES, ids=lambda r: r.name)
def test_instances_typecheck_and_agree(rule):
    rng = random.Random(RULES.index(rule))
    for fl in sorted(rule.flavors, key=list(Flavor).index):
        for _ in range(10):
            ctx, lhs, rhs = random_instance(rule, fl, rng)
            assert infer(fl, ctx, lhs) == infer(fl, ctx, rhs)
            assert decide_equal(fl, ctx, lhs, rhs)
            if rule.oriented:
                assert rhs in rewrite_step(fl, lhs)


def test_rewrite_examples():
    assert rewrite_step(Flavor.SLC, parse_term(r"(\x:1. x) ()")) == {UnitTm()}
    assert rewrite_step(Flavor.SLC, parse_term("fst ((), ())")) == {UnitTm()}
    t = parse_term("let y = return x in return y", ["x"])
    assert rewrite_step(Flavor.MLC, t) == {parse_term("return x", ["x"])}


def test_rewrite_inside_binders():
    t = parse_term(r"\y:i. (\x:i. x) y")
    assert rewrite_step(Flavor.RLC, t) == {parse_term(r"\y:i. y")}


def test_rewrite_normal_form_has_no_steps():
    assert rewrite_step(Flavor.JLC, parse_term("letmap x = z in x", ["z"])) == set()


def test_rewrite_is_flavor_specific():
    t = parse_term("letmap y = return x in y", ["x"])
    assert rewrite_step(Flavor.RLC, t) == {parse_term("return x", ["x"])}
    t = parse_term("letjoin y = (letjoin x = z in x) in y", ["z"])
    assert rewrite_step(Flavor.JLC, t)
    assert infer(Flavor.JLC, (parse_type("<><><>i"),), t) == Dia(i)


def test_eta_rules_not_oriented():
    assert not any(r.oriented for r in RULES if r.name.endswith("-eta"))
    assert all(r.oriented for r in RULES if not r.name.endswith("-eta"))


def test_prod_eta_is_sound():
    ctx = (Prod(i, i),)
    lhs, rhs = instantiate("Prod-eta", {"t": parse_term("p", ["p"])}, ctx)
    assert decide_equal(Flavor.MLC, ctx, lhs, rhs)
