import pytest
from hypothesis import given, strategies as st

from laxcalc.parse import ParseError, parse_term, parse_type
from laxcalc.syntax import (
    BASE, UNIT, App, Dia, Flavor, FlavorViolation, Fst, Fun, Lam, Let, LetJoin,
    LetMap, Pair, Prod, Return, Snd, UnitTm, Var, alpha_eq, check_flavor,
    is_well_scoped, print_term, show_type, term_depth,
)

i = BASE


def test_alpha_renaming_is_equality():
    assert alpha_eq(parse_term(r"\x. x"), parse_term(r"\y. y"))
    assert not alpha_eq(parse_term(r"\x. \y. x"), parse_term(r"\x. \y. y"))
    assert alpha_eq(parse_term("letmap x = z in x", ["z"]),
                    parse_term("letmap w = z in w", ["z"]))


def test_print_pair_under_context():
    assert print_term(Pair(Var(0), UnitTm()), ["x"]) == "(x, ())"


def test_print_strength_witness():
    t = Lam(i, LetMap(Snd(Var(0)), Pair(Fst(Var(1)), Var(0))))
    assert print_term(t) == r"\x. letmap y = snd x in (fst x, y)"


def test_print_join_witness():
    assert print_term(Lam(Dia(Dia(i)), Let(Var(0), Var(0)))) == r"\x. let y = x in y"


def test_print_respects_hints_and_avoids_capture():
    t = Lam(i, Lam(i, Var(1), "x"), "x")
    assert print_term(t) == r"\x. \x1. x"


def test_print_parenthesizes_binders_in_argument_position():
    t = App(Lam(i, Var(0)), UnitTm())
    assert print_term(t) == r"(\x. x) ()"
    t = LetMap(LetMap(Var(0), Var(0)), Var(0))
    assert print_term(t, ["z"]) == "letmap x = (letmap x = z in x) in x"


@pytest.mark.parametrize("text,shown", [
    ("<>i -> <>i * i", "<>i -> <>i * i"),
    ("(i -> i) -> i", "(i -> i) -> i"),
    ("i * (i * i)", "i * i * i"),
    ("(i * i) * i", "(i * i) * i"),
    ("<>(i -> 1)", "<>(i -> 1)"),
])
def test_show_type(text, shown):
    assert show_type(parse_type(text)) == shown


def test_type_precedence():
    assert parse_type("<>i -> <>i * i") == Fun(Dia(i), Prod(Dia(i), i))
    assert parse_type("i -> i -> i") == Fun(i, Fun(i, i))
    assert parse_type("1") == UNIT


def test_application_associates_left():
    assert parse_term("f x y", ["f", "x", "y"]) == App(App(Var(2), Var(1)), Var(0))
    assert parse_term("fst p q", ["p", "q"]) == App(Fst(Var(1)), Var(0))


@pytest.mark.parametrize("text", [
    r"\x:i*<>i. letmap y = snd x in (fst x, y)",
    r"\x:<><>i. let y = x in y",
    r"\f:i -> <>i. \x:i. letjoin y = return (f x) in y",
    "(fst p, snd p)",
])
def test_annotated_round_trip(text):
    t = parse_term(text, ["p"])
    assert parse_term(print_term(t, ["p"], annotate=True), ["p"]) == t


@pytest.mark.parametrize("text,col", [("let x = in", 9), ("(x", 3), (r"\x", 3), ("x y", 3)])
def test_parse_errors_locate(text, col):
    with pytest.raises(ParseError) as exc:
        parse_term(text, ["x"])
    assert (exc.value.line, exc.value.column) == (1, col)


def test_parse_error_on_bad_type():
    with pytest.raises(ParseError):
        parse_type("i ->")


@pytest.mark.parametrize("flavor,term,ok", [
    (Flavor.SLC, Return(UnitTm()), False),
    (Flavor.RLC, Return(UnitTm()), True),
    (Flavor.MLC, LetMap(Var(0), Var(0)), False),
    (Flavor.JLC, LetJoin(Var(0), Var(0)), True),
    (Flavor.RLC, LetJoin(Var(0), Var(0)), False),
    (Flavor.MLC, Let(Var(0), Var(0)), True),
])
def test_flavor_gate(flavor, term, ok):
    if ok:
        check_flavor(flavor, term)
    else:
        with pytest.raises(FlavorViolation):
            check_flavor(flavor, term)


def test_scope_and_depth():
    t = Lam(i, LetMap(Var(1), Var(1)))
    assert is_well_scoped(t, 1) and not is_well_scoped(t, 0)
    assert term_depth(Var(0)) == 1
    assert term_depth(t) == 3


_names = st.sampled_from(["p", "q", "x", "y"])


@given(_names, _names)
def test_hint_does_not_affect_equality(a, b):
    assert Lam(i, Var(0), a) == Lam(i, Var(0), b)
