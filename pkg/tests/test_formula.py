import pytest
from hypothesis import given, strategies as st

from topomodels.formula import (
    BOTTOM, And, Atom, Imp, Or, ParseError, atoms, neg, parse, render, substitute,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")


@pytest.mark.parametrize("text, expected", [
    ("p | ~p", Or(p, Imp(p, BOTTOM))),
    ("p -> q -> r", Imp(p, Imp(q, r))),
    ("_|_", BOTTOM),
    ("p & q & r", And(And(p, q), r)),
    ("p | q | r", Or(Or(p, q), r)),
    ("~p & q", And(neg(p), q)),
    ("p & q | r -> p", Imp(Or(And(p, q), r), p)),
    ("~~p", neg(neg(p))),
    ("p <-> q", And(Imp(p, q), Imp(q, p))),
    ("¬p ∨ ¬¬p", Or(neg(p), neg(neg(p)))),
    ("p ∧ q → ⊥", Imp(And(p, q), BOTTOM)),
    ("(q->p)|(p->r)", Or(Imp(q, p), Imp(p, r))),
    ("x_1 | Foo2", Or(Atom("x_1"), Atom("Foo2"))),
])
def test_parse(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize("text", ["", "   ", "p |", "(p", "p q", "p -> ", "1p", "p ! q", ")"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_parse_error_reports_byte_offset_and_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse("¬p ∧ ")
    # "¬" is two bytes and "∧" three in UTF-8
    assert info.value.offset == len("¬p ∧ ".encode())
    assert "atom" in info.value.expected


def test_trailing_garbage_error():
    with pytest.raises(ParseError) as info:
        parse("p q")
    assert info.value.offset == 2


@pytest.mark.parametrize("f, text", [
    (Or(p, Imp(p, BOTTOM)), "p | ~p"),
    (BOTTOM, "_|_"),
    (Imp(And(p, q), r), "p & q -> r"),
    (Imp(Imp(p, q), r), "(p -> q) -> r"),
    (Imp(p, Imp(q, r)), "p -> q -> r"),
    (And(p, Or(q, r)), "p & (q | r)"),
    (Or(p, Or(q, r)), "p | (q | r)"),
    (neg(And(p, q)), "~(p & q)"),
    (neg(BOTTOM), "~_|_"),
])
def test_render(f, text):
    assert render(f) == text


@pytest.mark.parametrize("text, expected", [
    ("p | ~p", ["p"]),
    ("_|_", []),
    ("(q->p)|(p->r)", ["q", "p", "r"]),
])
def test_atoms(text, expected):
    assert atoms(parse(text)) == expected


@pytest.mark.parametrize("schema, binding, expected", [
    ("p|~p", {"p": "q&r"}, "(q&r) | ~(q&r)"),
    ("p->p", {"p": "_|_"}, "_|_ -> _|_"),
    ("(p->q)|(q->p)", {"p": "a", "q": "a"}, "(a->a)|(a->a)"),
    ("p -> q", {"p": "q", "q": "p"}, "q -> p"),
])
def test_substitute(schema, binding, expected):
    binding = {k: parse(v) for k, v in binding.items()}
    assert substitute(parse(schema), binding) == parse(expected)


def test_substitute_unbound_atom():
    with pytest.raises(KeyError, match="q"):
        substitute(parse("p & q"), {"p": p})


names = st.sampled_from(["p", "q", "r", "s", "A1", "x_y"])
formulas = st.recursive(
    st.builds(Atom, names) | st.just(BOTTOM),
    lambda sub: st.builds(And, sub, sub) | st.builds(Or, sub, sub) | st.builds(Imp, sub, sub),
    max_leaves=12,
)


@given(formulas)
def test_round_trip(f):
    assert parse(render(f)) == f


@given(formulas)
def test_render_idempotent(f):
    assert render(parse(render(f))) == render(f)


@given(formulas, st.dictionaries(names, formulas, min_size=6, max_size=6))
def test_substitution_atoms(schema, binding):
    result = substitute(schema, binding)
    allowed = set().union(*(atoms(binding[a]) for a in atoms(schema)))
    assert set(atoms(result)) <= allowed
