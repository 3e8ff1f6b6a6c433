import pytest
from hypothesis import given

from dfml import formula as fm
from dfml.formula import And, Box, Dia, Imp, Or, Sequent, Var, parse_formula, parse_sequent

from conftest import formulas

p1, p2, p3 = Var(1), Var(2), Var(3)


def fully_parenthesized(phi):
    """Independent printer: every compound gets its own parentheses."""
    if isinstance(phi, Var):
        return f"p{phi.index}"
    if isinstance(phi, fm.Top):
        return "top"
    if isinstance(phi, fm.Bot):
        return "bot"
    if isinstance(phi, Box):
        return f"([]{fully_parenthesized(phi.arg)})"
    if isinstance(phi, Dia):
        return f"(<>{fully_parenthesized(phi.arg)})"
    sym = {And: "/\\", Or: "\\/", Imp: "->"}[type(phi)]
    return f"({fully_parenthesized(phi.left)} {sym} {fully_parenthesized(phi.right)})"


def test_atom():
    assert parse_formula("p1") == p1


def test_box_of_implication():
    assert parse_formula("[](p1 -> p2)") == Box(Imp(p1, p2))


def test_precedence_and_over_or():
    assert parse_formula("p1 /\\ p2 \\/ p3") == Or(And(p1, p2), p3)


def test_implication_is_right_associative():
    assert parse_formula("p1 -> p2 -> p3") == Imp(p1, Imp(p2, p3))


def test_conjunction_is_left_associative():
    assert parse_formula("p1 /\\ p2 /\\ p3") == And(And(p1, p2), p3)


def test_unary_binds_tightest():
    assert parse_formula("[]p1 /\\ <>p2") == And(Box(p1), Dia(p2))


def test_whitespace_insensitive():
    assert parse_formula("  [] ( p1->p2 )") == parse_formula("[](p1 -> p2)")


@pytest.mark.parametrize("text", ["p1 /\\", "(p1", "p1 p2", "q1", "p1 & p2", "", "[]"])
def test_syntax_errors(text):
    with pytest.raises(fm.FormulaSyntaxError):
        parse_formula(text)


def test_error_carries_position():
    with pytest.raises(fm.FormulaSyntaxError) as info:
        parse_formula("p1 /\\ $")
    assert info.value.position == 6


def test_sequents():
    assert parse_sequent("bot |- p1") == Sequent(fm.BOT, p1)
    assert parse_sequent("p1 |- p1") == Sequent(p1, p1)
    k = parse_sequent("[](p1->p2) |- []p1 -> []p2")
    assert k == Sequent(Box(Imp(p1, p2)), Imp(Box(p1), Box(p2)))


@pytest.mark.parametrize("text", ["p1", "p1 |- p2 |- p3", "|- p1"])
def test_bad_sequents(text):
    with pytest.raises(fm.FormulaSyntaxError):
        parse_sequent(text)


def test_subformulas():
    assert fm.subformulas(fm.TOP) == {fm.TOP}
    assert fm.subformulas(Imp(p1, p1)) == {Imp(p1, p1), p1}


@given(formulas())
def test_print_parse_round_trip(phi):
    assert parse_formula(fm.to_text(phi)) == phi


@given(formulas())
def test_agrees_with_fully_parenthesized_oracle(phi):
    assert parse_formula(fully_parenthesized(phi)) == phi


@given(formulas())
def test_subformula_count_bounded_by_size(phi):
    assert len(fm.subformulas(phi)) <= fm.size(phi)
    assert phi in fm.subformulas(phi)


@given(formulas(), formulas())
def test_substitution_then_match_recovers_binding(phi, psi):
    pattern = Imp(p1, Box(p2))
    target = fm.substitute(pattern, {1: phi, 2: psi})
    assert fm.match(pattern, target) == {1: phi, 2: psi}
