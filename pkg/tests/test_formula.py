from __future__ import annotations

import random

import pytest

from wo_decider.errors import FormulaSyntaxError, UnboundVariableError
from wo_decider.formula import (
    FALSE,
    TRUE,
    And,
    AtLeast,
    Below,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Interval,
    Lt,
    Not,
    Or,
    Pred,
    bound_variables,
    fold_constants,
    free_variables,
    fresh_variable,
    parse_formula,
    print_formula,
    quantifier_rank,
    relativize,
    relativized_rank,
    rename_bound,
    substitute,
)

VARS = ("x", "y", "z", "u")


def random_formula(rng: random.Random, depth: int) -> Formula:
    if depth == 0 or rng.random() < 0.25:
        kind = rng.randrange(4)
        if kind == 0:
            return Lt(rng.choice(VARS), rng.choice(VARS))
        if kind == 1:
            return Eq(rng.choice(VARS), rng.choice(VARS))
        return TRUE if kind == 2 else FALSE
    kind = rng.randrange(7)
    if kind == 0:
        return Not(random_formula(rng, depth - 1))
    if kind <= 4:
        node = (And, Or, Implies, Iff)[kind - 1]
        return node(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    quantifier = Forall if kind == 5 else Exists
    return quantifier(rng.choice(VARS), random_formula(rng, depth - 1))


def test_parse_quantifier_chain() -> None:
    assert parse_formula("forall x exists y (x < y)") == Forall("x", Exists("y", Lt("x", "y")))


def test_and_binds_tighter_than_implication() -> None:
    assert parse_formula("~(a = b) & a < b") == And(Not(Eq("a", "b")), Lt("a", "b"))
    assert parse_formula("a < b & b < c -> a < c") == Implies(And(Lt("a", "b"), Lt("b", "c")), Lt("a", "c"))


def test_implication_is_right_associative() -> None:
    assert parse_formula("true -> false -> true") == Implies(TRUE, Implies(FALSE, TRUE))


def test_leq_desugars() -> None:
    assert parse_formula("x <= y") == Or(Lt("x", "y"), Eq("x", "y"))


def test_unicode_aliases() -> None:
    assert parse_formula("∀x ∃y (x < y ∧ ¬(x = y))") == Forall(
        "x", Exists("y", And(Lt("x", "y"), Not(Eq("x", "y"))))
    )


def test_unbalanced_parenthesis_reports_end_of_input() -> None:
    text = "forall x ("
    with pytest.raises(FormulaSyntaxError) as excinfo:
        parse_formula(text)
    assert excinfo.value.position == len(text)
    assert "end of input" in str(excinfo.value)


def test_unexpected_character_position() -> None:
    with pytest.raises(FormulaSyntaxError) as excinfo:
        parse_formula("x < y $ z")
    assert excinfo.value.position == 6


def test_sentence_flag() -> None:
    with pytest.raises(UnboundVariableError):
        parse_formula("exists y (x < y)", require_sentence_flag=True)
    assert parse_formula("exists y (y < y)", require_sentence_flag=True) == Exists("y", Lt("y", "y"))


@pytest.mark.parametrize(
    ("formula", "text"),
    [
        (Forall("x", Exists("y", Lt("x", "y"))), "forall x exists y (x < y)"),
        (Eq("a", "a"), "a = a"),
        (Implies(TRUE, FALSE), "true -> false"),
    ],
)
def test_print_examples(formula: Formula, text: str) -> None:
    assert print_formula(formula) == text


@pytest.mark.parametrize(
    ("formula", "text"),
    [
        (Implies(Exists("x", Lt("x", "x")), FALSE), "((exists x (x < x)) -> false)"),
        (And(Forall("x", Eq("x", "x")), Not(Exists("y", TRUE))), "((forall x (x = x)) & ~(exists y (true)))"),
        (Forall("x", Or(Lt("x", "x"), FALSE)), "forall x ((x < x | false))"),
    ],
)
def test_print_full_parens_brackets_quantified_operands(formula: Formula, text: str) -> None:
    assert print_formula(formula, full_parens=True) == text
    assert parse_formula(text) == formula


def test_random_round_trip() -> None:
    rng = random.Random(20240611)
    for _ in range(10_000):
        formula = random_formula(rng, rng.randrange(9))
        assert parse_formula(print_formula(formula)) == formula
        assert parse_formula(print_formula(formula, full_parens=True)) == formula


def test_quantifier_rank() -> None:
    assert quantifier_rank(Lt("x", "y")) == 0
    assert quantifier_rank(Forall("x", Exists("y", Lt("x", "y")))) == 2
    mixed = And(Exists("x", Lt("x", "x")), Forall("y", Exists("z", Lt("y", "z"))))
    assert quantifier_rank(mixed) == 2


def test_free_variables() -> None:
    assert free_variables(Lt("x", "y")) == {"x", "y"}
    assert free_variables(Exists("y", Lt("x", "y"))) == {"x"}
    assert free_variables(Forall("x", Exists("y", Lt("x", "y")))) == frozenset()


def test_relativize_examples() -> None:
    assert relativize(Exists("y", Lt("y", "y")), Below("x")) == Exists("y", And(Lt("y", "x"), Lt("y", "y")))
    assert relativize(Forall("y", TRUE), AtLeast("x")) == Forall(
        "y", Implies(Or(Eq("x", "y"), Lt("x", "y")), TRUE)
    )


def test_relativize_renames_clashing_bound_variable() -> None:
    result = relativize(Exists("x", Lt("x", "x")), Below("x"))
    assert result == Exists("x1", And(Lt("x1", "x"), Lt("x1", "x1")))


def test_relativize_interval() -> None:
    result = relativize(Exists("v", TRUE), Interval("a", "b"))
    assert result == Exists("v", And(And(Or(Eq("a", "v"), Lt("a", "v")), Lt("v", "b")), TRUE))


def test_relativize_below_keeps_rank_and_adds_guard_variable() -> None:
    rng = random.Random(7)
    for _ in range(500):
        formula = random_formula(rng, 6)
        result = relativize(formula, Below("g"))
        assert quantifier_rank(result) == quantifier_rank(formula)
        if quantifier_rank(formula):
            assert free_variables(result) == free_variables(formula) | {"g"}


def test_relativized_rank_matches_predicate_guard() -> None:
    guard = Pred(Exists("w", Lt("w", "h")), "h")
    rng = random.Random(11)
    for _ in range(300):
        formula = random_formula(rng, 5)
        assert quantifier_rank(relativize(formula, guard)) == relativized_rank(formula, guard)


def test_fresh_variable_suffixes() -> None:
    assert fresh_variable("x", {"x"}) == "x1"
    assert fresh_variable("x1", {"x", "x1"}) == "x2"


def test_rename_bound_and_substitute_avoid_capture() -> None:
    formula = Exists("y", Lt("x", "y"))
    assert rename_bound(formula, {"y"}) == Exists("y1", Lt("x", "y1"))
    assert substitute(formula, "x", "y") == Exists("y1", Lt("y", "y1"))
    assert "y" not in bound_variables(substitute(formula, "x", "y"))


def test_fold_constants_keeps_quantifiers() -> None:
    assert fold_constants(And(TRUE, Lt("x", "y"))) == Lt("x", "y")
    assert fold_constants(Implies(Lt("x", "y"), FALSE)) == Not(Lt("x", "y"))
    assert fold_constants(Iff(TRUE, FALSE)) == FALSE
    assert fold_constants(Exists("x", Or(TRUE, Lt("x", "x")))) == Exists("x", TRUE)
