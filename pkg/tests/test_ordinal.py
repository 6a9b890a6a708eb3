from __future__ import annotations

import random

import pytest

from wo_decider.errors import OrdinalArithmeticError, OrdinalSyntaxError
from wo_decider.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Cmp,
    Ordinal,
    add,
    compare,
    enumerate_ordinals,
    format_ordinal,
    is_limit,
    mul_omega_left,
    mul_omega_right,
    parse_ordinal,
    split_limit_finite,
    successor,
)


def o(text: str) -> Ordinal:
    return parse_ordinal(text)


def random_ordinal(rng: random.Random, max_exponent: int = 6, max_coefficient: int = 9) -> Ordinal:
    terms = []
    for exponent in range(max_exponent - 1, -1, -1):
        if rng.random() < 0.4:
            terms.append((exponent, rng.randint(1, max_coefficient)))
    return Ordinal(tuple(terms))


def test_parse_examples() -> None:
    assert o("w^2*3 + w + 5").terms == ((2, 3), (1, 1), (0, 5))
    assert o("0") == ZERO
    assert o("ω") == OMEGA


def test_zero_coefficient_rejected() -> None:
    with pytest.raises(OrdinalSyntaxError, match="coefficient must be positive"):
        o("w*0")


def test_non_canonical_order_suggests_canonical_form() -> None:
    with pytest.raises(OrdinalSyntaxError) as excinfo:
        o("w + w^2")
    assert "w^2 + w" in str(excinfo.value)


@pytest.mark.parametrize("text", ["", "w^", "w + ", "x", "w^2*3*4", "1 + 2"])
def test_malformed_ordinals(text: str) -> None:
    with pytest.raises(OrdinalSyntaxError):
        o(text)


def test_invariants_enforced_on_construction() -> None:
    with pytest.raises(OrdinalArithmeticError):
        Ordinal(((1, 1), (2, 1)))
    with pytest.raises(OrdinalArithmeticError):
        Ordinal(((1, 0),))
    with pytest.raises(OrdinalArithmeticError):
        Ordinal.from_int(2**63)


def test_compare_examples() -> None:
    assert compare(OMEGA, OMEGA) is Cmp.EQ
    assert compare(o("w*2 + 1"), o("w^2")) is Cmp.LT
    assert compare(o("w + 3"), o("w + 2")) is Cmp.GT
    assert ZERO < ONE < o("7") < OMEGA


def test_add_examples() -> None:
    assert add(o("w + 2"), o("w*3 + 1")) == o("w*4 + 1")
    assert add(ZERO, o("w + 1")) == o("w + 1")
    assert add(o("w + 1"), ZERO) == o("w + 1")
    assert add(o("w^2 + w"), o("w^2")) == o("w^2*2")
    assert o("3") + OMEGA == OMEGA


def test_mul_omega() -> None:
    assert mul_omega_right(o("w^2*3 + w + 5")) == o("w^3")
    assert mul_omega_right(ONE) == OMEGA
    with pytest.raises(OrdinalArithmeticError):
        mul_omega_right(ZERO)
    assert mul_omega_left(o("w^2*3 + w + 5")) == o("w^3*3 + w^2 + w*5")
    assert mul_omega_left(ONE) == OMEGA
    assert mul_omega_left(ZERO) == ZERO


def test_split_limit_finite_examples() -> None:
    assert split_limit_finite(o("w^2 + w*3 + 2")) == (o("w + 3"), 2)
    assert split_limit_finite(o("7")) == (ZERO, 7)
    assert split_limit_finite(OMEGA) == (ONE, 0)


def test_successor_and_limits() -> None:
    assert successor(OMEGA) == o("w + 1")
    assert is_limit(o("w^2"))
    assert not is_limit(o("w + 1"))
    assert not is_limit(ZERO)


def test_format_is_canonical() -> None:
    assert format_ordinal(Ordinal(((2, 1), (1, 3), (0, 4)))) == "w^2 + w*3 + 4"
    assert str(ZERO) == "0"
    assert str(OMEGA) == "w"


def test_arithmetic_laws_on_random_corpus() -> None:
    rng = random.Random(1234)
    for _ in range(10_000):
        a, b, c = random_ordinal(rng), random_ordinal(rng), random_ordinal(rng)
        assert add(add(a, b), c) == add(a, add(b, c))
        assert compare(add(a, b), a) in (Cmp.EQ, Cmp.GT)
        assert add(a, ONE) == successor(a)
        beta, n = split_limit_finite(a)
        assert add(mul_omega_left(beta), Ordinal.from_int(n)) == a
        if a:
            (exponent, _), = mul_omega_right(a).terms
            assert exponent == a.leading_exponent + 1
        assert parse_ordinal(format_ordinal(a)) == a


def test_enumerate_ordinals_ascending() -> None:
    ordinals = list(enumerate_ordinals(3, 2))
    assert len(ordinals) == 27
    assert ordinals[0] == ZERO
    assert ordinals == sorted(ordinals)
    assert o("w^2*2 + w*2 + 2") in ordinals
