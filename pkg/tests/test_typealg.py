from __future__ import annotations

import itertools
import random

import pytest

from wo_decider.decider import Decider
from wo_decider.errors import BoundExceededError, LevelError, ResourceLimitError
from wo_decider.evaluator import ef_equivalent_finite
from wo_decider.ordinal import OMEGA, Ordinal, add, mul_omega_left, parse_ordinal
from wo_decider.typealg import ATOM_ID, TypeTable


@pytest.fixture
def table() -> TypeTable:
    return TypeTable()


def o(text: str) -> Ordinal:
    return parse_ordinal(text)


def test_base_types(table: TypeTable) -> None:
    assert len(table.empty(1)) == 0
    assert table.singleton(1).content == frozenset({(ATOM_ID, ATOM_ID)})
    empty_1 = table.empty_id(1)
    assert table.singleton(2).content == frozenset({(empty_1, empty_1)})
    assert table.singleton(0).id == table.empty(0).id == ATOM_ID


def test_two_element_order_at_level_two(table: TypeTable) -> None:
    two = table.type_of_finite(2, 2)
    empty_1, single_1 = table.empty_id(1), table.singleton_id(1)
    assert two.content == frozenset({(empty_1, single_1), (single_1, empty_1)})
    assert two == table.sum(table.singleton(2), table.singleton(2))


def test_lower(table: TypeTable) -> None:
    assert table.lower(table.type_of_finite(5, 3)) == table.type_of_finite_bruteforce(5, 2)
    for k in range(2, 5):
        assert table.lower(table.empty(k)) == table.empty(k - 1)
    assert table.lower(table.singleton(2)) == table.singleton(1)
    with pytest.raises(LevelError):
        table.lower(table.empty(0))


def test_sum_rejects_level_mismatch(table: TypeTable) -> None:
    with pytest.raises(LevelError):
        table.sum(table.singleton(1), table.singleton(2))


def test_sum_identity(table: TypeTable) -> None:
    for k in range(1, 4):
        t = table.type_of_ordinal(o("w + 3"), k)
        assert table.sum(t, table.empty(k)) == t == table.sum(table.empty(k), t)


def test_finite_sums_match_bruteforce(table: TypeTable) -> None:
    for k in range(4):
        for n, m in itertools.product(range(8), repeat=2):
            if n + m > 7:
                continue
            total = table.sum(table.type_of_finite(n, k), table.type_of_finite(m, k))
            assert total == table.type_of_finite_bruteforce(n + m, k)


def test_finite_types_match_bruteforce(table: TypeTable) -> None:
    for k in range(4):
        for n in range(8):
            assert table.type_of_finite(n, k) == table.type_of_finite_bruteforce(n, k)
    assert table.type_of_finite(0, 3) == table.empty(3)


def test_bruteforce_bounds(table: TypeTable) -> None:
    with pytest.raises(BoundExceededError):
        table.type_of_finite_bruteforce(9, 2)
    with pytest.raises(BoundExceededError):
        table.type_of_finite_bruteforce(3, 5)


def test_finite_type_equality_agrees_with_ef_games(table: TypeTable) -> None:
    for k in range(4):
        for n, m in itertools.product(range(8), repeat=2):
            same = table.type_of_finite(n, k) == table.type_of_finite(m, k)
            assert same == ef_equivalent_finite(n, m, k), (n, m, k)


def test_three_and_four_at_level_two(table: TypeTable) -> None:
    same = table.type_of_finite(3, 2) == table.type_of_finite(4, 2)
    assert same == ef_equivalent_finite(3, 4, 2)


def test_omega_mult(table: TypeTable) -> None:
    for k in range(5):
        assert table.omega_mult(table.singleton(k)) == table.type_of_ordinal(OMEGA, k)
        assert table.omega_mult(table.empty(k)) == table.empty(k)
    assert table.omega_mult(table.singleton(1)) == table.singleton(1)


def test_omega_separated_from_finite(table: TypeTable) -> None:
    assert table.type_of_ordinal(OMEGA, 2) != table.type_of_ordinal(o("7"), 2)
    for n in range(1, 8):
        assert table.type_of_ordinal(OMEGA, 2) != table.type_of_finite(n, 2)


def test_type_of_ordinal_consistency(table: TypeTable) -> None:
    for k in range(4):
        assert table.type_of_ordinal(o("5"), k) == table.type_of_finite(5, k)
    assert table.type_of_ordinal(o("w^2"), 2) == table.type_of_ordinal(o("w^2*2"), 2)


def test_absorption(table: TypeTable) -> None:
    for k in range(4):
        omega = table.type_of_ordinal(OMEGA, k)
        for n in range(6):
            assert table.sum(table.type_of_ordinal(Ordinal.from_int(n), k), omega) == omega


def test_iterate_sum_uses_periodicity(table: TypeTable) -> None:
    single = table.singleton(2)
    assert table.iterate_sum(single, 10**12) == table.type_of_finite(5, 2)
    assert table.iterate_sum(single, 0) == table.empty(2)


def _closure_types(table: TypeTable, k: int):
    decider = Decider(table=table)
    return [table.get(entry.type_id) for entry in decider.reachable_closure(k)]


def test_lower_is_a_homomorphism(table: TypeTable) -> None:
    for k in range(2, 4):
        types = _closure_types(table, k)
        for s in types:
            assert table.lower(table.omega_mult(s)) == table.omega_mult(table.lower(s))
            for t in types:
                assert table.lower(table.sum(s, t)) == table.sum(table.lower(s), table.lower(t))


def test_sum_is_associative(table: TypeTable) -> None:
    types = _closure_types(table, 2)
    for s, t, u in itertools.product(types, repeat=3):
        assert table.sum(table.sum(s, t), u) == table.sum(s, table.sum(t, u))
    rng = random.Random(3)
    types = _closure_types(table, 3)
    for _ in range(2000):
        s, t, u = rng.choice(types), rng.choice(types), rng.choice(types)
        assert table.sum(table.sum(s, t), u) == table.sum(s, table.sum(t, u))


def _times_omega_power(gamma: Ordinal, k: int) -> Ordinal:
    for _ in range(k):
        gamma = mul_omega_left(gamma)
    return gamma


def _random_ordinal(rng: random.Random, max_exponent: int, max_coefficient: int, *, positive: bool) -> Ordinal:
    while True:
        terms = tuple(
            (e, rng.randint(1, max_coefficient)) for e in range(max_exponent - 1, -1, -1) if rng.random() < 0.5
        )
        if terms or not positive:
            return Ordinal(terms)


def test_congruent_ordinals_are_equivalent(table: TypeTable) -> None:
    rng = random.Random(99)
    for k in (1, 2, 3):
        for _ in range(20):
            gamma_1 = _random_ordinal(rng, 2, 3, positive=True)
            gamma_2 = _random_ordinal(rng, 2, 3, positive=True)
            rho = _random_ordinal(rng, k, 3, positive=False)
            alpha = add(_times_omega_power(gamma_1, k), rho)
            beta = add(_times_omega_power(gamma_2, k), rho)
            assert table.type_of_ordinal(alpha, k) == table.type_of_ordinal(beta, k), (str(alpha), str(beta), k)


def _build_sample(table: TypeTable) -> None:
    for text in ("1", "5", "w", "w + 2", "w*2", "w^2 + w*3 + 2"):
        table.type_of_ordinal(o(text), 3)


def test_dump_and_digest_are_reproducible() -> None:
    first, second = TypeTable(), TypeTable()
    _build_sample(first)
    _build_sample(second)
    assert first.dump() == second.dump()
    assert first.digest(first.ordinal_id(o("w*2"), 3)) == second.digest(second.ordinal_id(o("w*2"), 3))


def test_dump_matches_golden(golden) -> None:
    table = TypeTable()
    single = table.singleton_id(2)
    table.singleton_id(1)
    table.empty_id(2)
    two = table.sum_id(single, single)
    assert two == table.ordinal_id(o("2"), 2)
    assert table.dump() == golden("type_table_dump.txt").splitlines()


def test_dump_abbreviates_above_level_two() -> None:
    table = TypeTable()
    three = table.singleton_id(3)
    line = table.dump()[three]
    assert line == f"{three} 3 {table.encode_shallow(three)}"
    assert table.digest(table.empty_id(2))[:16] in line


def test_digest_is_independent_of_interning_order() -> None:
    forward, backward = TypeTable(), TypeTable()
    forward.type_of_ordinal(o("5"), 3)
    forward.type_of_ordinal(o("w"), 3)
    backward.type_of_ordinal(o("w"), 3)
    backward.type_of_ordinal(o("5"), 3)
    for text in ("5", "w"):
        assert forward.digest(forward.ordinal_id(o(text), 3)) == backward.digest(backward.ordinal_id(o(text), 3))
        assert forward.encode(forward.ordinal_id(o(text), 2)) == backward.encode(backward.ordinal_id(o(text), 2))


def test_encode_small_types(table: TypeTable) -> None:
    assert table.encode(ATOM_ID) == "0"
    assert table.encode(table.empty_id(1)) == "[]"
    assert table.encode(table.singleton_id(1)) == "[(0,0)]"
    assert table.encode(table.singleton_id(2)) == "[([],[])]"


def test_stats(table: TypeTable) -> None:
    t = table.type_of_ordinal(OMEGA, 2)
    stats = table.stats(t.id)
    assert stats["id"] == t.id
    assert stats["level"] == 2
    assert stats["cardinality"] == len(t)
    assert list(stats["nodes_per_level"]) == [2, 1, 0]
    assert stats["nodes_per_level"][0] == 1


def test_max_types_cap() -> None:
    table = TypeTable(max_types=5)
    with pytest.raises(ResourceLimitError):
        table.type_of_ordinal(o("w^2 + 3"), 4)
