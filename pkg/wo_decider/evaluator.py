"""Model checking of sentences on ordinals below omega^omega.

The engine works on a pointed decomposition of an order: the level-l types
of the open segments between the named points. A quantifier either reuses an
existing point or splits one segment ``S`` along a pair ``(left, right)`` of
``S``; in both cases every segment drops one level. Boolean connectives keep
the level. The finite brute-force evaluator and the finite EF game are
independent oracles for the test suites.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .constants import BRUTEFORCE_MAX_ELEMENTS, BRUTEFORCE_MAX_RANK
from .errors import BoundExceededError, EmptyOrderError, LevelError, UnboundVariableError
from .formula import (
    And,
    Eq,
    Exists,
    FalseConst,
    Forall,
    Formula,
    Iff,
    Implies,
    Lt,
    Not,
    Or,
    TrueConst,
    free_variables,
    quantifier_rank,
    require_sentence,
)
from .ordinal import Ordinal
from .typealg import KType, TypeTable, default_table

Assignment = Tuple[Tuple[str, int], ...]


@dataclass(frozen=True)
class EvalState:
    """Segments ``s_0 .. s_m`` (type ids at ``level``) around points ``1 .. m``.

    ``assignment`` maps formula variables to point indices; several variables
    may share a point.
    """

    level: int
    segments: Tuple[int, ...]
    assignment: Assignment = ()

    def __post_init__(self) -> None:
        if not self.segments:
            raise ValueError("an evaluation state needs at least one segment")
        points = len(self.segments) - 1
        for var, index in self.assignment:
            if not 1 <= index <= points:
                raise ValueError(f"variable {var} points outside 1..{points}")

    @property
    def points(self) -> int:
        return len(self.segments) - 1

    @classmethod
    def of_type(cls, t: KType) -> EvalState:
        return cls(t.level, (t.id,))


@dataclass
class EvalStats:
    evaluations: int = 0
    memo_hits: int = 0
    point_reuses: int = 0
    splits: int = 0
    # Smallest (state level - rank of the subformula) seen; never negative.
    min_level_slack: Optional[int] = None

    def observe_slack(self, slack: int) -> None:
        if self.min_level_slack is None or slack < self.min_level_slack:
            self.min_level_slack = slack


class Evaluator:
    """Memoizing evaluator bound to one :class:`TypeTable`."""

    def __init__(self, table: Optional[TypeTable] = None) -> None:
        self.table = table if table is not None else default_table()
        self.stats = EvalStats()
        self._memo: Dict[tuple, bool] = {}
        self._free: Dict[int, FrozenSet[str]] = {}
        self._rank: Dict[int, int] = {}
        # Caches are keyed by node id() and hold for this sentence only.
        self._current: Optional[Formula] = None

    def clear(self) -> None:
        self._memo.clear()
        self._free.clear()
        self._rank.clear()
        self._current = None

    @property
    def cache_size(self) -> int:
        return len(self._memo)

    def _free_of(self, f: Formula) -> FrozenSet[str]:
        found = self._free.get(id(f))
        if found is None:
            found = free_variables(f)
            self._free[id(f)] = found
        return found

    def _rank_of(self, f: Formula) -> int:
        found = self._rank.get(id(f))
        if found is None:
            found = quantifier_rank(f)
            self._rank[id(f)] = found
        return found

    def eval(self, f: Formula, state: EvalState) -> bool:
        rank = quantifier_rank(f)
        if rank > state.level:
            raise LevelError(f"formula of rank {rank} needs a state of level >= {rank}, got {state.level}")
        assignment = dict(state.assignment)
        missing = free_variables(f) - set(assignment)
        if missing:
            raise UnboundVariableError(f"unassigned free variables: {', '.join(sorted(missing))}")
        if f is not self._current:
            self.clear()
            self._current = f
        return self._eval(f, state.level, state.segments, assignment)

    def _eval(self, f: Formula, level: int, segments: Tuple[int, ...], assignment: Dict[str, int]) -> bool:
        self.stats.evaluations += 1
        if isinstance(f, Lt):
            return assignment[f.left] < assignment[f.right]
        if isinstance(f, Eq):
            return assignment[f.left] == assignment[f.right]
        if isinstance(f, TrueConst):
            return True
        if isinstance(f, FalseConst):
            return False
        if isinstance(f, Not):
            return not self._eval(f.body, level, segments, assignment)
        if isinstance(f, And):
            return self._eval(f.left, level, segments, assignment) and self._eval(
                f.right, level, segments, assignment
            )
        if isinstance(f, Or):
            return self._eval(f.left, level, segments, assignment) or self._eval(
                f.right, level, segments, assignment
            )
        if isinstance(f, Implies):
            return (not self._eval(f.left, level, segments, assignment)) or self._eval(
                f.right, level, segments, assignment
            )
        if isinstance(f, Iff):
            return self._eval(f.left, level, segments, assignment) == self._eval(
                f.right, level, segments, assignment
            )
        if isinstance(f, (Exists, Forall)):
            return self._eval_quantifier(f, level, segments, assignment)
        raise TypeError(f"unknown formula node {type(f).__name__}")

    def _eval_quantifier(
        self, f: Formula, level: int, segments: Tuple[int, ...], assignment: Dict[str, int]
    ) -> bool:
        self.stats.observe_slack(level - self._rank_of(f))
        segments, assignment = self._project(f, level, segments, assignment)
        key = (id(f), level, segments, tuple(sorted(assignment.items())))
        cached = self._memo.get(key)
        if cached is not None:
            self.stats.memo_hits += 1
            return cached

        want = isinstance(f, Exists)
        result = not want
        table = self.table
        lowered = tuple(table.lower_id(s) for s in segments)
        var = f.var
        body = f.body

        for point in range(1, len(segments)):
            self.stats.point_reuses += 1
            inner = dict(assignment)
            inner[var] = point
            if self._eval(body, level - 1, lowered, inner) == want:
                result = want
                break
        else:
            result = self._eval_splits(f, level, segments, lowered, assignment, want)

        self._memo[key] = result
        return result

    def _eval_splits(
        self,
        f: Formula,
        level: int,
        segments: Tuple[int, ...],
        lowered: Tuple[int, ...],
        assignment: Dict[str, int],
        want: bool,
    ) -> bool:
        table = self.table
        for index, segment in enumerate(segments):
            new_point = index + 1
            shifted = {v: (p + 1 if p >= new_point else p) for v, p in assignment.items()}
            shifted[f.var] = new_point
            for left, right in sorted(table.content_of(segment)):
                self.stats.splits += 1
                split = lowered[:index] + (left, right) + lowered[index + 1 :]
                if self._eval(f.body, level - 1, split, shifted) == want:
                    return want
        return not want

    def _project(
        self, f: Formula, level: int, segments: Tuple[int, ...], assignment: Dict[str, int]
    ) -> Tuple[Tuple[int, ...], Dict[str, int]]:
        """Merge away points no free variable of ``f`` refers to."""

        free = self._free_of(f)
        used = {assignment[v] for v in free}
        if len(used) == len(segments) - 1:
            return segments, {v: assignment[v] for v in free}
        table = self.table
        single = table.singleton_id(level)
        merged: List[int] = []
        renumber: Dict[int, int] = {}
        current = segments[0]
        for point in range(1, len(segments)):
            if point in used:
                merged.append(current)
                renumber[point] = len(merged)
                current = segments[point]
            else:
                current = table.sum_id(table.sum_id(current, single), segments[point])
        merged.append(current)
        return tuple(merged), {v: renumber[assignment[v]] for v in free}


_DEFAULT_EVALUATOR: Optional[Evaluator] = None


def default_evaluator() -> Evaluator:
    global _DEFAULT_EVALUATOR
    if _DEFAULT_EVALUATOR is None or _DEFAULT_EVALUATOR.table is not default_table():
        _DEFAULT_EVALUATOR = Evaluator(default_table())
    return _DEFAULT_EVALUATOR


def holds(
    a: Ordinal,
    f: Formula,
    *,
    allow_empty: bool = False,
    evaluator: Optional[Evaluator] = None,
) -> bool:
    """Decide ``a |= f`` for a sentence ``f``."""

    require_sentence(f)
    if a.is_zero and not allow_empty:
        raise EmptyOrderError("ordinal 0 is the empty order; pass allow_empty to evaluate on it")
    engine = evaluator or default_evaluator()
    k = quantifier_rank(f)
    return engine.eval(f, EvalState.of_type(engine.table.type_of_ordinal(a, k)))


def equiv(a: Ordinal, b: Ordinal, k: int, table: Optional[TypeTable] = None) -> bool:
    """``a`` and ``b`` agree on every sentence of rank at most ``k``."""

    table = table if table is not None else default_table()
    return table.ordinal_id(a, k) == table.ordinal_id(b, k)


def _check_bruteforce_bounds(n: int, k: int) -> None:
    if n > BRUTEFORCE_MAX_ELEMENTS or k > BRUTEFORCE_MAX_RANK:
        raise BoundExceededError(
            f"brute force is limited to n <= {BRUTEFORCE_MAX_ELEMENTS} and rank <= {BRUTEFORCE_MAX_RANK}"
        )


def _tarski(f: Formula, n: int, assignment: Dict[str, int]) -> bool:
    if isinstance(f, Lt):
        return assignment[f.left] < assignment[f.right]
    if isinstance(f, Eq):
        return assignment[f.left] == assignment[f.right]
    if isinstance(f, TrueConst):
        return True
    if isinstance(f, FalseConst):
        return False
    if isinstance(f, Not):
        return not _tarski(f.body, n, assignment)
    if isinstance(f, And):
        return _tarski(f.left, n, assignment) and _tarski(f.right, n, assignment)
    if isinstance(f, Or):
        return _tarski(f.left, n, assignment) or _tarski(f.right, n, assignment)
    if isinstance(f, Implies):
        return (not _tarski(f.left, n, assignment)) or _tarski(f.right, n, assignment)
    if isinstance(f, Iff):
        return _tarski(f.left, n, assignment) == _tarski(f.right, n, assignment)
    outcomes = (_tarski(f.body, n, {**assignment, f.var: element}) for element in range(n))
    return any(outcomes) if isinstance(f, Exists) else all(outcomes)


def holds_finite_bruteforce(n: int, f: Formula, assignment: Optional[Mapping[str, int]] = None) -> bool:
    """Tarskian evaluation of ``f`` on the explicit order ``0 < 1 < ... < n-1``."""

    _check_bruteforce_bounds(n, quantifier_rank(f))
    env = dict(assignment or {})
    missing = free_variables(f) - set(env)
    if missing:
        raise UnboundVariableError(f"unassigned free variables: {', '.join(sorted(missing))}")
    return _tarski(f, n, env)


def ef_equivalent_finite(n: int, m: int, k: int) -> bool:
    """Duplicator wins the k-round EF game on the finite orders ``n`` and ``m``."""

    _check_bruteforce_bounds(max(n, m), k)
    memo: Dict[Tuple[Tuple[int, ...], Tuple[int, ...], int], bool] = {}

    def partial_iso(left: Tuple[int, ...], right: Tuple[int, ...]) -> bool:
        for i, j in itertools.combinations(range(len(left)), 2):
            if (left[i] < left[j]) != (right[i] < right[j]) or (left[i] == left[j]) != (right[i] == right[j]):
                return False
        return True

    def duplicator_wins(left: Tuple[int, ...], right: Tuple[int, ...], rounds: int) -> bool:
        if not partial_iso(left, right):
            return False
        if rounds == 0:
            return True
        key = (left, right, rounds)
        if key in memo:
            return memo[key]
        result = all(
            any(duplicator_wins(left + (a,), right + (b,), rounds - 1) for b in range(m)) for a in range(n)
        ) and all(
            any(duplicator_wins(left + (a,), right + (b,), rounds - 1) for a in range(n)) for b in range(m)
        )
        memo[key] = result
        return result

    return duplicator_wins((), (), k)


__all__ = [
    "EvalState",
    "EvalStats",
    "Evaluator",
    "default_evaluator",
    "ef_equivalent_finite",
    "equiv",
    "holds",
    "holds_finite_bruteforce",
]
