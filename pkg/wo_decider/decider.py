"""Decision procedure for the first-order theory of well orders.

A sentence of quantifier rank ``k`` is true in every well order iff it is true
in every ordinal below omega^omega, and the level-k types of those ordinals are
exactly the least set containing the one-point type that is closed under sum
and multiplication by omega. The closure is built breadth first; each entry
remembers the first term over ``1``, ``+`` and ``*w`` that produced it so a
failing entry turns into a concrete counterexample ordinal.
"""

from __future__ import annotations

import contextlib
import enum
import time
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .errors import ResourceLimitError
from .evaluator import EvalState, Evaluator
from .formula import Formula, print_formula, quantifier_rank, require_sentence
from .logging_utils import LOG_LEVEL_DEBUG, LOG_LEVEL_INFO, LOG_LEVEL_WARNING, AppLogger, get_app_logger
from .ordinal import ONE, ZERO, Ordinal, add, mul_omega_right
from .typealg import KType, TypeTable, default_table
from .wo_decider_config import DeciderConfig


# --- Witness terms -----------------------------------------------------------


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Plus:
    left: "WitnessTerm"
    right: "WitnessTerm"


@dataclass(frozen=True)
class TimesOmega:
    body: "WitnessTerm"


WitnessTerm = Union[Zero, One, Plus, TimesOmega]


def eval_term(term: WitnessTerm) -> Ordinal:
    """The ordinal denoted by ``term``."""

    if isinstance(term, Zero):
        return ZERO
    if isinstance(term, One):
        return ONE
    if isinstance(term, Plus):
        return add(eval_term(term.left), eval_term(term.right))
    return mul_omega_right(eval_term(term.body))


def format_term(term: WitnessTerm) -> str:
    if isinstance(term, Zero):
        return "0"
    if isinstance(term, One):
        return "1"
    if isinstance(term, Plus):
        return f"{format_term(term.left)} + {format_term(term.right)}"
    inner = format_term(term.body)
    if isinstance(term.body, Plus):
        inner = f"({inner})"
    return f"{inner}*w"


# --- Results -----------------------------------------------------------------


class Status(enum.Enum):
    VALID = "VALID"
    INVALID = "INVALID"


@dataclass(frozen=True)
class ClosureEntry:
    type_id: int
    term: WitnessTerm
    depth: int

    @property
    def ordinal(self) -> Ordinal:
        return eval_term(self.term)


@dataclass(frozen=True)
class Verdict:
    status: Status
    rank: int
    closure_size: int
    counterexample: Optional[Ordinal] = None
    witness_term: Optional[WitnessTerm] = None

    def __post_init__(self) -> None:
        if self.status is Status.INVALID and self.counterexample is None:
            raise ValueError("an INVALID verdict needs a counterexample")

    @property
    def valid(self) -> bool:
        return self.status is Status.VALID

    def reports(self) -> Tuple[str, str, str]:
        """The three equivalent readings of the verdict."""

        if self.valid:
            return ("WO ⊨ φ", "true in all α<ω^ω", "TI ⊢ φ")
        return ("WO ⊭ φ", f"false in α = {self.counterexample}", "TI ⊬ φ")

    def to_dict(self) -> Dict[str, object]:
        return {
            "status": self.status.value,
            "rank": self.rank,
            "closure_size": self.closure_size,
            "counterexample": None if self.counterexample is None else str(self.counterexample),
        }


# --- Decider -----------------------------------------------------------------


class Decider:
    """Owns a type table, an evaluator and the closures computed so far."""

    def __init__(
        self,
        config: Optional[DeciderConfig] = None,
        *,
        table: Optional[TypeTable] = None,
        logger: Optional[AppLogger] = None,
    ) -> None:
        self.config = config or DeciderConfig()
        self.table = table if table is not None else TypeTable()
        self.evaluator = Evaluator(self.table)
        self._logger = logger
        self._closures: Dict[Tuple[int, bool], List[ClosureEntry]] = {}
        self._layers: Dict[Tuple[int, bool], int] = {}
        self._started: Optional[float] = None

    @property
    def logger(self) -> AppLogger:
        if self._logger is None:
            self._logger = get_app_logger()
        return self._logger

    def _allow_empty(self, allow_empty: Optional[bool]) -> bool:
        return self.config.allow_empty if allow_empty is None else allow_empty

    @contextlib.contextmanager
    def budget(self) -> Iterator[None]:
        """Arm the wall-clock and size caps on the table for one top-level call."""

        if self._started is not None:
            yield
            return
        saved = (self.table.deadline, self.table.max_types)
        self._started = time.monotonic()
        self.table.deadline = self._started + self.config.max_seconds
        if self.table.max_types is None or self.table.max_types > self.config.max_closure:
            self.table.max_types = self.config.max_closure
        try:
            yield
        finally:
            self.table.deadline, self.table.max_types = saved
            self._started = None

    def _elapsed(self) -> float:
        return time.monotonic() - self._started if self._started is not None else 0.0

    def _check_rank(self, k: int) -> None:
        if k > self.config.max_rank:
            raise ResourceLimitError(f"quantifier rank {k} exceeds the configured maximum {self.config.max_rank}")

    def _abort(self, exc: ResourceLimitError, closure_size: int, layers: int) -> ResourceLimitError:
        error = ResourceLimitError(
            exc.reason,
            elapsed_seconds=self._elapsed(),
            closure_size=closure_size,
            layers_completed=layers,
            interned_types=len(self.table),
        )
        self.logger.log(str(error), level=LOG_LEVEL_WARNING, location="closure", include_context=True)
        return error

    def reachable_closure(self, k: int, allow_empty: Optional[bool] = None) -> List[ClosureEntry]:
        """Level-k types of all ordinals in ``[1, w^w)`` (and 0 when allowed), in BFS order."""

        allow_empty = self._allow_empty(allow_empty)
        self._check_rank(k)
        key = (k, allow_empty)
        cached = self._closures.get(key)
        if cached is not None:
            return cached
        with self.budget(), self.logger.context(f"closure-k{k}"):
            entries, layers = self._compute_closure(k, allow_empty)
        self._closures[key] = entries
        self._layers[key] = layers
        return entries

    def closure_layers(self, k: int, allow_empty: Optional[bool] = None) -> int:
        """Number of BFS layers the level-k closure took to saturate."""

        self.reachable_closure(k, allow_empty)
        return self._layers[(k, self._allow_empty(allow_empty))]

    def _compute_closure(self, k: int, allow_empty: bool) -> Tuple[List[ClosureEntry], int]:
        table = self.table
        entries: List[ClosureEntry] = []
        known: Dict[int, ClosureEntry] = {}

        def admit(type_id: int, term: WitnessTerm, depth: int, fresh: List[ClosureEntry]) -> None:
            if type_id not in known:
                entry = ClosureEntry(type_id, term, depth)
                known[type_id] = entry
                entries.append(entry)
                fresh.append(entry)

        layer = 0
        frontier: List[ClosureEntry] = []
        try:
            if allow_empty:
                admit(table.empty_id(k), Zero(), 0, frontier)
            admit(table.singleton_id(k), One(), 0, frontier)
            while frontier:
                layer += 1
                fresh: List[ClosureEntry] = []
                for entry in frontier:
                    if self._started is not None and time.monotonic() > table.deadline:
                        raise ResourceLimitError("wall-clock budget exhausted")
                    if not isinstance(entry.term, Zero):
                        admit(table.omega_mult_id(entry.type_id), TimesOmega(entry.term), layer, fresh)
                    # Snapshot: entries admitted in this layer are combined in the next one.
                    for other in entries[: len(entries) - len(fresh)]:
                        admit(table.sum_id(entry.type_id, other.type_id), Plus(entry.term, other.term), layer, fresh)
                        admit(table.sum_id(other.type_id, entry.type_id), Plus(other.term, entry.term), layer, fresh)
                self.logger.log(
                    f"k={k} layer {layer}: +{len(fresh)} types (closure {len(entries)}, interned {len(table)})",
                    level=LOG_LEVEL_DEBUG,
                    location="closure",
                )
                frontier = fresh
        except ResourceLimitError as exc:
            raise self._abort(exc, len(entries), max(layer - 1, 0)) from exc
        self.logger.log(
            f"closure k={k} allow_empty={allow_empty}: {len(entries)} types in {layer} layers",
            level=LOG_LEVEL_INFO,
            location="closure",
        )
        return entries, layer

    def decide(self, f: Formula, allow_empty: Optional[bool] = None) -> Verdict:
        """VALID iff ``f`` holds in every well order (equivalently, TI proves ``f``)."""

        require_sentence(f)
        allow_empty = self._allow_empty(allow_empty)
        k = quantifier_rank(f)
        self._check_rank(k)
        with self.budget(), self.logger.context("decide"):
            entries = self.reachable_closure(k, allow_empty)
            layers = self._layers[(k, allow_empty)]
            verdict = Verdict(Status.VALID, k, len(entries))
            try:
                for entry in entries:
                    if time.monotonic() > self.table.deadline:
                        raise ResourceLimitError("wall-clock budget exhausted")
                    if not self.evaluator.eval(f, EvalState(k, (entry.type_id,))):
                        verdict = Verdict(Status.INVALID, k, len(entries), entry.ordinal, entry.term)
                        break
            except ResourceLimitError as exc:
                raise self._abort(exc, len(entries), layers) from exc
            self.logger.log(
                f"{verdict.status.value} rank={k} closure={len(entries)} "
                f"counterexample={verdict.counterexample} sentence={print_formula(f)}",
                level=LOG_LEVEL_INFO,
                location="decide",
            )
        return verdict

    def is_wo_type(self, t: KType, allow_empty: Optional[bool] = None) -> bool:
        """Whether ``t`` is the level-k type of some well order (nonempty unless allowed)."""

        entries = self.reachable_closure(t.level, allow_empty)
        return any(entry.type_id == t.id for entry in entries)


_DEFAULT_DECIDER: Optional[Decider] = None


def default_decider() -> Decider:
    """A decider sharing the process-wide default type table."""

    global _DEFAULT_DECIDER
    if _DEFAULT_DECIDER is None or _DEFAULT_DECIDER.table is not default_table():
        _DEFAULT_DECIDER = Decider(table=default_table())
    return _DEFAULT_DECIDER


def reachable_closure(k: int, allow_empty: bool = False) -> List[ClosureEntry]:
    return default_decider().reachable_closure(k, allow_empty)


def decide(f: Formula, allow_empty: bool = False) -> Verdict:
    return default_decider().decide(f, allow_empty)


def is_wo_type(t: KType, allow_empty: bool = False) -> bool:
    return default_decider().is_wo_type(t, allow_empty)


__all__ = [
    "ClosureEntry",
    "Decider",
    "One",
    "Plus",
    "Status",
    "TimesOmega",
    "Verdict",
    "WitnessTerm",
    "Zero",
    "decide",
    "default_decider",
    "eval_term",
    "format_term",
    "is_wo_type",
    "reachable_closure",
]
