"""The k-type algebra of linear orders.

A level-k type is the canonical object for the rank-k elementary equivalence
class of a linear order ``L``::

    type_0(L) = the atom
    type_k(L) = { (type_{k-1}(L_{<a}), type_{k-1}(L_{>a})) : a in L }

Types are hash-consed in a :class:`TypeTable`: the content of a type is a
frozenset of ``(left_id, right_id)`` pairs, equal content always receives the
same id, and every operation (sum, multiplication by omega, lowering) is
memoized on ids. Shared sub-types keep the structures DAG shaped.

A table is confined to one thread of execution; ids are handed out in
interning order, so the same sequence of calls yields the same ids.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .constants import BRUTEFORCE_MAX_ELEMENTS, BRUTEFORCE_MAX_RANK
from .errors import BoundExceededError, LevelError, ResourceLimitError
from .ordinal import Ordinal

Pair = Tuple[int, int]
Content = FrozenSet[Pair]

ATOM_ID = 0
ATOM_ENCODING = "0"
DIGEST_DISPLAY_CHARS = 16
FULL_ENCODING_MAX_LEVEL = 2
ENCODING_UTF8 = "utf-8"


@dataclass(frozen=True)
class KType:
    """Handle on an interned type; equality is id equality."""

    id: int
    level: int
    content: Content = field(compare=False, repr=False)

    @property
    def is_atom(self) -> bool:
        return self.level == 0

    def __len__(self) -> int:
        return len(self.content)


class TypeTable:
    """Interner and operation caches for k-types.

    ``max_types`` caps the number of interned types and ``deadline`` (a
    ``time.monotonic`` value) bounds the wall clock; crossing either raises
    :class:`ResourceLimitError`.
    """

    def __init__(self, *, max_types: Optional[int] = None) -> None:
        self.max_types = max_types
        self.deadline: Optional[float] = None
        self._by_key: Dict[Tuple[int, Content], int] = {}
        self._levels: List[int] = []
        self._contents: List[Content] = []
        self._lower: Dict[int, int] = {}
        self._sum: Dict[Pair, int] = {}
        self._omega: Dict[int, int] = {}
        self._empty: Dict[int, int] = {}
        self._singleton: Dict[int, int] = {}
        self._power: Dict[Pair, int] = {}
        self._ordinal: Dict[Tuple[Tuple[Pair, ...], int], int] = {}
        self._digest: Dict[int, str] = {}
        self._encoding: Dict[int, str] = {}
        self._bruteforce: Dict[Tuple[Tuple[int, ...], int], int] = {}
        atom = self._intern(0, frozenset())
        assert atom == ATOM_ID

    def __len__(self) -> int:
        return len(self._levels)

    # --- interning ------------------------------------------------------

    def _intern(self, level: int, content: Content) -> int:
        key = (level, content)
        found = self._by_key.get(key)
        if found is not None:
            return found
        if self.max_types is not None and len(self._levels) >= self.max_types:
            raise ResourceLimitError(
                f"type table reached {self.max_types} interned types",
                interned_types=len(self._levels),
            )
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimitError("wall-clock budget exhausted", interned_types=len(self._levels))
        new_id = len(self._levels)
        self._levels.append(level)
        self._contents.append(content)
        self._by_key[key] = new_id
        return new_id

    def intern(self, level: int, pairs) -> KType:
        """Intern a level-``level`` type from ``(left, right)`` pairs of ids or KTypes."""

        if level < 0:
            raise LevelError("levels are natural numbers")
        if level == 0:
            return self.get(ATOM_ID)
        content = frozenset((_as_id(l), _as_id(r)) for l, r in pairs)
        for left, right in content:
            if self._levels[left] != level - 1 or self._levels[right] != level - 1:
                raise LevelError(f"pairs of a level-{level} type must have level {level - 1}")
        return self.get(self._intern(level, content))

    def get(self, type_id: int) -> KType:
        return KType(type_id, self._levels[type_id], self._contents[type_id])

    def level_of(self, type_id: int) -> int:
        return self._levels[type_id]

    def content_of(self, type_id: int) -> Content:
        return self._contents[type_id]

    # --- base cases -----------------------------------------------------

    def empty_id(self, level: int) -> int:
        if level == 0:
            return ATOM_ID
        found = self._empty.get(level)
        if found is None:
            found = self._intern(level, frozenset())
            self._empty[level] = found
        return found

    def singleton_id(self, level: int) -> int:
        if level == 0:
            return ATOM_ID
        found = self._singleton.get(level)
        if found is None:
            below = self.empty_id(level - 1)
            found = self._intern(level, frozenset({(below, below)}))
            self._singleton[level] = found
        return found

    # --- operations on ids ----------------------------------------------

    def lower_id(self, type_id: int) -> int:
        level = self._levels[type_id]
        if level == 0:
            raise LevelError("cannot lower a level-0 type")
        if level == 1:
            return ATOM_ID
        found = self._lower.get(type_id)
        if found is None:
            content = frozenset(
                (self.lower_id(left), self.lower_id(right)) for left, right in self._contents[type_id]
            )
            found = self._intern(level - 1, content)
            self._lower[type_id] = found
        return found

    def sum_id(self, left_id: int, right_id: int) -> int:
        level = self._levels[left_id]
        if level != self._levels[right_id]:
            raise LevelError(f"cannot add a level-{level} type to a level-{self._levels[right_id]} type")
        if level == 0:
            return ATOM_ID
        if not self._contents[right_id]:
            return left_id
        if not self._contents[left_id]:
            return right_id
        key = (left_id, right_id)
        found = self._sum.get(key)
        if found is None:
            left_lower = self.lower_id(left_id)
            right_lower = self.lower_id(right_id)
            pairs: Set[Pair] = set()
            for l, r in self._contents[left_id]:
                pairs.add((l, self.sum_id(r, right_lower)))
            for l, r in self._contents[right_id]:
                pairs.add((self.sum_id(left_lower, l), r))
            found = self._intern(level, frozenset(pairs))
            self._sum[key] = found
        return found

    def omega_mult_id(self, type_id: int) -> int:
        level = self._levels[type_id]
        if level == 0:
            return ATOM_ID
        if not self._contents[type_id]:
            return type_id
        found = self._omega.get(type_id)
        if found is None:
            lowered = self.lower_id(type_id)
            prefixes = self._prefix_orbit(lowered)
            tail = self.omega_mult_id(lowered)
            pairs: Set[Pair] = set()
            for prefix in prefixes:
                for l, r in self._contents[type_id]:
                    pairs.add((self.sum_id(prefix, l), self.sum_id(r, tail)))
            found = self._intern(level, frozenset(pairs))
            self._omega[type_id] = found
        return found

    def _prefix_orbit(self, type_id: int) -> List[int]:
        """Types of ``L*0, L*1, L*2, ...`` up to the first repetition."""

        current = self.empty_id(self._levels[type_id])
        seen: Set[int] = set()
        orbit: List[int] = []
        while current not in seen:
            seen.add(current)
            orbit.append(current)
            current = self.sum_id(current, type_id)
        return orbit

    def iterate_sum_id(self, type_id: int, times: int) -> int:
        """The ``times``-fold sum of ``type_id``, using eventual periodicity for large counts."""

        if times < 0:
            raise ValueError("repetition count must be natural")
        sequence: List[int] = []
        index_of: Dict[int, int] = {}
        current = self.empty_id(self._levels[type_id])
        while current not in index_of:
            if len(sequence) == times:
                return current
            index_of[current] = len(sequence)
            sequence.append(current)
            current = self.sum_id(current, type_id)
        start = index_of[current]
        if times < len(sequence):
            return sequence[times]
        period = len(sequence) - start
        return sequence[start + (times - start) % period]

    def omega_power_id(self, exponent: int, level: int) -> int:
        key = (exponent, level)
        found = self._power.get(key)
        if found is None:
            found = self.singleton_id(level) if exponent == 0 else self.omega_mult_id(self.omega_power_id(exponent - 1, level))
            self._power[key] = found
        return found

    def ordinal_id(self, ordinal: Ordinal, level: int) -> int:
        key = (ordinal.terms, level)
        found = self._ordinal.get(key)
        if found is None:
            found = self.empty_id(level)
            for exponent, coefficient in reversed(ordinal.terms):
                block = self.iterate_sum_id(self.omega_power_id(exponent, level), coefficient)
                found = self.sum_id(block, found)
            self._ordinal[key] = found
        return found

    def bruteforce_id(self, points: Tuple[int, ...], level: int) -> int:
        """Expand the defining recursion on the explicit order ``points``."""

        if level == 0:
            return ATOM_ID
        key = (points, level)
        found = self._bruteforce.get(key)
        if found is None:
            content = frozenset(
                (self.bruteforce_id(points[:i], level - 1), self.bruteforce_id(points[i + 1 :], level - 1))
                for i in range(len(points))
            )
            found = self._intern(level, content)
            self._bruteforce[key] = found
        return found

    # --- canonical encodings --------------------------------------------

    def digest(self, type_id: int) -> str:
        """Content digest: sha256 over the sorted child digests."""

        found = self._digest.get(type_id)
        if found is None:
            level = self._levels[type_id]
            if level == 0:
                payload = ATOM_ENCODING
            else:
                members = sorted(
                    f"({self.digest(l)},{self.digest(r)})" for l, r in self._contents[type_id]
                )
                payload = f"L{level}:{{{','.join(members)}}}"
            found = hashlib.sha256(payload.encode(ENCODING_UTF8)).hexdigest()
            self._digest[type_id] = found
        return found

    def encode(self, type_id: int) -> str:
        """Fully expanded encoding; grows fast, meant for low levels."""

        found = self._encoding.get(type_id)
        if found is None:
            if self._levels[type_id] == 0:
                found = ATOM_ENCODING
            else:
                members = sorted({f"({self.encode(l)},{self.encode(r)})" for l, r in self._contents[type_id]})
                found = f"[{','.join(members)}]"
            self._encoding[type_id] = found
        return found

    def encode_shallow(self, type_id: int) -> str:
        if self._levels[type_id] == 0:
            return ATOM_ENCODING
        short = DIGEST_DISPLAY_CHARS
        members = sorted(
            f"({self.digest(l)[:short]},{self.digest(r)[:short]})" for l, r in self._contents[type_id]
        )
        return f"{{{','.join(members)}}}"

    def dump(self) -> List[str]:
        """One ``id level enc`` line per interned type.

        Up to level 2 ``enc`` is the full :meth:`encode` string. Higher levels
        print :meth:`encode_shallow`, whose members are digest prefixes.
        """

        return [f"{i} {self._levels[i]} {self._dump_encoding(i)}" for i in range(len(self._levels))]

    def _dump_encoding(self, type_id: int) -> str:
        if self._levels[type_id] <= FULL_ENCODING_MAX_LEVEL:
            return self.encode(type_id)
        return self.encode_shallow(type_id)

    def stats(self, type_id: int) -> Dict[str, object]:
        """Cardinality and reachable sub-type counts per level."""

        per_level: Dict[int, int] = {}
        seen: Set[int] = set()
        stack = [type_id]
        while stack:
            current = stack.pop()
            if current in seen:
                continue
            seen.add(current)
            level = self._levels[current]
            per_level[level] = per_level.get(level, 0) + 1
            for left, right in self._contents[current]:
                stack.extend((left, right))
        return {
            "id": type_id,
            "level": self._levels[type_id],
            "digest": self.digest(type_id),
            "cardinality": len(self._contents[type_id]),
            "nodes_per_level": {level: per_level[level] for level in sorted(per_level, reverse=True)},
            "reachable_nodes": len(seen),
            "interned_total": len(self._levels),
        }

    # --- KType-level API ------------------------------------------------

    def empty(self, level: int) -> KType:
        return self.get(self.empty_id(level))

    def singleton(self, level: int) -> KType:
        return self.get(self.singleton_id(level))

    def lower(self, t: KType) -> KType:
        return self.get(self.lower_id(t.id))

    def sum(self, s: KType, t: KType) -> KType:
        return self.get(self.sum_id(s.id, t.id))

    def omega_mult(self, s: KType) -> KType:
        return self.get(self.omega_mult_id(s.id))

    def iterate_sum(self, t: KType, times: int) -> KType:
        return self.get(self.iterate_sum_id(t.id, times))

    def type_of_finite(self, n: int, level: int) -> KType:
        return self.get(self.iterate_sum_id(self.singleton_id(level), n))

    def type_of_finite_bruteforce(self, n: int, level: int) -> KType:
        if n > BRUTEFORCE_MAX_ELEMENTS or level > BRUTEFORCE_MAX_RANK:
            raise BoundExceededError(
                f"brute-force types need n <= {BRUTEFORCE_MAX_ELEMENTS} and k <= {BRUTEFORCE_MAX_RANK}"
            )
        return self.get(self.bruteforce_id(tuple(range(n)), level))

    def type_of_ordinal(self, ordinal: Ordinal, level: int) -> KType:
        return self.get(self.ordinal_id(ordinal, level))


def _as_id(value) -> int:
    return value.id if isinstance(value, KType) else int(value)


_DEFAULT_TABLE: Optional[TypeTable] = None


def default_table() -> TypeTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = TypeTable()
    return _DEFAULT_TABLE


def _table(table: Optional[TypeTable]) -> TypeTable:
    return table if table is not None else default_table()


def type_empty(k: int, table: Optional[TypeTable] = None) -> KType:
    return _table(table).empty(k)


def type_singleton(k: int, table: Optional[TypeTable] = None) -> KType:
    return _table(table).singleton(k)


def lower(t: KType, table: Optional[TypeTable] = None) -> KType:
    return _table(table).lower(t)


def sum_types(s: KType, t: KType, table: Optional[TypeTable] = None) -> KType:
    return _table(table).sum(s, t)


def omega_mult(s: KType, table: Optional[TypeTable] = None) -> KType:
    return _table(table).omega_mult(s)


def type_of_finite(n: int, k: int, table: Optional[TypeTable] = None) -> KType:
    return _table(table).type_of_finite(n, k)


def type_of_finite_bruteforce(n: int, k: int, table: Optional[TypeTable] = None) -> KType:
    return _table(table).type_of_finite_bruteforce(n, k)


def type_of_ordinal(a: Ordinal, k: int, table: Optional[TypeTable] = None) -> KType:
    return _table(table).type_of_ordinal(a, k)


__all__ = [
    "ATOM_ID",
    "KType",
    "TypeTable",
    "default_table",
    "lower",
    "omega_mult",
    "sum_types",
    "type_empty",
    "type_of_finite",
    "type_of_finite_bruteforce",
    "type_of_ordinal",
    "type_singleton",
]
