"""Cantor normal form arithmetic for ordinals below omega^omega.

An ordinal is a tuple of ``(exponent, coefficient)`` terms with strictly
decreasing exponents and positive coefficients; the empty tuple is 0. Python
tuple comparison on the term lists is exactly the ordinal order.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Iterator, List, Tuple

from .constants import NAT_MAX
from .errors import OrdinalArithmeticError, OrdinalSyntaxError

Term = Tuple[int, int]

_TERM_RE = re.compile(r"(?:(?P<nat>\d+)|[wω](?:\s*\^\s*(?P<exp>\d+))?(?:\s*\*\s*(?P<coef>\d+))?)\Z")


class Cmp(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


def _check_nat(value: int, what: str) -> int:
    if value < 0 or value > NAT_MAX:
        raise OrdinalArithmeticError(f"{what} {value} is outside the machine-natural range")
    return value


@dataclass(frozen=True)
class Ordinal:
    terms: Tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        previous = None
        for exponent, coefficient in self.terms:
            _check_nat(exponent, "exponent")
            _check_nat(coefficient, "coefficient")
            if coefficient < 1:
                raise OrdinalArithmeticError("coefficients must be positive")
            if previous is not None and exponent >= previous:
                raise OrdinalArithmeticError("exponents must be strictly decreasing")
            previous = exponent

    @classmethod
    def from_int(cls, n: int) -> Ordinal:
        _check_nat(n, "natural")
        return cls(((0, n),)) if n else cls()

    @classmethod
    def omega_power(cls, exponent: int, coefficient: int = 1) -> Ordinal:
        return cls(((exponent, coefficient),))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __lt__(self, other: Ordinal) -> bool:
        return compare(self, other) is Cmp.LT

    def __le__(self, other: Ordinal) -> bool:
        return compare(self, other) is not Cmp.GT

    def __gt__(self, other: Ordinal) -> bool:
        return compare(self, other) is Cmp.GT

    def __ge__(self, other: Ordinal) -> bool:
        return compare(self, other) is not Cmp.LT

    def __add__(self, other: Ordinal) -> Ordinal:
        return add(self, other)

    def __str__(self) -> str:
        return format_ordinal(self)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0] == 0

    @property
    def leading_exponent(self) -> int:
        if not self.terms:
            raise OrdinalArithmeticError("0 has no leading exponent")
        return self.terms[0][0]

    @property
    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0] == 0:
            return self.terms[-1][1]
        return 0

    def to_int(self) -> int:
        if not self.is_finite:
            raise OrdinalArithmeticError(f"{self} is infinite")
        return self.finite_part


ZERO = Ordinal()
ONE = Ordinal.from_int(1)
OMEGA = Ordinal.omega_power(1)


def compare(a: Ordinal, b: Ordinal) -> Cmp:
    if a.terms == b.terms:
        return Cmp.EQ
    return Cmp.LT if a.terms < b.terms else Cmp.GT


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """``a + b``: terms of ``a`` below the leading exponent of ``b`` are absorbed."""

    if not b.terms:
        return a
    lead_exp, lead_coef = b.terms[0]
    kept: List[Term] = []
    for exponent, coefficient in a.terms:
        if exponent > lead_exp:
            kept.append((exponent, coefficient))
        elif exponent == lead_exp:
            lead_coef = _check_nat(coefficient + lead_coef, "coefficient")
            break
        else:
            break
    return Ordinal((*kept, (lead_exp, lead_coef), *b.terms[1:]))


def mul_omega_right(a: Ordinal) -> Ordinal:
    """``a * w`` for ``a > 0``, which is ``w^(e1+1)``."""

    if not a.terms:
        raise OrdinalArithmeticError("0*w is not accepted; the factor must be positive")
    return Ordinal(((_check_nat(a.terms[0][0] + 1, "exponent"), 1),))


def mul_omega_left(a: Ordinal) -> Ordinal:
    """``w * a``; left multiplication distributes over the CNF terms."""

    return Ordinal(tuple((_check_nat(e + 1, "exponent"), c) for e, c in a.terms))


def split_limit_finite(a: Ordinal) -> Tuple[Ordinal, int]:
    """Return the unique ``(beta, n)`` with ``a = w*beta + n``."""

    n = a.finite_part
    beta = Ordinal(tuple((e - 1, c) for e, c in a.terms if e > 0))
    return beta, n


def successor(a: Ordinal) -> Ordinal:
    return add(a, ONE)


def is_limit(a: Ordinal) -> bool:
    return bool(a.terms) and a.terms[-1][0] > 0


def format_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for exponent, coefficient in a.terms:
        if exponent == 0:
            parts.append(str(coefficient))
            continue
        base = "w" if exponent == 1 else f"w^{exponent}"
        parts.append(base if coefficient == 1 else f"{base}*{coefficient}")
    return " + ".join(parts)


def parse_ordinal(text: str) -> Ordinal:
    """Parse the ``w^e*c + ... + n`` notation; exponents must strictly decrease."""

    stripped = text.strip()
    if not stripped:
        raise OrdinalSyntaxError("Empty ordinal")
    if stripped == "0":
        return ZERO
    terms: List[Term] = []
    for index, raw in enumerate(stripped.split("+")):
        chunk = raw.strip()
        match = _TERM_RE.match(chunk)
        if not chunk or not match:
            raise OrdinalSyntaxError(f"Cannot parse term {index + 1} ({chunk!r}) of {stripped!r}")
        if match.group("nat") is not None:
            exponent, coefficient = 0, int(match.group("nat"))
        else:
            exponent = int(match.group("exp")) if match.group("exp") is not None else 1
            coefficient = int(match.group("coef")) if match.group("coef") is not None else 1
        if coefficient == 0:
            raise OrdinalSyntaxError(f"Term {chunk!r}: coefficient must be positive")
        if exponent > NAT_MAX or coefficient > NAT_MAX:
            raise OrdinalSyntaxError(f"Term {chunk!r} exceeds the machine-natural range")
        terms.append((exponent, coefficient))

    exponents = [e for e, _ in terms]
    if any(left <= right for left, right in zip(exponents, exponents[1:])):
        hint = _canonical_hint(terms)
        raise OrdinalSyntaxError(
            f"Exponents must strictly decrease in {stripped!r}; write the terms in canonical order, e.g. {hint!r}"
        )
    return Ordinal(tuple(terms))


def _canonical_hint(terms: List[Term]) -> str:
    merged: dict = {}
    for exponent, coefficient in terms:
        merged[exponent] = merged.get(exponent, 0) + coefficient
    ordered = tuple(sorted(merged.items(), reverse=True))
    return format_ordinal(Ordinal(ordered))


def enumerate_ordinals(max_exponent: int, max_coefficient: int) -> Iterator[Ordinal]:
    """All ordinals with exponents below ``max_exponent`` and coefficients up to ``max_coefficient``, ascending."""

    exponents = range(max_exponent - 1, -1, -1)
    for coefficients in itertools.product(range(max_coefficient + 1), repeat=max_exponent):
        yield Ordinal(tuple((e, c) for e, c in zip(exponents, coefficients) if c))


__all__ = [
    "Cmp",
    "OMEGA",
    "ONE",
    "Ordinal",
    "ZERO",
    "add",
    "compare",
    "enumerate_ordinals",
    "format_ordinal",
    "is_limit",
    "mul_omega_left",
    "mul_omega_right",
    "parse_ordinal",
    "split_limit_finite",
    "successor",
]
