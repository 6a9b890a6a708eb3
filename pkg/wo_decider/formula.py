"""First-order formulas over the single binary relation ``<``.

The surface syntax is ASCII (``forall``, ``exists``, ``~``, ``&``, ``|``,
``->``, ``<->``, ``<``, ``=``, ``<=``); the usual Unicode symbols are accepted
as input aliases. ``a <= b`` is sugar for ``(a < b | a = b)`` so the
signature stays exactly ``{<}``.

Precedence, loosest first: ``<->`` (left associative), ``->`` (right
associative), ``|``, ``&``, ``~``. A quantifier body extends as far right as
possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple, Union

from .errors import FormulaSyntaxError, UnboundVariableError

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"forall", "exists", "true", "false"})
UNICODE_ALIASES = {
    "∀": "forall",
    "∃": "exists",
    "¬": "~",
    "∧": "&",
    "∨": "|",
    "→": "->",
    "↔": "<->",
    "≤": "<=",
    "⊤": "true",
    "⊥": "false",
}
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op><->|->|<=|[()~&|<=])|(?P<uni>[∀∃¬∧∨→↔≤⊤⊥]))"
)
_TRAILING_DIGITS = re.compile(r"\d+\Z")


@dataclass(frozen=True)
class Formula:
    """Base class of all formula nodes. Instances are immutable."""

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Lt(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Eq(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class TrueConst(Formula):
    pass


@dataclass(frozen=True)
class FalseConst(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


TRUE = TrueConst()
FALSE = FalseConst()

Atom = Union[Lt, Eq]
Binary = Union[And, Or, Implies, Iff]
Quantifier = Union[Forall, Exists]
_BINARY_TYPES = (And, Or, Implies, Iff)
_QUANTIFIER_TYPES = (Forall, Exists)
_ATOM_TYPES = (Lt, Eq)


# --- Guards for relativization ---------------------------------------------


@dataclass(frozen=True)
class Below:
    """The open initial segment ``(-inf, var)``."""

    var: str


@dataclass(frozen=True)
class AtLeast:
    """The final segment ``[var, inf)``."""

    var: str


@dataclass(frozen=True)
class Interval:
    """The half-open interval ``[low, high)``."""

    low: str
    high: str


@dataclass(frozen=True)
class Pred:
    """A definable set ``{v : formula[hole := v]}``."""

    formula: Formula
    hole: str


Guard = Union[Below, AtLeast, Interval, Pred]


# --- Builders ----------------------------------------------------------------


def leq(left: str, right: str) -> Formula:
    """``left <= right`` spelled in the pure signature."""

    return Or(Lt(left, right), Eq(left, right))


def conj(*parts: Formula) -> Formula:
    if not parts:
        return TRUE
    result = parts[0]
    for part in parts[1:]:
        result = And(result, part)
    return result


def disj(*parts: Formula) -> Formula:
    if not parts:
        return FALSE
    result = parts[0]
    for part in parts[1:]:
        result = Or(result, part)
    return result


def children(f: Formula) -> Tuple[Formula, ...]:
    if isinstance(f, _BINARY_TYPES):
        return (f.left, f.right)
    if isinstance(f, (Not,) + _QUANTIFIER_TYPES):
        return (f.body,)
    return ()


# --- Structural metadata -----------------------------------------------------


def quantifier_rank(f: Formula) -> int:
    if isinstance(f, _QUANTIFIER_TYPES):
        return 1 + quantifier_rank(f.body)
    kids = children(f)
    if not kids:
        return 0
    return max(quantifier_rank(kid) for kid in kids)


def free_variables(f: Formula) -> FrozenSet[str]:
    if isinstance(f, _ATOM_TYPES):
        return frozenset((f.left, f.right))
    if isinstance(f, _QUANTIFIER_TYPES):
        return free_variables(f.body) - {f.var}
    result: Set[str] = set()
    for kid in children(f):
        result |= free_variables(kid)
    return frozenset(result)


def bound_variables(f: Formula) -> FrozenSet[str]:
    result: Set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, _QUANTIFIER_TYPES):
            result.add(node.var)
        stack.extend(children(node))
    return frozenset(result)


def all_variables(f: Formula) -> FrozenSet[str]:
    result: Set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, _ATOM_TYPES):
            result.update((node.left, node.right))
        elif isinstance(node, _QUANTIFIER_TYPES):
            result.add(node.var)
        stack.extend(children(node))
    return frozenset(result)


def require_sentence(f: Formula) -> None:
    free = free_variables(f)
    if free:
        raise UnboundVariableError(f"Not a sentence; free variables: {', '.join(sorted(free))}")


# --- Renaming and substitution -----------------------------------------------


def fresh_variable(base: str, taken: Iterable[str]) -> str:
    """Return ``base`` with the smallest numeric suffix not in ``taken``."""

    taken_set = set(taken)
    stem = _TRAILING_DIGITS.sub("", base) or "v"
    index = 1
    while f"{stem}{index}" in taken_set:
        index += 1
    return f"{stem}{index}"


def _map_variables(f: Formula, mapping: Dict[str, str], avoid: FrozenSet[str], taken: Set[str]) -> Formula:
    if isinstance(f, _ATOM_TYPES):
        return type(f)(mapping.get(f.left, f.left), mapping.get(f.right, f.right))
    if isinstance(f, _QUANTIFIER_TYPES):
        var = f.var
        inner = dict(mapping)
        if var in avoid:
            new_var = fresh_variable(var, taken)
            taken.add(new_var)
            inner[var] = new_var
            var = new_var
        else:
            inner.pop(var, None)
        return type(f)(var, _map_variables(f.body, inner, avoid, taken))
    if isinstance(f, Not):
        return Not(_map_variables(f.body, mapping, avoid, taken))
    if isinstance(f, _BINARY_TYPES):
        return type(f)(
            _map_variables(f.left, mapping, avoid, taken),
            _map_variables(f.right, mapping, avoid, taken),
        )
    return f


def rename_bound(f: Formula, avoid: Iterable[str]) -> Formula:
    """Rename every bound variable of ``f`` that occurs in ``avoid``.

    New names come from :func:`fresh_variable`, so the result is
    reproducible. Free variables are left alone.
    """

    avoid_set = frozenset(avoid)
    if not (bound_variables(f) & avoid_set):
        return f
    taken = set(all_variables(f)) | set(avoid_set)
    return _map_variables(f, {}, avoid_set, taken)


def substitute(f: Formula, var: str, replacement: str) -> Formula:
    """Replace the free occurrences of ``var`` by ``replacement``, avoiding capture."""

    if var == replacement or var not in free_variables(f):
        return f
    safe = rename_bound(f, {replacement})
    return _map_variables(safe, {var: replacement}, frozenset(), set())


def fold_constants(f: Formula) -> Formula:
    """Simplify connectives applied to ``true``/``false``; nothing else."""

    if isinstance(f, Not):
        body = fold_constants(f.body)
        if isinstance(body, TrueConst):
            return FALSE
        if isinstance(body, FalseConst):
            return TRUE
        return Not(body)
    if isinstance(f, _QUANTIFIER_TYPES):
        body = fold_constants(f.body)
        # Constant bodies are not folded through quantifiers: the empty order
        # makes "exists x true" false.
        return type(f)(f.var, body)
    if not isinstance(f, _BINARY_TYPES):
        return f
    left = fold_constants(f.left)
    right = fold_constants(f.right)
    consts = (TrueConst, FalseConst)
    if isinstance(f, And):
        if isinstance(left, FalseConst) or isinstance(right, FalseConst):
            return FALSE
        if isinstance(left, TrueConst):
            return right
        if isinstance(right, TrueConst):
            return left
        return And(left, right)
    if isinstance(f, Or):
        if isinstance(left, TrueConst) or isinstance(right, TrueConst):
            return TRUE
        if isinstance(left, FalseConst):
            return right
        if isinstance(right, FalseConst):
            return left
        return Or(left, right)
    if isinstance(f, Implies):
        if isinstance(left, FalseConst) or isinstance(right, TrueConst):
            return TRUE
        if isinstance(left, TrueConst):
            return right
        if isinstance(right, FalseConst):
            return fold_constants(Not(left))
        return Implies(left, right)
    if isinstance(left, consts) and isinstance(right, consts):
        return TRUE if type(left) is type(right) else FALSE
    if isinstance(left, TrueConst):
        return right
    if isinstance(right, TrueConst):
        return left
    if isinstance(left, FalseConst):
        return fold_constants(Not(right))
    if isinstance(right, FalseConst):
        return fold_constants(Not(left))
    return Iff(left, right)


# --- Relativization ----------------------------------------------------------


def guard_variables(guard: Guard) -> FrozenSet[str]:
    if isinstance(guard, (Below, AtLeast)):
        return frozenset({guard.var})
    if isinstance(guard, Interval):
        return frozenset({guard.low, guard.high})
    return free_variables(guard.formula) - {guard.hole}


def guard_rank(guard: Guard) -> int:
    if isinstance(guard, Pred):
        return quantifier_rank(guard.formula)
    return 0


def guard_formula(guard: Guard, var: str) -> Formula:
    """The guard's membership condition for the point named ``var``."""

    if isinstance(guard, Below):
        return Lt(var, guard.var)
    if isinstance(guard, AtLeast):
        return Or(Eq(guard.var, var), Lt(guard.var, var))
    if isinstance(guard, Interval):
        return And(Or(Eq(guard.low, var), Lt(guard.low, var)), Lt(var, guard.high))
    return substitute(guard.formula, guard.hole, var)


def _relativize(f: Formula, guard: Guard) -> Formula:
    if isinstance(f, Exists):
        return Exists(f.var, And(guard_formula(guard, f.var), _relativize(f.body, guard)))
    if isinstance(f, Forall):
        return Forall(f.var, Implies(guard_formula(guard, f.var), _relativize(f.body, guard)))
    if isinstance(f, Not):
        return Not(_relativize(f.body, guard))
    if isinstance(f, _BINARY_TYPES):
        return type(f)(_relativize(f.left, guard), _relativize(f.right, guard))
    return f


def relativize(f: Formula, guard: Guard) -> Formula:
    """Restrict every quantifier of ``f`` to the set described by ``guard``.

    Bound variables of ``f`` that collide with the guard's variables are
    renamed first. Atoms are unchanged.
    """

    return _relativize(rename_bound(f, guard_variables(guard)), guard)


def relativized_rank(f: Formula, guard: Guard) -> int:
    """Quantifier rank of ``relativize(f, guard)``.

    Every quantifier gains the guard's rank, and the guard sits next to the
    innermost body, so the increase is paid once along each branch.
    """

    rank = quantifier_rank(f)
    return rank + guard_rank(guard) if rank else 0


# --- Parser ------------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    position: int


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    pos = 0
    length = len(text)
    while pos < length:
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise FormulaSyntaxError(f"Unexpected character {text[pos]!r}", pos)
        start = match.start(match.lastgroup)
        if match.lastgroup == "ident":
            word = match.group("ident")
            kind = word if word in KEYWORDS else "ident"
            tokens.append(_Token(kind, word, start))
        elif match.lastgroup == "uni":
            alias = UNICODE_ALIASES[match.group("uni")]
            tokens.append(_Token(alias, alias, start))
        else:
            op = match.group("op")
            tokens.append(_Token(op, op, start))
        pos = match.end()
    tokens.append(_Token("eof", "", length))
    return tokens


class FormulaParser:
    """Recursive-descent parser for the formula grammar."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        token = self.tokens[self.pos]
        if token.kind != "eof":
            self.pos += 1
        return token

    def _expect(self, kind: str) -> _Token:
        token = self._peek()
        if token.kind != kind:
            found = "end of input" if token.kind == "eof" else repr(token.text)
            wanted = "identifier" if kind == "ident" else repr(kind)
            raise FormulaSyntaxError(f"Expected {wanted} but found {found}", token.position)
        return self._advance()

    def parse(self) -> Formula:
        formula = self.parse_formula()
        token = self._peek()
        if token.kind != "eof":
            raise FormulaSyntaxError(f"Unexpected {token.text!r} after formula", token.position)
        return formula

    def parse_formula(self) -> Formula:
        token = self._peek()
        if token.kind in ("forall", "exists"):
            return self._parse_quantifier()
        return self._parse_iff()

    def _parse_quantifier(self) -> Formula:
        token = self._advance()
        var = self._expect("ident").text
        body = self.parse_formula()
        return Forall(var, body) if token.kind == "forall" else Exists(var, body)

    def _parse_iff(self) -> Formula:
        left = self._parse_imp()
        while self._peek().kind == "<->":
            self._advance()
            left = Iff(left, self._parse_imp())
        return left

    def _parse_imp(self) -> Formula:
        left = self._parse_or()
        if self._peek().kind == "->":
            self._advance()
            return Implies(left, self._parse_imp())
        return left

    def _parse_or(self) -> Formula:
        left = self._parse_and()
        while self._peek().kind == "|":
            self._advance()
            left = Or(left, self._parse_and())
        return left

    def _parse_and(self) -> Formula:
        left = self._parse_neg()
        while self._peek().kind == "&":
            self._advance()
            left = And(left, self._parse_neg())
        return left

    def _parse_neg(self) -> Formula:
        token = self._peek()
        if token.kind == "~":
            self._advance()
            return Not(self._parse_neg())
        if token.kind in ("forall", "exists"):
            return self._parse_quantifier()
        return self._parse_atom()

    def _parse_atom(self) -> Formula:
        token = self._peek()
        if token.kind == "(":
            self._advance()
            inner = self.parse_formula()
            self._expect(")")
            return inner
        if token.kind == "true":
            self._advance()
            return TRUE
        if token.kind == "false":
            self._advance()
            return FALSE
        if token.kind == "ident":
            left = self._advance().text
            op = self._peek()
            if op.kind not in ("<", "=", "<="):
                found = "end of input" if op.kind == "eof" else repr(op.text)
                raise FormulaSyntaxError(f"Expected '<', '=' or '<=' but found {found}", op.position)
            self._advance()
            right = self._expect("ident").text
            if op.kind == "<":
                return Lt(left, right)
            if op.kind == "=":
                return Eq(left, right)
            return leq(left, right)
        found = "end of input" if token.kind == "eof" else repr(token.text)
        raise FormulaSyntaxError(f"Expected a formula but found {found}", token.position)


def parse_formula(text: str, *, require_sentence_flag: bool = False) -> Formula:
    """Parse ``text``; with ``require_sentence_flag`` reject free variables."""

    formula = FormulaParser(text).parse()
    if require_sentence_flag:
        require_sentence(formula)
    return formula


# --- Printer -----------------------------------------------------------------

_PREC_QUANT = 0
_PREC_IFF = 1
_PREC_IMP = 2
_PREC_OR = 3
_PREC_AND = 4
_PREC_NOT = 5
_PREC_ATOM = 6
_BINARY_SYMBOLS = {And: "&", Or: "|", Implies: "->", Iff: "<->"}
_BINARY_PREC = {And: _PREC_AND, Or: _PREC_OR, Implies: _PREC_IMP, Iff: _PREC_IFF}


def _precedence(f: Formula) -> int:
    if isinstance(f, _QUANTIFIER_TYPES):
        return _PREC_QUANT
    if isinstance(f, Not):
        return _PREC_NOT
    if isinstance(f, _BINARY_TYPES):
        return _BINARY_PREC[type(f)]
    return _PREC_ATOM


def _print_atom(f: Formula) -> str:
    if isinstance(f, Lt):
        return f"{f.left} < {f.right}"
    if isinstance(f, Eq):
        return f"{f.left} = {f.right}"
    return "true" if isinstance(f, TrueConst) else "false"


def _print(f: Formula, minimum: int) -> str:
    """Print ``f`` in a context that binds at least as tight as ``minimum``."""

    text = _print_bare(f)
    if _precedence(f) < minimum:
        return f"({text})"
    return text


def _print_bare(f: Formula) -> str:
    if isinstance(f, _QUANTIFIER_TYPES):
        keyword = "forall" if isinstance(f, Forall) else "exists"
        if isinstance(f.body, _QUANTIFIER_TYPES):
            return f"{keyword} {f.var} {_print_bare(f.body)}"
        return f"{keyword} {f.var} ({_print_bare(f.body)})"
    if isinstance(f, Not):
        if isinstance(f.body, _ATOM_TYPES):
            return f"~({_print_atom(f.body)})"
        return f"~{_print(f.body, _PREC_NOT)}"
    if isinstance(f, _BINARY_TYPES):
        prec = _BINARY_PREC[type(f)]
        symbol = _BINARY_SYMBOLS[type(f)]
        if isinstance(f, Implies):
            left, right = _print(f.left, prec + 1), _print(f.right, prec)
        else:
            left, right = _print(f.left, prec), _print(f.right, prec + 1)
        return f"{left} {symbol} {right}"
    return _print_atom(f)


def _print_full_operand(f: Formula) -> str:
    # A bare quantifier would swallow the rest of the enclosing connective.
    text = _print_full(f)
    return f"({text})" if isinstance(f, _QUANTIFIER_TYPES) else text


def _print_full(f: Formula) -> str:
    if isinstance(f, _QUANTIFIER_TYPES):
        keyword = "forall" if isinstance(f, Forall) else "exists"
        return f"{keyword} {f.var} ({_print_full(f.body)})"
    if isinstance(f, Not):
        return f"~({_print_full(f.body)})"
    if isinstance(f, _BINARY_TYPES):
        symbol = _BINARY_SYMBOLS[type(f)]
        return f"({_print_full_operand(f.left)} {symbol} {_print_full_operand(f.right)})"
    return _print_atom(f)


def print_formula(f: Formula, *, full_parens: bool = False) -> str:
    """Render ``f`` in the ASCII surface syntax; the output reparses to ``f``."""

    if full_parens:
        return _print_full(f)
    return _print_bare(f)


def is_identifier(name: str) -> bool:
    return bool(IDENT_RE.match(name)) and name not in KEYWORDS


__all__ = [
    "And",
    "AtLeast",
    "Below",
    "Eq",
    "Exists",
    "FALSE",
    "FalseConst",
    "Forall",
    "Formula",
    "FormulaParser",
    "Guard",
    "Iff",
    "Implies",
    "Interval",
    "Lt",
    "Not",
    "Or",
    "Pred",
    "TRUE",
    "TrueConst",
    "all_variables",
    "bound_variables",
    "conj",
    "disj",
    "fold_constants",
    "free_variables",
    "fresh_variable",
    "guard_formula",
    "guard_rank",
    "guard_variables",
    "leq",
    "parse_formula",
    "print_formula",
    "quantifier_rank",
    "relativize",
    "relativized_rank",
    "rename_bound",
    "require_sentence",
    "substitute",
]
