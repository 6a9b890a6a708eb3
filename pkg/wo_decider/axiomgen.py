"""Sentence generators: complete axioms ``T_a`` of single ordinals and TI instances.

``t_alpha`` first plans a postfix trace of construction steps for the ordinal
and then replays it on a stack, so ``replay_trace(result.trace)`` rebuilds the
same sentence. Steps:

  T_1        every two elements are equal
  finite     "exactly n elements", the direct finite form
  T_omega    least element, successors, predecessors of non-minimal elements
  sum        ``exists x (A^{<x} & B^{>=x})`` for the two topmost results
  limit      ``T_{w*d}`` for a limit ``d`` from ``T_d`` relativized to limit points
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .constants import FINITE_STYLE_DIRECT, FINITE_STYLE_SUM, LAMBDA_CORRECTED, LAMBDA_LITERAL
from .errors import AxiomError, UnboundVariableError
from .formula import (
    AtLeast,
    Below,
    Eq,
    Exists,
    Forall,
    Formula,
    Implies,
    Lt,
    Pred,
    all_variables,
    conj,
    disj,
    fresh_variable,
    free_variables,
    is_identifier,
    leq,
    quantifier_rank,
    relativize,
    substitute,
)
from .ordinal import OMEGA, ONE, Ordinal, add, is_limit, mul_omega_left, split_limit_finite

RULE_T1 = "T_1"
RULE_FINITE = "finite"
RULE_T_OMEGA = "T_omega"
RULE_SUM = "sum"
RULE_LIMIT = "limit"

SPLIT_VAR = "x"


@dataclass(frozen=True)
class AxiomStep:
    rule: str
    ordinal: Ordinal
    lambda_reading: Optional[str] = None


@dataclass(frozen=True)
class AxiomResult:
    sentence: Formula
    rank: int
    trace: Tuple[AxiomStep, ...]
    ordinal: Ordinal
    # False only when the sentence also holds in the empty order.
    nonempty: bool = True


# --- Building blocks ---------------------------------------------------------


def lambda_formula(x: str = "x", *, literal: bool = False) -> Formula:
    """``x`` is not a successor: ``forall y (y < x -> exists z (z < x & y < z))``.

    ``literal=True`` keeps ``y < x`` in the inner scope, which holds at every
    point and is only offered for comparison.
    """

    y = "y" if x != "y" else fresh_variable("y", {x})
    z = "z" if x != "z" else fresh_variable("z", {x, y})
    inner = Lt(y, x) if literal else Lt(y, z)
    return Forall(y, Implies(Lt(y, x), Exists(z, conj(Lt(z, x), inner))))


def t_one() -> Formula:
    return Forall("x", Forall("y", Eq("x", "y")))


def t_finite_direct(n: int) -> Formula:
    """Exactly ``n`` elements: ``exists x1..xn (x1 < .. < xn & forall y (y = x1 | .. | y = xn))``."""

    names = [f"x{i}" for i in range(1, n + 1)]
    chain = conj(*(Lt(a, b) for a, b in zip(names, names[1:])))
    cover = Forall("y", disj(*(Eq("y", name) for name in names)))
    body = conj(chain, cover) if n > 1 else cover
    for name in reversed(names):
        body = Exists(name, body)
    return body


def t_omega() -> Formula:
    least = Exists("x", Forall("y", leq("x", "y")))
    successor = Forall("x", Exists("y", conj(Lt("x", "y"), Forall("z", Implies(Lt("x", "z"), leq("y", "z"))))))
    predecessor = Forall(
        "x",
        Implies(
            Exists("y", Lt("y", "x")),
            Exists("y", conj(Lt("y", "x"), Forall("z", Implies(Lt("z", "x"), leq("z", "y"))))),
        ),
    )
    return conj(least, successor, predecessor)


def sum_sentence(left: AxiomResult, right: AxiomResult) -> Formula:
    x = SPLIT_VAR
    lower = relativize(left.sentence, Below(x))
    if not left.nonempty:
        lower = conj(lower, Exists("y", Lt("y", x)))
    return Exists(x, conj(lower, relativize(right.sentence, AtLeast(x))))


def limit_sentence(inner: AxiomResult, *, literal: bool = False) -> Formula:
    """``T_{w*d}``: ``T_d`` on the limit points, each point between two limit points."""

    lam = lambda_formula("x", literal=literal)
    on_limits = relativize(inner.sentence, Pred(lam, "x"))
    lam_y = substitute(lam, "x", "y")
    lam_z = substitute(lam, "x", "z")
    max_below = Exists("y", conj(leq("y", "x"), lam_y, Forall("z", Implies(conj(leq("z", "x"), lam_z), leq("z", "y")))))
    min_above = Exists("y", conj(Lt("x", "y"), lam_y, Forall("z", Implies(conj(Lt("x", "z"), lam_z), leq("y", "z")))))
    return conj(on_limits, Forall("x", conj(max_below, min_above)))


# --- Planning and replay -----------------------------------------------------


def _plan_fold(pieces: List[List[AxiomStep]], ordinals: List[Ordinal]) -> Tuple[List[AxiomStep], Ordinal]:
    """Balanced binary sum of consecutive summands."""

    if len(pieces) == 1:
        return pieces[0], ordinals[0]
    mid = len(pieces) // 2
    left, left_ord = _plan_fold(pieces[:mid], ordinals[:mid])
    right, right_ord = _plan_fold(pieces[mid:], ordinals[mid:])
    total = add(left_ord, right_ord)
    return left + right + [AxiomStep(RULE_SUM, total)], total


def _plan_finite(n: int, finite_style: str) -> List[AxiomStep]:
    if finite_style == FINITE_STYLE_DIRECT:
        return [AxiomStep(RULE_FINITE, Ordinal.from_int(n))]
    steps, _ = _plan_fold([[AxiomStep(RULE_T1, ONE)] for _ in range(n)], [ONE] * n)
    return steps


def _plan(a: Ordinal, finite_style: str, lambda_reading: str) -> List[AxiomStep]:
    beta, n = split_limit_finite(a)
    pieces: List[List[AxiomStep]] = []
    ordinals: List[Ordinal] = []
    if beta:
        # beta = delta + m with delta zero or a limit.
        m = beta.finite_part
        delta, _ = split_limit_finite(beta)
        delta = mul_omega_left(delta)
        blocks: List[List[AxiomStep]] = []
        block_ords: List[Ordinal] = []
        if delta:
            inner = _plan(delta, finite_style, lambda_reading)
            blocks.append(inner + [AxiomStep(RULE_LIMIT, mul_omega_left(delta), lambda_reading)])
            block_ords.append(mul_omega_left(delta))
        if m:
            omega_steps, omega_ord = _plan_fold([[AxiomStep(RULE_T_OMEGA, OMEGA)] for _ in range(m)], [OMEGA] * m)
            blocks.append(omega_steps)
            block_ords.append(omega_ord)
        steps, infinite = _plan_fold(blocks, block_ords)
        pieces.append(steps)
        ordinals.append(infinite)
    if n:
        pieces.append(_plan_finite(n, finite_style))
        ordinals.append(Ordinal.from_int(n))
    steps, total = _plan_fold(pieces, ordinals)
    assert total == a
    return steps


def replay_trace(trace) -> AxiomResult:
    """Rebuild the sentence described by a postfix ``trace``."""

    stack: List[AxiomResult] = []
    steps = tuple(trace)
    for step in steps:
        if step.rule == RULE_T1:
            stack.append(AxiomResult(t_one(), 2, (), step.ordinal, nonempty=False))
            continue
        if step.rule == RULE_FINITE:
            sentence = t_finite_direct(step.ordinal.to_int())
        elif step.rule == RULE_T_OMEGA:
            sentence = t_omega()
        elif step.rule == RULE_SUM:
            if len(stack) < 2:
                raise AxiomError("sum step needs two operands")
            right = stack.pop()
            left = stack.pop()
            sentence = sum_sentence(left, right)
        elif step.rule == RULE_LIMIT:
            if not stack:
                raise AxiomError("limit step needs an operand")
            sentence = limit_sentence(stack.pop(), literal=step.lambda_reading == LAMBDA_LITERAL)
        else:
            raise AxiomError(f"unknown construction rule {step.rule!r}")
        stack.append(AxiomResult(sentence, quantifier_rank(sentence), (), step.ordinal))
    if len(stack) != 1:
        raise AxiomError("trace does not describe a single sentence")
    top = stack[0]
    return AxiomResult(top.sentence, quantifier_rank(top.sentence), steps, top.ordinal, top.nonempty)


def t_alpha(
    a: Ordinal,
    *,
    finite_style: str = FINITE_STYLE_SUM,
    lambda_reading: str = LAMBDA_CORRECTED,
) -> AxiomResult:
    """A sentence true in ``a`` and false in every other well order."""

    if a.is_zero:
        raise AxiomError("the empty order has no nonempty-model axiom")
    if finite_style not in (FINITE_STYLE_SUM, FINITE_STYLE_DIRECT):
        raise AxiomError(f"unknown finite style {finite_style!r}")
    if lambda_reading not in (LAMBDA_CORRECTED, LAMBDA_LITERAL):
        raise AxiomError(f"unknown lambda reading {lambda_reading!r}")
    return replay_trace(_plan(a, finite_style, lambda_reading))


# --- Transfinite induction ---------------------------------------------------


def ti_instance(phi: Formula, x: str = "x", y: str = "y", var: Optional[str] = None) -> Formula:
    """``forall x (forall y (y < x -> phi(y)) -> phi(x)) -> forall x phi(x)``.

    ``var`` names the designated free variable of ``phi``; it defaults to the
    only free variable, and a closed ``phi`` is used as is.
    """

    for name in (x, y):
        if not is_identifier(name):
            raise AxiomError(f"{name!r} is not a variable name")
    if x == y:
        raise AxiomError("the schema needs two distinct variables")
    free = free_variables(phi)
    if var is None:
        if len(free) > 1:
            raise UnboundVariableError(
                f"parameters are not supported; free variables: {', '.join(sorted(free))}"
            )
        var = next(iter(free), None)
    elif free - {var}:
        raise UnboundVariableError(f"parameters are not supported; free variables: {', '.join(sorted(free - {var}))}")
    if var is None:
        at_x = at_y = phi
    else:
        # Route through a name unused everywhere so both substitutions are capture free.
        hole = fresh_variable("v", all_variables(phi) | {x, y})
        phi = substitute(phi, var, hole)
        at_x = substitute(phi, hole, x)
        at_y = substitute(phi, hole, y)
    step = Forall(x, Implies(Forall(y, Implies(Lt(y, x), at_y)), at_x))
    return Implies(step, Forall(x, at_x))


__all__ = [
    "AxiomResult",
    "AxiomStep",
    "RULE_FINITE",
    "RULE_LIMIT",
    "RULE_SUM",
    "RULE_T1",
    "RULE_T_OMEGA",
    "lambda_formula",
    "limit_sentence",
    "replay_trace",
    "sum_sentence",
    "t_alpha",
    "t_finite_direct",
    "t_omega",
    "ti_instance",
]
