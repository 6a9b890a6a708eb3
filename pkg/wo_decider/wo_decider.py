#!/usr/bin/env python3

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .axiomgen import t_alpha, ti_instance
from .constants import (
    ALLOW_EMPTY_KEY,
    APP_NAME,
    EXIT_FALSE,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_RESOURCE_LIMIT,
    FINITE_STYLE_DIRECT,
    FINITE_STYLE_KEY,
    FINITE_STYLE_SUM,
    LAMBDA_CORRECTED,
    LAMBDA_LITERAL,
    LAMBDA_READING_KEY,
    MAX_CLOSURE_KEY,
    MAX_SECONDS_KEY,
)
from .decider import Decider, format_term
from .errors import ResourceLimitError, WoDeciderError
from .evaluator import holds
from .formula import parse_formula, print_formula, quantifier_rank
from .logging_utils import LOG_LEVEL_ERROR, LOG_LEVEL_WARNING, AppLogger, get_app_logger
from .ordinal import parse_ordinal
from .wo_decider_config import (
    DeciderConfig,
    SETTINGS_DEFAULTS,
    config_from_settings,
    load_settings,
    set_setting,
)

COMMANDS = ("decide", "holds", "equiv", "axiom", "ti", "type", "closure", "config")
VALID_BANNER = "VALID (WO ⊨ φ, TI ⊢ φ)"


@dataclass(frozen=True)
class CliConfig:
    """One invocation: the command, its positional arguments and the effective flags."""

    command: str
    arguments: Tuple[str, ...] = ()
    allow_empty: bool = False
    json: bool = False
    max_seconds: int = SETTINGS_DEFAULTS[MAX_SECONDS_KEY]
    max_closure: int = SETTINGS_DEFAULTS[MAX_CLOSURE_KEY]
    trace: bool = False
    full_parens: bool = False
    lambda_reading: str = LAMBDA_CORRECTED
    finite_style: str = FINITE_STYLE_SUM
    options: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command: {self.command}")
        if self.max_seconds <= 0 or self.max_closure <= 0:
            raise ValueError("resource caps must be positive")

    def decider_config(self, settings: Dict[str, Any]) -> DeciderConfig:
        base = config_from_settings(settings)
        return DeciderConfig(
            max_seconds=self.max_seconds,
            max_closure=self.max_closure,
            max_rank=base.max_rank,
            allow_empty=self.allow_empty,
        )


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from exc
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--allow-empty", action="store_true", default=None, help="include the empty order (0)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-seconds", type=_positive_int, default=None, metavar="N")
    common.add_argument("--max-closure", type=_positive_int, default=None, metavar="N")
    common.add_argument("--trace", action="store_true", help="mirror progress lines to stderr")

    parser = argparse.ArgumentParser(
        prog=APP_NAME,
        description="Decide first-order sentences about well orders and generate ordinal axioms.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("decide", parents=[common], help="decide validity over all well orders")
    p.add_argument("formula")

    p = sub.add_parser("holds", parents=[common], help="model-check a sentence on an ordinal")
    p.add_argument("ordinal")
    p.add_argument("formula")

    p = sub.add_parser("equiv", parents=[common], help="rank-k elementary equivalence of two ordinals")
    p.add_argument("ordinal")
    p.add_argument("other")
    p.add_argument("k", type=_natural)

    p = sub.add_parser("axiom", parents=[common], help="the complete axiom of an ordinal")
    p.add_argument("ordinal")
    p.add_argument("--full-parens", action="store_true")
    p.add_argument("--lambda-reading", choices=(LAMBDA_CORRECTED, LAMBDA_LITERAL), default=None)
    p.add_argument("--finite-style", choices=(FINITE_STYLE_SUM, FINITE_STYLE_DIRECT), default=None)

    p = sub.add_parser("ti", parents=[common], help="a transfinite induction instance")
    p.add_argument("formula")
    p.add_argument("--var", default=None, help="the designated free variable")
    p.add_argument("--full-parens", action="store_true")

    p = sub.add_parser("type", parents=[common], help="statistics of the level-k type of an ordinal")
    p.add_argument("ordinal")
    p.add_argument("k", type=_natural)

    p = sub.add_parser("closure", parents=[common], help="list the reachable level-k types")
    p.add_argument("k", type=_natural)

    p = sub.add_parser("config", parents=[common], help="show or change persistent settings")
    config_sub = p.add_subparsers(dest="action", metavar="ACTION")
    config_sub.required = True
    config_sub.add_parser("show")
    setter = config_sub.add_parser("set")
    setter.add_argument("key", choices=sorted(SETTINGS_DEFAULTS))
    setter.add_argument("value")
    return parser


def cli_config_from_args(args: argparse.Namespace, settings: Dict[str, Any]) -> CliConfig:
    positional: List[str] = []
    for name in ("ordinal", "other", "formula"):
        value = getattr(args, name, None)
        if value is not None:
            positional.append(value)
    options = {name: getattr(args, name) for name in ("k", "var", "action", "key", "value") if hasattr(args, name)}

    def pick(flag: Optional[Any], key: str) -> Any:
        return settings.get(key, SETTINGS_DEFAULTS[key]) if flag is None else flag

    return CliConfig(
        command=args.command,
        arguments=tuple(positional),
        allow_empty=bool(pick(args.allow_empty, ALLOW_EMPTY_KEY)),
        json=args.json,
        max_seconds=int(pick(args.max_seconds, MAX_SECONDS_KEY)),
        max_closure=int(pick(args.max_closure, MAX_CLOSURE_KEY)),
        trace=args.trace,
        full_parens=getattr(args, "full_parens", False),
        lambda_reading=pick(getattr(args, "lambda_reading", None), LAMBDA_READING_KEY),
        finite_style=pick(getattr(args, "finite_style", None), FINITE_STYLE_KEY),
        options=options,
    )


def _emit(cfg: CliConfig, payload: Dict[str, Any], text: str) -> None:
    if cfg.json:
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _decider(cfg: CliConfig, settings: Dict[str, Any], logger: AppLogger) -> Decider:
    return Decider(cfg.decider_config(settings), logger=logger)


def cmd_decide(cfg: CliConfig, settings: Dict[str, Any], logger: AppLogger) -> int:
    formula = parse_formula(cfg.arguments[0], require_sentence_flag=True)
    verdict = _decider(cfg, settings, logger).decide(formula, cfg.allow_empty)
    if verdict.valid:
        text = VALID_BANNER
    else:
        text = f"INVALID (counterexample: {verdict.counterexample}; witness {format_term(verdict.witness_term)})"
    _emit(cfg, verdict.to_dict(), text)
    return EXIT_OK if verdict.valid else EXIT_FALSE


def cmd_holds(cfg: CliConfig, settings: Dict[str, Any], logger: AppLogger) -> int:
    alpha = parse_ordinal(cfg.arguments[0])
    formula = parse_formula(cfg.arguments[1], require_sentence_flag=True)
    decider = _decider(cfg, settings, logger)
    with decider.budget():
        result = holds(alpha, formula, allow_empty=cfg.allow_empty, evaluator=decider.evaluator)
    payload = {"ordinal": str(alpha), "rank": quantifier_rank(formula), "holds": result}
    _emit(cfg, payload, "true" if result else "false")
    return EXIT_OK if result else EXIT_FALSE


def cmd_equiv(cfg: CliConfig, settings: Dict[str, Any], logger: AppLogger) -> int:
    alpha = parse_ordinal(cfg.arguments[0])
    beta = parse_ordinal(cfg.arguments[1])
    k = cfg.options["k"]
    decider = _decider(cfg, settings, logger)
    with decider.budget():
        result = decider.table.ordinal_id(alpha, k) == decider.table.ordinal_id(beta, k)
    payload = {"ordinals": [str(alpha), str(beta)], "k": k, "equivalent": result}
    _emit(cfg, payload, "true" if result else "false")
    return EXIT_OK if result else EXIT_FALSE


def cmd_axiom(cfg: CliConfig, settings: Dict[str, Any], logger: AppLogger) -> int:
    alpha = parse_ordinal(cfg.arguments[0])
    result = t_alpha(alpha, finite_style=cfg.finite_style, lambda_reading=cfg.lambda_reading)
    if cfg.lambda_reading == LAMBDA_LITERAL:
        logger.log(
            "literal limit-point reading holds at every point; the sentence is for display only",
            level=LOG_LEVEL_WARNING,
            location="axiom",
            mirror_console=True,
        )
    text = print_formula(result.sentence, full_parens=cfg.full_parens)
    payload = {
        "ordinal": str(alpha),
        "rank": result.rank,
        "sentence": text,
        "trace": [f"{step.rule} {step.ordinal}" for step in result.trace],
    }
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_ti(cfg: CliConfig, settings: Dict[str, Any], logger: AppLogger) -> int:
    phi = parse_formula(cfg.arguments[0])
    instance = ti_instance(phi, var=cfg.options.get("var"))
    text = print_formula(instance, full_parens=cfg.full_parens)
    _emit(cfg, {"instance": text, "rank": quantifier_rank(instance)}, text)
    return EXIT_OK


def cmd_type(cfg: CliConfig, settings: Dict[str, Any], logger: AppLogger) -> int:
    alpha = parse_ordinal(cfg.arguments[0])
    k = cfg.options["k"]
    decider = _decider(cfg, settings, logger)
    with decider.budget():
        type_id = decider.table.ordinal_id(alpha, k)
        stats = decider.table.stats(type_id)
    per_level = " ".join(f"{level}:{count}" for level, count in stats["nodes_per_level"].items())
    lines = [
        f"ordinal: {alpha}",
        f"id: {stats['id']}",
        f"level: {stats['level']}",
        f"digest: {stats['digest']}",
        f"cardinality: {stats['cardinality']}",
        f"nodes per level: {per_level}",
        f"reachable nodes: {stats['reachable_nodes']}",
        f"interned total: {stats['interned_total']}",
    ]
    logger.log_lines(f"type {alpha} k={k}", lines[1:], location="type")
    payload = dict(stats)
    payload["ordinal"] = str(alpha)
    payload["nodes_per_level"] = {str(level): count for level, count in stats["nodes_per_level"].items()}
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


def cmd_closure(cfg: CliConfig, settings: Dict[str, Any], logger: AppLogger) -> int:
    k = cfg.options["k"]
    entries = _decider(cfg, settings, logger).reachable_closure(k, cfg.allow_empty)
    rows = [(entry.type_id, entry.depth, format_term(entry.term), str(entry.ordinal)) for entry in entries]
    payload = {
        "k": k,
        "size": len(rows),
        "entries": [{"id": i, "depth": d, "witness": w, "ordinal": o} for i, d, w, o in rows],
    }
    text = "\n".join(f"{i} {d} {w} {o}" for i, d, w, o in rows)
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_config(cfg: CliConfig, settings: Dict[str, Any], logger: AppLogger) -> int:
    if cfg.options.get("action") == "set":
        key = cfg.options["key"]
        value = set_setting(key, cfg.options["value"])
        logger.log(f"Setting {key} = {value!r}", location="config")
        _emit(cfg, {key: value}, f"{key} = {json.dumps(value)}")
        return EXIT_OK
    current = load_settings()
    text = "\n".join(f"{key} = {json.dumps(current[key])}" for key in sorted(current))
    _emit(cfg, current, text)
    return EXIT_OK


HANDLERS: Dict[str, Callable[[CliConfig, Dict[str, Any], AppLogger], int]] = {
    "decide": cmd_decide,
    "holds": cmd_holds,
    "equiv": cmd_equiv,
    "axiom": cmd_axiom,
    "ti": cmd_ti,
    "type": cmd_type,
    "closure": cmd_closure,
    "config": cmd_config,
}


def main(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv[1:]))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE_ERROR

    logger = get_app_logger()
    logger.mirror_all = bool(args.trace)
    with logger.context(args.command):
        logger.log(f"Starting {APP_NAME} {args.command}", include_context=True)
        try:
            settings = load_settings()
            cfg = cli_config_from_args(args, settings)
            return HANDLERS[cfg.command](cfg, settings, logger)
        except ResourceLimitError as exc:
            logger.log(str(exc), level=LOG_LEVEL_ERROR, include_context=True, mirror_console=True)
            return EXIT_RESOURCE_LIMIT
        except (WoDeciderError, ValueError) as exc:
            logger.log(str(exc), level=LOG_LEVEL_ERROR, include_context=True, mirror_console=True)
            return EXIT_PARSE_ERROR


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main(sys.argv))
