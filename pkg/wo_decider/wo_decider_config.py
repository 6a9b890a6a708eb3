"""
Persistent settings for wo-decider.

Settings live in one JSON file under the config directory
(``~/.config/wo-decider`` unless ``WO_DECIDER_CONFIG_DIR`` points elsewhere).
Missing or corrupt files read as empty and the defaults below are filled in.
CLI flags override the stored values for a single invocation.

Keys:

  MAX_SECONDS     wall-clock budget of one decision, in seconds
  MAX_CLOSURE     cap on interned types before a decision is abandoned
  MAX_RANK        largest quantifier rank the decider accepts
  ALLOW_EMPTY     include the empty order (ordinal 0) among the models
  LAMBDA_READING  "corrected" or "literal" reading of the limit-point formula
  FINITE_STYLE    "sum" (iterated sum rule) or "direct" finite axioms
"""

from __future__ import annotations

import copy
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict

from .constants import (
    ALLOW_EMPTY_KEY,
    CONFIG_DIR,
    CONFIG_DIR_ENV,
    DEFAULT_MAX_CLOSURE,
    DEFAULT_MAX_RANK,
    DEFAULT_MAX_SECONDS,
    FINITE_STYLE_DIRECT,
    FINITE_STYLE_KEY,
    FINITE_STYLE_SUM,
    LAMBDA_CORRECTED,
    LAMBDA_LITERAL,
    LAMBDA_READING_KEY,
    MAX_CLOSURE_KEY,
    MAX_RANK_KEY,
    MAX_SECONDS_KEY,
)

SETTINGS_FILENAME = "settings.json"
ENCODING_UTF8 = "utf-8"
SETTINGS_DEFAULTS: Dict[str, Any] = {
    MAX_SECONDS_KEY: DEFAULT_MAX_SECONDS,
    MAX_CLOSURE_KEY: DEFAULT_MAX_CLOSURE,
    MAX_RANK_KEY: DEFAULT_MAX_RANK,
    ALLOW_EMPTY_KEY: False,
    LAMBDA_READING_KEY: LAMBDA_CORRECTED,
    FINITE_STYLE_KEY: FINITE_STYLE_SUM,
}
POSITIVE_INT_KEYS = {MAX_SECONDS_KEY, MAX_CLOSURE_KEY, MAX_RANK_KEY}
CHOICE_KEYS = {
    LAMBDA_READING_KEY: {LAMBDA_CORRECTED, LAMBDA_LITERAL},
    FINITE_STYLE_KEY: {FINITE_STYLE_SUM, FINITE_STYLE_DIRECT},
}
TRUE_STRINGS = {"1", "true", "yes", "on"}
FALSE_STRINGS = {"0", "false", "no", "off"}


@dataclass(frozen=True)
class DeciderConfig:
    max_seconds: float = DEFAULT_MAX_SECONDS
    max_closure: int = DEFAULT_MAX_CLOSURE
    max_rank: int = DEFAULT_MAX_RANK
    allow_empty: bool = False

    def __post_init__(self) -> None:
        if self.max_seconds <= 0 or self.max_closure <= 0 or self.max_rank <= 0:
            raise ValueError("resource caps must be positive")


def config_dir() -> Path:
    override = os.environ.get(CONFIG_DIR_ENV)
    return Path(override) if override else CONFIG_DIR


def settings_file() -> Path:
    return config_dir() / SETTINGS_FILENAME


def load_settings() -> Dict[str, Any]:
    """Return the persisted settings with defaults applied."""

    settings = _load_json(settings_file())
    _apply_defaults(settings, SETTINGS_DEFAULTS)
    return settings


def save_settings(settings: Dict[str, Any]) -> None:
    """Persist the known keys of ``settings``; unknown keys are dropped."""

    _save_json(settings_file(), {k: v for k, v in settings.items() if k in SETTINGS_DEFAULTS})


def coerce_setting(key: str, raw: str) -> Any:
    """Convert the textual ``raw`` value for ``key`` to its stored type."""

    if key not in SETTINGS_DEFAULTS:
        raise ValueError(f"Unknown setting: {key}")
    if key in POSITIVE_INT_KEYS:
        try:
            value = int(raw)
        except ValueError as exc:
            raise ValueError(f"{key} expects a positive integer, got {raw!r}") from exc
        if value <= 0:
            raise ValueError(f"{key} expects a positive integer, got {raw!r}")
        return value
    if key in CHOICE_KEYS:
        value = raw.strip().lower()
        if value not in CHOICE_KEYS[key]:
            allowed = ", ".join(sorted(CHOICE_KEYS[key]))
            raise ValueError(f"{key} expects one of {allowed}, got {raw!r}")
        return value
    lowered = raw.strip().lower()
    if lowered in TRUE_STRINGS:
        return True
    if lowered in FALSE_STRINGS:
        return False
    raise ValueError(f"{key} expects a boolean, got {raw!r}")


def set_setting(key: str, raw: str) -> Any:
    value = coerce_setting(key, raw)
    settings = load_settings()
    settings[key] = value
    save_settings(settings)
    return value


def config_from_settings(settings: Dict[str, Any]) -> DeciderConfig:
    return DeciderConfig(
        max_seconds=float(settings.get(MAX_SECONDS_KEY, DEFAULT_MAX_SECONDS)),
        max_closure=int(settings.get(MAX_CLOSURE_KEY, DEFAULT_MAX_CLOSURE)),
        max_rank=int(settings.get(MAX_RANK_KEY, DEFAULT_MAX_RANK)),
        allow_empty=bool(settings.get(ALLOW_EMPTY_KEY, False)),
    )


def _ensure_config_dir() -> None:
    try:
        config_dir().mkdir(parents=True, exist_ok=True)
    except Exception:
        # A failing mkdir surfaces as a write error in _save_json.
        pass


def _load_json(path: Path) -> Dict[str, Any]:
    if not path.exists():
        return {}
    try:
        with path.open("r", encoding=ENCODING_UTF8) as f:
            data = json.load(f)
    except Exception:
        return {}
    return data if isinstance(data, dict) else {}


def _save_json(path: Path, data: Dict[str, Any]) -> None:
    _ensure_config_dir()
    tmp = path.with_suffix(path.suffix + ".tmp")
    with tmp.open("w", encoding=ENCODING_UTF8) as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")
    tmp.replace(path)


def _apply_defaults(settings: Dict[str, Any], defaults: Dict[str, Any]) -> bool:
    updated = False
    for key, value in defaults.items():
        if key not in settings:
            settings[key] = copy.deepcopy(value)
            updated = True
    return updated
