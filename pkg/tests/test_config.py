from __future__ import annotations

import json

import pytest

from wo_decider import wo_decider_config as config
from wo_decider.constants import DEFAULT_MAX_CLOSURE, DEFAULT_MAX_RANK


def test_missing_file_reads_defaults(tmp_path) -> None:
    settings = config.load_settings()
    assert settings == config.SETTINGS_DEFAULTS
    assert config.settings_file() == tmp_path / "config" / "settings.json"


def test_corrupt_file_reads_defaults() -> None:
    path = config.settings_file()
    path.parent.mkdir(parents=True)
    path.write_text("{not json", encoding="utf-8")
    assert config.load_settings() == config.SETTINGS_DEFAULTS
    path.write_text("[1, 2]", encoding="utf-8")
    assert config.load_settings() == config.SETTINGS_DEFAULTS


def test_save_is_sorted_and_drops_unknown_keys() -> None:
    config.save_settings({"MAX_RANK": 3, "ALLOW_EMPTY": True, "COLOR": "blue"})
    text = config.settings_file().read_text(encoding="utf-8")
    assert json.loads(text) == {"ALLOW_EMPTY": True, "MAX_RANK": 3}
    assert text.index("ALLOW_EMPTY") < text.index("MAX_RANK")
    assert not config.settings_file().with_suffix(".json.tmp").exists()


@pytest.mark.parametrize(
    ("key", "raw", "expected"),
    [
        ("MAX_SECONDS", "30", 30),
        ("ALLOW_EMPTY", "yes", True),
        ("ALLOW_EMPTY", "off", False),
        ("LAMBDA_READING", "Literal", "literal"),
        ("FINITE_STYLE", "direct", "direct"),
    ],
)
def test_coerce_setting(key: str, raw: str, expected) -> None:
    assert config.coerce_setting(key, raw) == expected


@pytest.mark.parametrize(
    ("key", "raw"),
    [("MAX_RANK", "0"), ("MAX_RANK", "four"), ("ALLOW_EMPTY", "maybe"), ("FINITE_STYLE", "unary"), ("COLOR", "1")],
)
def test_coerce_setting_rejects(key: str, raw: str) -> None:
    with pytest.raises(ValueError):
        config.coerce_setting(key, raw)


def test_set_setting_persists() -> None:
    assert config.set_setting("MAX_CLOSURE", "500") == 500
    assert config.load_settings()["MAX_CLOSURE"] == 500
    decider_config = config.config_from_settings(config.load_settings())
    assert decider_config.max_closure == 500
    assert decider_config.max_rank == DEFAULT_MAX_RANK


def test_config_from_defaults() -> None:
    decider_config = config.config_from_settings({})
    assert decider_config.max_closure == DEFAULT_MAX_CLOSURE
    assert decider_config.allow_empty is False


def test_decider_config_rejects_non_positive_caps() -> None:
    with pytest.raises(ValueError):
        config.DeciderConfig(max_seconds=0)
    with pytest.raises(ValueError):
        config.DeciderConfig(max_rank=-1)
