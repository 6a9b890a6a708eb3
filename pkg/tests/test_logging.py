from __future__ import annotations

import pytest

from wo_decider import logging_utils
from wo_decider.logging_utils import AppLogger, get_app_logger


def test_log_line_format(tmp_path) -> None:
    logger = AppLogger("decider run", log_dir=tmp_path, run_id="abc", timestamp="t0")
    assert logger.path == tmp_path / "decider_run_t0_abc.log"
    with logger.context("decide"):
        with logger.context("closure"):
            entry = logger.log("layer 1 size 3", level="debug", include_context=True)
    assert entry == "abc-0001"
    line = logger.path.read_text(encoding="utf-8").strip()
    assert "[abc-0001] [closure] [DEBUG] [ctx:decide > closure] layer 1 size 3" in line


def test_context_is_popped(tmp_path) -> None:
    logger = AppLogger(log_dir=tmp_path, run_id="r", timestamp="t")
    with logger.context("outer"):
        pass
    logger.log("plain", include_context=True)
    assert "ctx:" not in logger.path.read_text(encoding="utf-8")
    assert "[root]" in logger.path.read_text(encoding="utf-8")


def test_mirror_to_stderr(tmp_path, capsys) -> None:
    logger = AppLogger(log_dir=tmp_path, run_id="r", timestamp="t")
    logger.log("quiet")
    logger.log("loud", mirror_console=True)
    err = capsys.readouterr().err
    assert "loud" in err
    assert "quiet" not in err


def test_log_lines_prefix(tmp_path) -> None:
    logger = AppLogger(log_dir=tmp_path, run_id="r", timestamp="t")
    logger.log_lines("type w", ["level: 2", "cardinality: 4"])
    lines = logger.path.read_text(encoding="utf-8").splitlines()
    assert lines[0].endswith("type w: level: 2")
    assert len(lines) == 2


def test_unknown_level_rejected(tmp_path) -> None:
    with pytest.raises(ValueError):
        AppLogger(log_dir=tmp_path).log("x", level="loud")


def test_global_logger_honours_environment(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv(logging_utils.RUN_ID_ENV, "fixed")
    logger = get_app_logger()
    assert logger is get_app_logger()
    assert logger.run_id == "fixed"
    assert logger.path.parent == tmp_path / "logs"
