from __future__ import annotations

from pathlib import Path

import pytest

from wo_decider import logging_utils


@pytest.fixture(autouse=True)
def _isolated_dirs(tmp_path, monkeypatch):
    monkeypatch.setenv("WO_DECIDER_CONFIG_DIR", str(tmp_path / "config"))
    monkeypatch.setenv("WO_DECIDER_LOG_DIR", str(tmp_path / "logs"))
    logging_utils.reset_app_logger()
    yield
    logging_utils.reset_app_logger()


GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def golden():
    def read(name: str) -> str:
        return (GOLDEN_DIR / name).read_text(encoding="utf-8")

    return read
