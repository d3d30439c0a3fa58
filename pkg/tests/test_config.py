from __future__ import annotations

import logging

import pytest

from coverforge.config.loader import (
    DEFAULTS,
    catalog_settings,
    get_log_level,
    get_max_steps,
    get_order,
    get_output_dir,
    get_threads,
    load_config,
)
from coverforge.core.errors import PreconditionError


def test_overrides_merge_over_defaults(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("catalog:\n  seed: 7\nengine:\n  order: lex\n", encoding="utf-8")
    cfg = load_config(path)
    assert cfg["catalog"]["seed"] == 7
    assert cfg["catalog"]["fiber_samples"] == DEFAULTS["catalog"]["fiber_samples"]
    assert get_order(cfg) == "lex"
    assert get_max_steps(cfg) == 8


def test_empty_file_gives_defaults(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("", encoding="utf-8")
    assert load_config(path) == DEFAULTS


def test_explicit_missing_path_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "nope.yaml")


@pytest.mark.parametrize("text", ["engine: [unclosed\n", "- a\n- b\n"])
def test_malformed_config(tmp_path, text):
    path = tmp_path / "config.yaml"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(PreconditionError):
        load_config(path)


def test_threads_from_env_beats_config(monkeypatch):
    cfg = {"cli": {"threads": 2}}
    assert get_threads(cfg) == 2
    monkeypatch.setenv("COVER_FORGE_THREADS", "5")
    assert get_threads(cfg) == 5


@pytest.mark.parametrize("raw", ["0", "-1", "many"])
def test_invalid_threads(monkeypatch, raw):
    monkeypatch.setenv("COVER_FORGE_THREADS", raw)
    with pytest.raises(PreconditionError, match="COVER_FORGE_THREADS"):
        get_threads(DEFAULTS)


def test_log_level(monkeypatch):
    assert get_log_level(DEFAULTS) == logging.WARNING
    monkeypatch.setenv("COVER_FORGE_LOG_LEVEL", "debug")
    assert get_log_level(DEFAULTS) == logging.DEBUG
    monkeypatch.setenv("COVER_FORGE_LOG_LEVEL", "loud")
    with pytest.raises(PreconditionError):
        get_log_level(DEFAULTS)


def test_catalog_settings_and_output_dir(tmp_path):
    cfg = {"catalog": {"seed": 3, "fiber_samples": 4, "output_dir": str(tmp_path)}}
    settings = catalog_settings(cfg)
    assert (settings.seed, settings.fiber_samples, settings.ramification_samples) == (3, 4, 50)
    assert get_output_dir(cfg) == tmp_path
    assert get_output_dir(DEFAULTS).name == "output"
    assert get_output_dir(DEFAULTS).is_absolute()
