"""Config and environment loading."""

from __future__ import annotations

import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from coverforge.catalog.base import CatalogSettings
from coverforge.core.errors import PreconditionError

_ROOT = Path(__file__).resolve().parents[2]

THREADS_ENV = "COVER_FORGE_THREADS"
LOG_LEVEL_ENV = "COVER_FORGE_LOG_LEVEL"

DEFAULTS: Dict[str, Any] = {
    "engine": {"order": "degrevlex", "resolution_max_steps": 8},
    "catalog": {
        "seed": 20240607,
        "ramification_samples": 50,
        "fiber_samples": 10,
        "output_dir": "output",
    },
    "cli": {"threads": 1, "log_level": "WARNING"},
}


def load_env() -> None:
    """Load .env from project root (silently skips if missing)."""
    load_dotenv(_ROOT / ".env")


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def load_config(config_path: Optional[Path] = None) -> Dict[str, Any]:
    """Load config.yaml over the built-in defaults.

    Without an explicit path a missing project config.yaml just yields the
    defaults; an explicit path must exist.
    """
    path = config_path or (_ROOT / "config.yaml")
    if not path.exists():
        if config_path is not None:
            raise FileNotFoundError(f"config.yaml not found at {path}")
        return copy.deepcopy(DEFAULTS)
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = yaml.safe_load(fh) or {}
        except yaml.YAMLError as exc:
            raise PreconditionError(f"malformed config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise PreconditionError(f"config {path} must be a mapping")
    return _merge(DEFAULTS, data)


def get_threads(cfg: Dict[str, Any]) -> int:
    """COVER_FORGE_THREADS, else cli.threads; must be a positive integer."""
    raw = os.environ.get(THREADS_ENV)
    source = THREADS_ENV
    if raw is None:
        raw = cfg.get("cli", {}).get("threads", 1)
        source = "cli.threads"
    try:
        threads = int(str(raw).strip())
    except ValueError:
        raise PreconditionError(f"{source} must be a positive integer, got {raw!r}") from None
    if threads < 1:
        raise PreconditionError(f"{source} must be a positive integer, got {raw!r}")
    return threads


def get_log_level(cfg: Dict[str, Any]) -> int:
    name = os.environ.get(LOG_LEVEL_ENV) or cfg.get("cli", {}).get("log_level", "WARNING")
    level = logging.getLevelName(str(name).upper())
    if not isinstance(level, int):
        raise PreconditionError(f"unknown log level {name!r}")
    return level


def get_order(cfg: Dict[str, Any]) -> str:
    return str(cfg.get("engine", {}).get("order", "degrevlex"))


def get_max_steps(cfg: Dict[str, Any]) -> int:
    return int(cfg.get("engine", {}).get("resolution_max_steps", 8))


def get_output_dir(cfg: Dict[str, Any]) -> Path:
    out = Path(cfg.get("catalog", {}).get("output_dir", "output"))
    return out if out.is_absolute() else _ROOT / out


def catalog_settings(cfg: Dict[str, Any]) -> CatalogSettings:
    cat = cfg.get("catalog", {})
    return CatalogSettings(
        seed=int(cat.get("seed", CatalogSettings.seed)),
        ramification_samples=int(cat.get("ramification_samples", CatalogSettings.ramification_samples)),
        fiber_samples=int(cat.get("fiber_samples", CatalogSettings.fiber_samples)),
    )
