"""Configuration loading."""

from coverforge.config.loader import load_config, load_env

__all__ = ["load_config", "load_env"]
