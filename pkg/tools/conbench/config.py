"""User-level settings for the conbench CLI."""

import os
from pathlib import Path
from typing import Any, Dict

import tomli
import toml

CONFIG_FILE_ENV = "CONBENCH_CONFIG_FILE"


def get_config_dir() -> Path:
    return Path.home() / ".config" / "conbench"


def get_config_file() -> Path:
    override = os.environ.get(CONFIG_FILE_ENV)
    if override:
        return Path(override).expanduser()
    return get_config_dir() / "config.toml"


def get_log_dir() -> Path:
    return Path.home() / ".local" / "share" / "conbench" / "logs"


DEFAULT_CONFIG = {
    "logging": {
        "level": "info",
        "file": "",
    },
    "run": {
        "threads": 1,
        "out_dir": "results",
    },
}


def _merge(defaults: Dict[str, Any], loaded: Dict[str, Any]) -> Dict[str, Any]:
    merged = {}
    for key, value in defaults.items():
        if isinstance(value, dict):
            merged[key] = _merge(value, loaded.get(key, {}))
        else:
            merged[key] = loaded.get(key, value)
    for key, value in loaded.items():
        merged.setdefault(key, value)
    return merged


def load_config() -> Dict[str, Any]:
    """Loads the settings file, filling gaps from the defaults."""
    config_file = get_config_file()
    if not config_file.exists():
        return _merge(DEFAULT_CONFIG, {})
    with open(config_file, "rb") as f:
        return _merge(DEFAULT_CONFIG, tomli.load(f))


def save_config(config: Dict[str, Any]) -> Path:
    """Saves the settings file."""
    config_file = get_config_file()
    config_file.parent.mkdir(parents=True, exist_ok=True)
    with open(config_file, "w") as f:
        toml.dump(config, f)
    return config_file


def log_file_path(config: Dict[str, Any]) -> Path:
    configured = config.get("logging", {}).get("file")
    if configured:
        return Path(configured).expanduser()
    return get_log_dir() / "conbench.log"
