from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml


SETTING_TYPES: dict[str, type] = {
    "LOG_LEVEL": str,
    "KARATSUBA_THRESHOLD": int,
    "SCAN_LIMIT": int,
    "ORACLE_CAP": int,
    "THREADS": int,
    "WINDOW_FACTOR": int,
}


def load_settings_file(path: str) -> dict[str, Any]:
    """Read a YAML settings file whose keys override ``Config`` attributes."""
    settings_path = Path(path)
    try:
        raw = yaml.safe_load(settings_path.read_text(encoding="utf-8")) or {}
    except FileNotFoundError as exc:
        raise ValueError(f"Settings file {path} could not be found") from exc
    except yaml.YAMLError as exc:
        raise ValueError(f"Invalid settings YAML: {exc}") from exc

    if not isinstance(raw, dict):
        raise ValueError("Settings file must define a YAML mapping at the top level")

    settings: dict[str, Any] = {}
    for key, value in raw.items():
        name = str(key).upper()
        caster = SETTING_TYPES.get(name)
        if caster is None:
            raise ValueError(f"Unknown setting {key!r} in {path}")
        try:
            settings[name] = caster(value)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"Setting {key!r} must be of type {caster.__name__}") from exc
    return settings
