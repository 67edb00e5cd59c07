from __future__ import annotations

import logging
from typing import Any, Mapping, Optional

from config import Config
from .settings import load_settings_file


_settings: dict[str, Any] = {}

LOG_LEVELS = {
    "off": logging.WARNING,
    "warning": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
    "trace": logging.DEBUG,
}


def configure(
    config_class: type[Config] = Config,
    overrides: Optional[Mapping[str, Any]] = None,
) -> dict[str, Any]:
    settings = {key: getattr(config_class, key) for key in dir(config_class) if key.isupper()}

    settings_file = (overrides or {}).get("settings_file") or settings.get("SETTINGS_FILE")
    if settings_file:
        settings.update(load_settings_file(settings_file))

    for key, value in (overrides or {}).items():
        if value is not None and key != "settings_file":
            settings[key.upper()] = value

    configure_logging(str(settings.get("LOG_LEVEL") or "off"))

    _settings.clear()
    _settings.update(settings)
    return _settings


def current_config() -> dict[str, Any]:
    if not _settings:
        configure()
    return _settings


def configure_logging(level_name: str) -> None:
    level = LOG_LEVELS.get(level_name.strip().lower())
    if level is None:
        raise ValueError(f"Unknown log level {level_name!r}; use one of {', '.join(LOG_LEVELS)}.")

    logger = logging.getLogger("ordseek")
    logger.setLevel(level)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        logger.addHandler(handler)
    logger.propagate = False
