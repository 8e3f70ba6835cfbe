"""Package logger and its YAML-driven configuration."""

import logging
import logging.config
from pathlib import Path

import yaml

DEFAULT_LOG_CONFIG = Path(__file__).resolve().parent / "log_config.yml"

log = logging.getLogger("djm")


def configure_logging(config_path: Path | None = None, level: str | None = None) -> None:
    """Loads a `dictConfig` YAML file and optionally overrides the `djm` level."""
    with open(config_path or DEFAULT_LOG_CONFIG) as config_fp:
        config = yaml.safe_load(config_fp)

    if level is not None:
        config.setdefault("loggers", {}).setdefault("djm", {})["level"] = level.upper()

    logging.config.dictConfig(config)
    log.debug("Logging configured from %s", config_path or DEFAULT_LOG_CONFIG)
