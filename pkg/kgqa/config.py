"""Layered configuration: defaults, `key = value` file, KGQA_* environment, flags."""

from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union
import logging
import os

import dotenv

from kgqa.errors import ConfigError

logger = logging.getLogger(__name__)

PATH_KEYS = ("embeddings", "templates", "ner_model")
ENV_PREFIX = "KGQA_"
ENV_KEYS = ("alpha", "threshold", "use_crf", "log_level", "rouge_n", "max_workers")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


@dataclass(frozen=True)
class Config:
    triples: List[Path] = field(default_factory=list)
    db_url: Optional[str] = None
    embeddings: Optional[Path] = None
    templates: Optional[Path] = None
    ner_model: Optional[Path] = None
    alpha: float = 0.5
    threshold: float = 0.35
    use_crf: bool = False
    rouge_n: int = 2
    max_workers: int = 1
    log_level: str = "WARNING"

    def validate(self) -> "Config":
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not -1.0 <= self.threshold <= 1.0:
            raise ConfigError(f"threshold must lie in [-1, 1], got {self.threshold}")
        # rouge-score knows rouge1 to rouge9
        if not 1 <= self.rouge_n <= 9:
            raise ConfigError(f"rouge_n must lie in [1, 9], got {self.rouge_n}")
        if self.max_workers < 1:
            raise ConfigError(f"max_workers must be at least 1, got {self.max_workers}")
        if self.log_level not in LOG_LEVELS:
            raise ConfigError(f"Unknown log level {self.log_level!r}")
        for path in [*self.triples, *(getattr(self, key) for key in PATH_KEYS)]:
            if path is not None and not Path(path).exists():
                raise ConfigError(f"Configured path does not exist: {path}")
        return self


def _parse_bool(key: str, value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def _parse_number(key: str, value: str, kind: type) -> Union[int, float]:
    try:
        return kind(value.strip())
    except ValueError as e:
        raise ConfigError(f"{key}: expected {kind.__name__}, got {value!r}") from e


def _resolve(value: str, base: Optional[Path]) -> Path:
    path = Path(value.strip()).expanduser()
    if base is not None and not path.is_absolute():
        path = base / path
    return path


def _coerce(key: str, value: Any, base: Optional[Path]) -> Any:
    """Convert a raw string from a file or the environment to the field type."""
    if key == "triples" and isinstance(value, (list, tuple)):
        return [Path(part) for part in value]
    if key in PATH_KEYS and isinstance(value, Path):
        return value
    if not isinstance(value, str):
        return value
    if key == "triples":
        return [_resolve(part, base) for part in value.split(",") if part.strip()]
    if key in PATH_KEYS:
        return _resolve(value, base) if value.strip() else None
    if key in ("alpha", "threshold"):
        return _parse_number(key, value, float)
    if key in ("rouge_n", "max_workers"):
        return _parse_number(key, value, int)
    if key == "use_crf":
        return _parse_bool(key, value)
    if key == "log_level":
        return value.strip().upper()
    if key == "db_url":
        return value.strip() or None
    raise ConfigError(f"Unknown configuration key {key!r}")


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}")
    try:
        raw = dotenv.dotenv_values(path, encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError(f"Could not read config file {path}: {e}") from e

    base = path.resolve().parent
    values: Dict[str, Any] = {}
    for key, value in raw.items():
        key = key.strip().lower()
        if value is None:
            raise ConfigError(f"{path}: key {key!r} has no value")
        values[key] = _coerce(key, value, base)
    return values


def environment_overrides(environ: Mapping[str, str]) -> Dict[str, Any]:
    values = {}
    for key in ENV_KEYS:
        raw = environ.get(f"{ENV_PREFIX}{key.upper()}")
        if raw is not None and raw.strip():
            values[key] = _coerce(key, raw, None)
    return values


def load_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> Config:
    """Build a validated Config; later layers win over earlier ones.

    `overrides` holds already-parsed flag values; None entries are ignored.
    """
    environ = os.environ if environ is None else environ
    if path is None and environ.get(f"{ENV_PREFIX}CONFIG"):
        path = environ[f"{ENV_PREFIX}CONFIG"]

    values: Dict[str, Any] = {}
    if path is not None:
        values.update(read_config_file(path))
        logger.debug(f"Read config file {path}")
    values.update(environment_overrides(environ))
    values.update(
        {key: _coerce(key, value, None) for key, value in (overrides or {}).items() if value is not None}
    )

    known = {f.name for f in fields(Config)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigError(f"Unknown configuration keys: {', '.join(unknown)}")
    return replace(Config(), **values).validate()
