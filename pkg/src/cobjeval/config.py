"""Runtime configuration.

Sources in ascending precedence: built-in defaults, a JSON config file,
``COBJEVAL_*`` environment variables, explicit overrides (CLI flags).
Unknown keys in the file are rejected so typos fail loudly at startup.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields
from pathlib import Path

from .errors import ConfigError
from .judge import HttpJudgeBackend, JudgeBackend, RecordedJudgeBackend, StubJudgeBackend

ENV_PREFIX = "COBJEVAL_"


@dataclass
class AppConfig:
    store_path: str = "cobjeval.db"
    inbox: str = "inbox"
    report_dir: str = "reports"
    workers: int = 4
    checkers: list[str] = field(default_factory=list)  # empty = all
    judge_backend: str = "none"  # none | stub:<scores> | recorded:<path> | http:<url>
    judge_timeout: float = 60.0
    judge_retries: int = 3
    judge_parallelism: int = 2
    catalog_path: str | None = None
    coverage_model_path: str | None = None

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_INT_KEYS = {"workers", "judge_retries", "judge_parallelism"}
_FLOAT_KEYS = {"judge_timeout"}
_LIST_KEYS = {"checkers"}


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> AppConfig:
    values: dict = {}

    if path is not None:
        file_path = Path(path)
        if not file_path.is_file():
            raise ConfigError(f"config file not found: {path}")
        try:
            data = json.loads(file_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        known = {f.name for f in fields(AppConfig)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        values.update(data)

    for f in fields(AppConfig):
        env_key = ENV_PREFIX + f.name.upper()
        if env_key in os.environ:
            values[f.name] = os.environ[env_key]

    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})

    coerced = {}
    for key, value in values.items():
        if key in _INT_KEYS:
            try:
                coerced[key] = int(value)
            except (TypeError, ValueError):
                raise ConfigError(f"config key {key} must be an integer, got {value!r}")
        elif key in _FLOAT_KEYS:
            try:
                coerced[key] = float(value)
            except (TypeError, ValueError):
                raise ConfigError(f"config key {key} must be a number, got {value!r}")
        elif key in _LIST_KEYS and isinstance(value, str):
            coerced[key] = [item.strip() for item in value.split(",") if item.strip()]
        else:
            coerced[key] = value

    config = AppConfig(**coerced)
    if config.workers < 1:
        raise ConfigError("workers must be >= 1")
    return config


def build_judge_backend(spec: str, timeout: float = 60.0) -> JudgeBackend | None:
    """Materialize a judge backend from its config string.

    ``none``; ``stub:5`` (constant); ``stub:7,5,3`` (cycle);
    ``recorded:<path>``; ``http:<url>``.
    """
    if not spec or spec == "none":
        return None
    kind, _, arg = spec.partition(":")
    if kind == "stub":
        if not arg:
            raise ConfigError("stub judge needs scores, e.g. stub:5 or stub:7,5,3")
        try:
            scores = [int(s) for s in arg.split(",")]
        except ValueError:
            raise ConfigError(f"invalid stub scores: {arg!r}")
        if any(not 1 <= s <= 7 for s in scores):
            raise ConfigError("stub scores must be in 1..7")
        if len(scores) == 1:
            return StubJudgeBackend.constant_score(scores[0])
        return StubJudgeBackend.score_cycle(scores)
    if kind == "recorded":
        if not arg or not Path(arg).exists():
            raise ConfigError(f"recorded judge path not found: {arg!r}")
        return RecordedJudgeBackend(arg)
    if kind == "http":
        if not arg:
            raise ConfigError("http judge needs an endpoint URL")
        return HttpJudgeBackend(arg, timeout=timeout)
    raise ConfigError(f"unknown judge backend kind: {kind!r}")
