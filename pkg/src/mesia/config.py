"""Pipeline configuration: JSON file, ``MESIA_CONFIG`` env var, CLI overrides."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping, Optional

from mesia.errors import ConfigError
from mesia.lexer import DEFAULT_SPLIT_VARIANT, SPLIT_VARIANTS, StopWordList

ENV_VAR = "MESIA_CONFIG"

_CHOICES = {
    "log_base": ("2", "e"),
    "split_variant": SPLIT_VARIANTS,
    "dedup_equality": ("raw", "token"),
    "drop_remainder_side": ("high", "low"),
    "bleu_variant": ("corpus", "sentence-smoothed"),
    "smoothing": ("add-vocab",),
}


@dataclass(frozen=True)
class PipelineConfig:
    log_base: str = "2"
    stopword_path: Optional[str] = None
    signature_types_in_code: bool = True
    split_variant: str = DEFAULT_SPLIT_VARIANT
    dedup_equality: str = "raw"
    drop_remainder_side: str = "high"
    bleu_variant: str = "corpus"
    bleu_stemmed: bool = False
    # unseen words: p = 1 / (total + vocab_size)
    smoothing: str = "add-vocab"

    def __post_init__(self) -> None:
        if isinstance(self.log_base, (int, float)) and not isinstance(self.log_base, bool):
            object.__setattr__(self, "log_base", "2" if self.log_base == 2 else str(self.log_base))
        for name, allowed in _CHOICES.items():
            value = getattr(self, name)
            if value not in allowed:
                raise ConfigError(f"{name} must be one of {list(allowed)}, got {value!r}")
        for name in ("signature_types_in_code", "bleu_stemmed"):
            if not isinstance(getattr(self, name), bool):
                raise ConfigError(f"{name} must be true or false")
        if self.stopword_path is not None and not Path(self.stopword_path).is_file():
            raise ConfigError(f"stop-word file not found: {self.stopword_path}")

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> PipelineConfig:
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**d)

    @classmethod
    def load(cls, path: str | Path) -> PipelineConfig:
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must hold a JSON object")
        return cls.from_dict(data)

    @classmethod
    def from_env(cls, overrides: Mapping[str, Any] | None = None) -> PipelineConfig:
        """Config from ``$MESIA_CONFIG`` (if set) with non-None overrides applied."""
        path = os.environ.get(ENV_VAR)
        base = cls.load(path) if path else cls()
        changes = {k: v for k, v in (overrides or {}).items() if v is not None}
        if not changes:
            return base
        return replace(base, **changes)

    def stopwords(self) -> StopWordList:
        if self.stopword_path:
            return StopWordList.load(self.stopword_path)
        return StopWordList.default()

    def to_dict(self) -> dict:
        return asdict(self)
