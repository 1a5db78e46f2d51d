"""JSON run configuration. Defaults are the standard pipeline settings."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any


class ConfigError(ValueError):
    pass


@dataclass
class TopicSettings:
    k: int = 26
    alpha: float | None = None  # 50 / k
    beta: float = 0.01
    iterations: int = 1000
    min_count: int = 1
    stopwords: list[str] = field(default_factory=list)


@dataclass
class InferenceSettings:
    fold_in_iterations: int = 200
    burn_in: int = 50
    max_tokens: int | None = None


@dataclass
class FilterSettings:
    min_sentences: int = 5
    excluded_roles: list[str] = field(default_factory=lambda: ["speaker_of_parliament"])


@dataclass
class WindowSettings:
    span: int = 3
    alignment: str = "trailing"


@dataclass
class SkewnessSettings:
    threshold: float = 0.5
    decimals: int | None = 2
    exclude_posi: bool = True


@dataclass
class TrendSettings:
    r2_min: float = 0.3
    alpha: float = 0.05
    min_points: int = 12


@dataclass
class RunConfig:
    corpus_path: str | None = None
    predictions_path: str | None = None
    model_path: str | None = None
    lexicon_path: str | None = None
    # "appendix_b" swaps corpus-derived prevalences for the bundled table
    crosstable: str | None = None
    topic_labels: dict[str, str] | str | None = None
    seed: int = 0
    out_dir: str = "out"
    formats: list[str] = field(default_factory=lambda: ["csv"])
    elections: list[str] = field(default_factory=list)
    topics: TopicSettings = field(default_factory=TopicSettings)
    inference: InferenceSettings = field(default_factory=InferenceSettings)
    filter: FilterSettings = field(default_factory=FilterSettings)
    windows: WindowSettings = field(default_factory=WindowSettings)
    skewness: SkewnessSettings = field(default_factory=SkewnessSettings)
    trends: TrendSettings = field(default_factory=TrendSettings)
    synth: dict[str, Any] | None = None
    base_dir: str = field(default=".", repr=False)

    def resolve(self, path: str | None) -> Path | None:
        if path is None:
            return None
        p = Path(path)
        return p if p.is_absolute() else Path(self.base_dir) / p

    def snapshot(self) -> dict:
        d = dataclasses.asdict(self)
        d.pop("base_dir")
        return d


_SECTIONS = {
    "topics": TopicSettings,
    "inference": InferenceSettings,
    "filter": FilterSettings,
    "windows": WindowSettings,
    "skewness": SkewnessSettings,
    "trends": TrendSettings,
}


def _build(cls, data: dict, where: str):
    if not isinstance(data, dict):
        raise ConfigError(f"{where} must be a JSON object")
    names = {f.name for f in dataclasses.fields(cls)} - {"base_dir"}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(unknown)}")
    return data


def config_from_dict(data: dict, base_dir: str | Path = ".") -> RunConfig:
    _build(RunConfig, data, "config")
    kwargs = dict(data)
    for key, cls in _SECTIONS.items():
        if key in kwargs:
            kwargs[key] = cls(**_build(cls, kwargs[key], key))
    cfg = RunConfig(**kwargs, base_dir=str(base_dir))
    if cfg.windows.alignment not in ("trailing", "centered"):
        raise ConfigError(f"windows.alignment must be 'trailing' or 'centered', got {cfg.windows.alignment!r}")
    bad = set(cfg.formats) - {"csv", "markdown", "html"}
    if bad:
        raise ConfigError(f"unknown output format(s): {sorted(bad)}")
    return cfg


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON ({e.msg}, line {e.lineno})") from None
    return config_from_dict(data, base_dir=path.parent)
