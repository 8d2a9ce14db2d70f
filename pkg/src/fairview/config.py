"""Engine configuration.

Loaded from a JSON file and/or CLI flags; every numeric constant that
shapes the precomputed artifacts lives here so a (corpus, config) pair
fully determines the pipeline output. Generator credentials are taken from
the environment variable named in ``generator_api_key_env``, never from
the config file body.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Optional

from .reminders import TriggerConfig

# Calibrated on the bundled fixture: the cell size that maximizes the
# median occupied-bin size (5 at capacity 15; the subdivision policy caps
# how full the median bin can get on a center-heavy layout).
DEFAULT_CELL_SIZE = 0.14


@dataclass(frozen=True)
class PipelineConfig:
    keyword_count: int = 20
    topic_count: int = 6
    bin_capacity: int = 15
    cell_size: float = DEFAULT_CELL_SIZE
    seed: int = 7
    embedding_dim: int = 256
    projection: str = "auto"  # auto | linear | neighbor

    def __post_init__(self):
        if self.keyword_count < self.topic_count:
            raise ValueError("keyword_count must be >= topic_count")
        if self.bin_capacity < 1:
            raise ValueError("bin_capacity must be >= 1")
        if not self.cell_size > 0:
            raise ValueError("cell_size must be > 0")
        if self.projection not in ("auto", "linear", "neighbor"):
            raise ValueError(f"unknown projection method {self.projection!r}")


@dataclass(frozen=True)
class ProviderConfig:
    embedding: str = "hash"  # "hash" or "model:<sentence-transformers name>"
    sentiment: str = "lexicon"  # "lexicon" or "model:<transformers name>"
    generator_base_url: Optional[str] = None
    generator_model: Optional[str] = None
    generator_api_key_env: str = "FAIRVIEW_API_KEY"


@dataclass(frozen=True)
class EngineConfig:
    corpus_path: Path
    bind: str = "127.0.0.1:8000"
    offline: bool = False
    cache_dir: Optional[Path] = None
    session_dir: Optional[Path] = None
    trigger: TriggerConfig = field(default_factory=TriggerConfig)
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    providers: ProviderConfig = field(default_factory=ProviderConfig)

    def public_dict(self) -> dict:
        """Config as served by the read-only endpoint (no paths, no key names)."""
        return {
            "trigger": {
                "delta_theta": self.trigger.delta_theta,
                "coverage_threshold": self.trigger.coverage_threshold,
                "rearm_policy": self.trigger.rearm_policy,
                "generator_timeout": self.trigger.generator_timeout,
            },
            "pipeline": asdict(self.pipeline),
            "offline": self.offline,
        }


def load_config(
    path: Optional[Path] = None,
    corpus: Optional[Path] = None,
    bind: Optional[str] = None,
    offline: Optional[bool] = None,
) -> EngineConfig:
    """Config file plus CLI overrides; flags win over file values."""
    raw: dict = {}
    if path is not None:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))

    trigger = TriggerConfig(**raw.get("trigger", {}))
    pipeline = PipelineConfig(**raw.get("pipeline", {}))
    providers = ProviderConfig(**raw.get("providers", {}))

    corpus_path = corpus or raw.get("corpus_path")
    if corpus_path is None:
        raise ValueError("a corpus path is required (config 'corpus_path' or --corpus)")

    config = EngineConfig(
        corpus_path=Path(corpus_path),
        bind=raw.get("bind", "127.0.0.1:8000"),
        offline=bool(raw.get("offline", False)),
        cache_dir=Path(raw["cache_dir"]) if raw.get("cache_dir") else None,
        session_dir=Path(raw["session_dir"]) if raw.get("session_dir") else None,
        trigger=trigger,
        pipeline=pipeline,
        providers=providers,
    )
    if bind is not None:
        config = replace(config, bind=bind)
    if offline:
        config = replace(config, offline=True)
    return config
