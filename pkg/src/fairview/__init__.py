"""fairview: structure a comment corpus and keep its readers balanced.

The package turns a raw comment file into an explorable landscape
(embeddings, 2D layout, hexbins, topics, per-keyword spans), tracks a
reader's live session, fires bias-aware reminders, and collects evidence
into an exportable synthesis board. Everything runs offline by default;
model-backed providers are optional drop-ins.
"""

from .corpus import (
    Comment,
    Corpus,
    CorpusError,
    SentimentDistribution,
    SentimentLabel,
    corpus_stats,
    ingest_corpus,
    serialize_corpus,
)
from .config import EngineConfig, PipelineConfig, ProviderConfig, load_config
from .engine import Engine
from .reminders import TriggerConfig

__version__ = "0.1.0"

__all__ = [
    "Comment",
    "Corpus",
    "CorpusError",
    "Engine",
    "EngineConfig",
    "PipelineConfig",
    "ProviderConfig",
    "SentimentDistribution",
    "SentimentLabel",
    "TriggerConfig",
    "corpus_stats",
    "ingest_corpus",
    "load_config",
    "serialize_corpus",
    "__version__",
]
