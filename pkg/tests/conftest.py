import itertools
from pathlib import Path

import pytest

from fairview.config import EngineConfig, PipelineConfig
from fairview.engine import Engine

FIXTURE = Path(__file__).resolve().parent.parent / "data" / "hotel_comments.jsonl"


class FakeClock:
    """Deterministic monotonic clock for reproducible event timestamps."""

    def __init__(self, start: float = 1000.0, step: float = 1.0):
        self._ticks = itertools.count()
        self.start = start
        self.step = step

    def __call__(self) -> float:
        return self.start + next(self._ticks) * self.step


@pytest.fixture(scope="session")
def fixture_path() -> Path:
    return FIXTURE


@pytest.fixture(scope="session")
def offline_engine() -> Engine:
    """Engine over the bundled 574-comment fixture, all fallback providers."""
    config = EngineConfig(corpus_path=FIXTURE, offline=True)
    return Engine.build(config, clock=FakeClock())


def make_engine(corpus_path, **pipeline_kwargs) -> Engine:
    config = EngineConfig(
        corpus_path=Path(corpus_path),
        offline=True,
        pipeline=PipelineConfig(**pipeline_kwargs),
    )
    return Engine.build(config, clock=FakeClock())
