"""Builders for hand-crafted engines with planted artifacts."""

import io
import json
from dataclasses import replace
from pathlib import Path

import numpy as np

from fairview.cache import ArtifactBundle
from fairview.config import EngineConfig, PipelineConfig
from fairview.corpus import ingest_corpus
from fairview.engine import Engine
from fairview.hexbin import build_hexbins
from fairview.pipeline import (
    EmbeddingMatrix,
    Keyword,
    Topic,
    TopicScheme,
    index_keyword_spans,
)
from fairview.projection import project_2d
from fairview.providers import HashedBowEmbedder
from fairview.reminders import TriggerConfig

from conftest import FakeClock


def corpus_from(records):
    return ingest_corpus(io.StringIO("\n".join(json.dumps(r) for r in records) + "\n"))


def scheme_from(keyword_groups):
    """keyword_groups: list of (category, [terms]); padded to 6 topics."""
    groups = list(keyword_groups)
    pad = 0
    while len(groups) < 6:
        pad += 1
        groups.append((f"Unused {pad}", [f"unusedkw{pad}"]))
    topics = []
    for i, (category, terms) in enumerate(groups, start=1):
        tid = f"topic-{i}"
        kws = tuple(Keyword(term=t, score=1.0, doc_freq=0, topic_id=tid) for t in terms)
        topics.append(Topic(topic_id=tid, category=category, description="", keywords=kws))
    return TopicScheme(tuple(topics))


def build_engine(
    records,
    keyword_groups,
    vectors=None,
    trigger: TriggerConfig = None,
    generator=None,
    clock=None,
):
    """Engine over a synthetic corpus with a handcrafted topic scheme.

    ``vectors`` plants the embedding matrix directly (corpus order);
    otherwise the hashed fallback embedder runs.
    """
    corpus = corpus_from(records)
    if vectors is not None:
        embeddings = EmbeddingMatrix(tuple(corpus.ids()), np.asarray(vectors, dtype=np.float64))
    else:
        embedder = HashedBowEmbedder(64)
        embeddings = EmbeddingMatrix(
            tuple(corpus.ids()), embedder.embed_texts([c.text for c in corpus.comments])
        )

    scheme = scheme_from(keyword_groups)
    span_index = index_keyword_spans(corpus, scheme.all_keywords())
    points = tuple(project_2d(embeddings, method="linear"))
    bins = tuple(build_hexbins(points, capacity=15, cell_size=0.5, corpus=corpus))
    keywords = tuple(scheme.all_keywords())

    bundle = ArtifactBundle(corpus, embeddings, keywords, scheme, span_index, points, bins)
    config = EngineConfig(
        corpus_path=Path("synthetic-unused"),
        offline=True,
        trigger=trigger or TriggerConfig(),
        pipeline=PipelineConfig(),
    )
    return Engine(config, bundle, generator=generator, clock=clock or FakeClock())


def topic_records(term, n, labels, start=1):
    """n records all containing ``term``, with the given sentiment cycle."""
    out = []
    for i in range(n):
        label = labels[i % len(labels)]
        out.append(
            {
                "id": f"{term[:3]}{start + i:04d}",
                "text": f"the {term} number {start + i} was noted",
                "gold_sentiment": label,
            }
        )
    return out
