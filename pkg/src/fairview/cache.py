"""Disk cache for pipeline artifacts.

The pipeline is a one-time preprocessing stage; its outputs are cached
keyed by a content hash of (corpus bytes, pipeline config, provider
choice). Arrays are stored as raw .npy (no archive timestamps), everything
else as canonical JSON, so a cached bundle and a freshly computed one
serialize to identical bytes.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import Corpus, SentimentLabel
from .hexbin import HexBin
from .pipeline import EmbeddingMatrix, Keyword, Span, SpanIndex, Topic, TopicScheme
from .projection import Point2D


@dataclass(frozen=True)
class ArtifactBundle:
    corpus: Corpus  # labeled
    embeddings: EmbeddingMatrix
    keywords: tuple[Keyword, ...]
    scheme: TopicScheme
    span_index: SpanIndex
    points: tuple[Point2D, ...]
    bins: tuple[HexBin, ...]


def artifact_key(corpus_bytes: bytes, pipeline_fingerprint: dict) -> str:
    h = hashlib.sha256()
    h.update(corpus_bytes)
    h.update(json.dumps(pipeline_fingerprint, sort_keys=True).encode("utf-8"))
    return h.hexdigest()[:32]


def _bundle_doc(bundle: ArtifactBundle) -> dict:
    return {
        "labels": {
            c.id: c.sentiment.value if c.sentiment else None for c in bundle.corpus.comments
        },
        "keywords": [
            {"term": k.term, "score": k.score, "doc_freq": k.doc_freq, "topic_id": k.topic_id}
            for k in bundle.keywords
        ],
        "scheme": [
            {
                "topic_id": t.topic_id,
                "category": t.category,
                "description": t.description,
                "keywords": [k.term for k in t.keywords],
            }
            for t in bundle.scheme.topics
        ],
        "spans": {
            term: [[s.comment_id, s.start, s.end] for s in spans]
            for term, spans in sorted(bundle.span_index.spans.items())
        },
        "bins": [
            {
                "bin_id": b.bin_id,
                "q": b.q,
                "r": b.r,
                "depth": b.depth,
                "cell_size": b.cell_size,
                "comment_ids": list(b.comment_ids),
            }
            for b in bundle.bins
        ],
        "point_ids": [p.comment_id for p in bundle.points],
        "embedding_ids": list(bundle.embeddings.ids),
    }


def bundle_fingerprint(bundle: ArtifactBundle) -> bytes:
    """Canonical byte serialization used to compare cached vs fresh artifacts."""
    doc = json.dumps(_bundle_doc(bundle), sort_keys=True, separators=(",", ":")).encode("utf-8")
    coords = np.array([[p.x, p.y] for p in bundle.points], dtype=np.float64)
    return doc + b"\x00" + bundle.embeddings.vectors.tobytes() + b"\x00" + coords.tobytes()


def save_artifacts(cache_dir: Path, key: str, bundle: ArtifactBundle) -> Path:
    target = cache_dir / key
    target.mkdir(parents=True, exist_ok=True)
    doc = _bundle_doc(bundle)
    (target / "bundle.json").write_text(
        json.dumps(doc, sort_keys=True, separators=(",", ":")), encoding="utf-8"
    )
    np.save(target / "embeddings.npy", bundle.embeddings.vectors)
    coords = np.array([[p.x, p.y] for p in bundle.points], dtype=np.float64)
    np.save(target / "points.npy", coords)
    return target


def has_artifacts(cache_dir: Path, key: str) -> bool:
    target = cache_dir / key
    return all(
        (target / name).exists() for name in ("bundle.json", "embeddings.npy", "points.npy")
    )


def load_artifacts(cache_dir: Path, key: str, raw_corpus: Corpus) -> ArtifactBundle:
    target = cache_dir / key
    doc = json.loads((target / "bundle.json").read_text(encoding="utf-8"))
    vectors = np.load(target / "embeddings.npy")
    coords = np.load(target / "points.npy")

    labels = {
        cid: SentimentLabel.parse(lab) for cid, lab in doc["labels"].items() if lab is not None
    }
    corpus = raw_corpus.with_sentiments(labels)
    embeddings = EmbeddingMatrix(tuple(doc["embedding_ids"]), vectors)

    kw_by_term = {}
    keywords = []
    for k in doc["keywords"]:
        kw = Keyword(term=k["term"], score=k["score"], doc_freq=k["doc_freq"], topic_id=k["topic_id"])
        keywords.append(kw)
        kw_by_term[kw.term] = kw

    topics = []
    for t in doc["scheme"]:
        topics.append(
            Topic(
                topic_id=t["topic_id"],
                category=t["category"],
                description=t["description"],
                keywords=tuple(kw_by_term[term] for term in t["keywords"]),
            )
        )
    scheme = TopicScheme(tuple(topics))

    span_index = SpanIndex(
        {
            term: tuple(Span(cid, start, end) for cid, start, end in spans)
            for term, spans in doc["spans"].items()
        }
    )

    points = tuple(
        Point2D(cid, float(coords[i, 0]), float(coords[i, 1]))
        for i, cid in enumerate(doc["point_ids"])
    )

    bins = tuple(
        HexBin(
            bin_id=b["bin_id"],
            q=b["q"],
            r=b["r"],
            depth=b["depth"],
            cell_size=b["cell_size"],
            comment_ids=tuple(b["comment_ids"]),
            sentiment_mix=_mix(corpus, b["comment_ids"]),
        )
        for b in doc["bins"]
    )
    return ArtifactBundle(corpus, embeddings, tuple(keywords), scheme, span_index, points, bins)


def _mix(corpus: Corpus, ids: list[str]):
    from .corpus import SentimentDistribution

    return SentimentDistribution.from_labels(corpus.get(cid).sentiment for cid in ids)
