"""Comment ordering and opposite-sentiment recommendation.

The navigation engine reads only immutable artifacts (corpus, embeddings,
selection index) plus a session's viewed set, so it is safe under
concurrent sessions. Ordering deliberately leads with disagreement: each
topic opens on its most semantically similar positive/negative pair, then
alternates polarity, with neutral comments interleaved every third slot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .corpus import Corpus, SentimentLabel
from .pipeline import EmbeddingMatrix
from .selection import SelectionIndex, SelectionLike, as_selection


@dataclass(frozen=True)
class ContrastPair:
    first_id: str  # earlier of the two in corpus order
    second_id: str
    similarity: float

    def ids(self) -> tuple[str, str]:
        return (self.first_id, self.second_id)


@dataclass(frozen=True)
class CommentStream:
    topic_id: str
    comment_ids: tuple[str, ...]
    contrast_pair: Optional[ContrastPair]


class NavigationEngine:
    def __init__(self, corpus: Corpus, embeddings: EmbeddingMatrix, index: SelectionIndex):
        self._corpus = corpus
        self._emb = embeddings
        self._index = index
        norms = np.linalg.norm(embeddings.vectors, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        self._unit = embeddings.vectors / norms
        self._streams: dict[str, CommentStream] = {}

    def filter_by_selection(self, selection: SelectionLike) -> list[str]:
        return self._index.resolve(selection)

    def find_contrast_pair(self, topic_id: str) -> Optional[ContrastPair]:
        """Most similar (positive, negative) pair within the topic.

        Ties on cosine break by corpus order of the earlier member, then of
        the later one. Absent when the topic lacks either polarity.
        """
        members = self._index.resolve(f"topic:{topic_id}")
        pos = [cid for cid in members if self._label(cid) is SentimentLabel.POSITIVE]
        neg = [cid for cid in members if self._label(cid) is SentimentLabel.NEGATIVE]
        if not pos or not neg:
            return None

        prow = np.array([self._emb.row(cid) for cid in pos])
        nrow = np.array([self._emb.row(cid) for cid in neg])
        sims = self._unit[prow] @ self._unit[nrow].T
        top = sims.max()

        best: Optional[tuple[int, int]] = None
        for i, j in np.argwhere(sims == top):
            a, b = sorted((self._corpus.position(pos[i]), self._corpus.position(neg[j])))
            if best is None or (a, b) < best:
                best = (a, b)
        ids = self._corpus.ids()
        return ContrastPair(ids[best[0]], ids[best[1]], float(top))

    def order_topic_comments(self, topic_id: str) -> CommentStream:
        """Stream for a topic: contrast pair first, then alternating polarity.

        Within each polarity, comments are drawn by descending count of the
        topic's keywords they match, tie-broken by corpus order. Every
        third post-pair slot goes to a neutral comment while any remain;
        exhausted polarities fall through to the other side, then to
        neutrals.
        """
        cached = self._streams.get(topic_id)
        if cached is not None:
            return cached

        members = self._index.resolve(f"topic:{topic_id}")
        pair = self.find_contrast_pair(topic_id)

        def draw_key(cid: str) -> tuple[int, int]:
            return (-self._index.keyword_count(cid, topic_id), self._corpus.position(cid))

        taken = set(pair.ids()) if pair else set()
        queues: dict[SentimentLabel, list[str]] = {
            SentimentLabel.POSITIVE: [],
            SentimentLabel.NEGATIVE: [],
            SentimentLabel.NEUTRAL: [],
        }
        for cid in members:
            if cid not in taken:
                queues[self._label(cid) or SentimentLabel.NEUTRAL].append(cid)
        for q in queues.values():
            q.sort(key=draw_key)

        ordered: list[str] = list(pair.ids()) if pair else []
        want = _opposite(self._label(pair.second_id)) if pair else SentimentLabel.POSITIVE

        slot = 0
        while any(queues.values()):
            slot += 1
            if slot % 3 == 0 and queues[SentimentLabel.NEUTRAL]:
                ordered.append(queues[SentimentLabel.NEUTRAL].pop(0))
                continue
            pick = SentimentLabel.NEUTRAL
            for label in (want, _opposite(want)):
                if label is not None and queues[label]:
                    pick = label
                    break
            ordered.append(queues[pick].pop(0))
            if pick is not SentimentLabel.NEUTRAL:
                want = _opposite(pick)

        stream = CommentStream(topic_id, tuple(ordered), pair)
        self._streams[topic_id] = stream
        return stream

    def recommend_opposite(
        self,
        viewed_ids: set[str],
        anchor_id: str,
        scope: SelectionLike = None,
    ) -> Optional[str]:
        """Unviewed comment of opposite sentiment most similar to the anchor.

        Scoped to the active selection when one is set. Neutral anchors get
        no recommendation. Never returns a viewed id or the anchor itself.
        """
        target = _opposite(self._label(anchor_id))
        if target is None:
            return None
        candidates = [
            cid
            for cid in self._index.resolve(as_selection(scope))
            if cid != anchor_id and cid not in viewed_ids and self._label(cid) is target
        ]
        if not candidates:
            return None

        rows = np.array([self._emb.row(cid) for cid in candidates])
        sims = self._unit[rows] @ self._unit[self._emb.row(anchor_id)]
        top = sims.max()
        pick = min(
            (self._corpus.position(candidates[i]) for i in np.flatnonzero(sims == top)),
        )
        return self._corpus.ids()[pick]

    def stream_page(
        self, topic_id: str, cursor: int, page_size: int, viewed_ids: set[str]
    ) -> dict:
        """One page of the topic stream with recommendation annotation."""
        stream = self.order_topic_comments(topic_id)
        page = stream.comment_ids[cursor : cursor + page_size]
        recommended = None
        if page:
            recommended = self.recommend_opposite(viewed_ids, page[-1], f"topic:{topic_id}")
        return {
            "topic_id": topic_id,
            "cursor": cursor,
            "next_cursor": (
                cursor + len(page) if cursor + len(page) < len(stream.comment_ids) else None
            ),
            "total": len(stream.comment_ids),
            "comment_ids": list(page),
            "contrast_pair": list(stream.contrast_pair.ids()) if stream.contrast_pair else None,
            "recommended_opposite": recommended,
        }

    def _label(self, comment_id: str) -> Optional[SentimentLabel]:
        return self._corpus.get(comment_id).sentiment


def _opposite(label: Optional[SentimentLabel]) -> Optional[SentimentLabel]:
    if label is SentimentLabel.POSITIVE:
        return SentimentLabel.NEGATIVE
    if label is SentimentLabel.NEGATIVE:
        return SentimentLabel.POSITIVE
    return None
