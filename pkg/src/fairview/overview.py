"""Dual-ring model and per-session overview snapshots.

The ring model is computed once from the topic scheme and span index. A
snapshot is computed per request: the precomputed hexbin layout restricted
to the active selection, each bin annotated with the fraction of its
members the session has already viewed, plus the progress counter. Its
serialized form is the wire contract for the client's overview panel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .corpus import Corpus, SentimentDistribution
from .hexbin import HexBin
from .pipeline import SpanIndex, TopicScheme
from .selection import Selection, SelectionIndex, SelectionLike, as_selection


@dataclass(frozen=True)
class RingArc:
    arc_id: str  # topic id for outer arcs, keyword term for inner arcs
    label: str
    weight: int
    parent: Optional[str] = None  # inner arcs point at their topic


@dataclass(frozen=True)
class RingModel:
    outer: tuple[RingArc, ...]
    inner: tuple[RingArc, ...]

    def to_dict(self) -> dict:
        return {
            "outer": [
                {"topic_id": a.arc_id, "label": a.label, "weight": a.weight} for a in self.outer
            ],
            "inner": [
                {"keyword": a.arc_id, "topic_id": a.parent, "weight": a.weight}
                for a in self.inner
            ],
        }


def build_rings(scheme: TopicScheme, span_index: SpanIndex, corpus: Corpus) -> RingModel:
    """Outer arcs weighted by distinct matching comments per topic, inner per keyword.

    Keywords with zero matches keep their arc with weight 0 so the client
    can still render (and select) them.
    """
    outer = []
    inner = []
    for topic in scheme.topics:
        topic_members: set[str] = set()
        for kw in topic.keywords:
            ids = set(span_index.comment_ids(kw.term))
            topic_members.update(ids)
            inner.append(RingArc(kw.term, kw.term, len(ids), parent=topic.topic_id))
        outer.append(RingArc(topic.topic_id, topic.category, len(topic_members)))
    return RingModel(tuple(outer), tuple(inner))


@dataclass(frozen=True)
class BinView:
    bin_id: str
    q: int
    r: int
    size: int
    sentiment_mix: SentimentDistribution
    mask_fraction: float

    def to_dict(self) -> dict:
        return {
            "bin_id": self.bin_id,
            "q": self.q,
            "r": self.r,
            "size": self.size,
            "sentiment_mix": self.sentiment_mix.to_dict(),
            "mask_fraction": self.mask_fraction,
        }


@dataclass(frozen=True)
class OverviewSnapshot:
    bins: tuple[BinView, ...]
    rings: RingModel
    viewed: int
    total: int
    selection: Optional[Selection]

    def to_dict(self) -> dict:
        return {
            "bins": [b.to_dict() for b in self.bins],
            "rings": self.rings.to_dict(),
            "progress": {"viewed": self.viewed, "total": self.total},
            "selection": str(self.selection) if self.selection else None,
        }


def overview_state(
    bins: Sequence[HexBin],
    rings: RingModel,
    corpus: Corpus,
    index: SelectionIndex,
    viewed_ids: set[str],
    selection: SelectionLike = None,
) -> OverviewSnapshot:
    """Snapshot of the hexbin layout for one session.

    Bins are restricted to comments matching the selection (bins left empty
    by the filter are dropped); mask_fraction is the viewed share of each
    bin's visible members. Progress counts viewed over the selected set.
    """
    sel = as_selection(selection)
    selected = index.resolve(sel)
    selected_set = set(selected)

    views = []
    for b in bins:
        members = [cid for cid in b.comment_ids if cid in selected_set]
        if not members:
            continue
        seen = sum(1 for cid in members if cid in viewed_ids)
        mix = SentimentDistribution.from_labels(corpus.get(cid).sentiment for cid in members)
        views.append(BinView(b.bin_id, b.q, b.r, len(members), mix, seen / len(members)))

    viewed_count = sum(1 for cid in selected if cid in viewed_ids)
    return OverviewSnapshot(tuple(views), rings, viewed_count, len(selected), sel)
