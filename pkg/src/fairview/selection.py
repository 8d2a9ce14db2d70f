"""Selection resolution: topic/keyword -> comment id sets.

The same resolver backs the overview filter, the navigation panel, the
progress counter and the coverage trigger denominators, so all of them
agree on what "the comments of topic X" means: the union of comments with
at least one span for any of the topic's keywords, in canonical corpus
order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .corpus import Corpus
from .pipeline import SpanIndex, TopicScheme


class UnknownSelection(KeyError):
    pass


@dataclass(frozen=True)
class Selection:
    kind: str  # "topic" | "keyword"
    value: str

    @classmethod
    def parse(cls, raw: str) -> "Selection":
        kind, sep, value = raw.partition(":")
        if sep != ":" or kind not in ("topic", "keyword") or not value:
            raise UnknownSelection(f"malformed selection {raw!r}; use topic:<id> or keyword:<term>")
        return cls(kind, value)

    def __str__(self) -> str:
        return f"{self.kind}:{self.value}"


SelectionLike = Union[Selection, str, None]


def as_selection(selection: SelectionLike) -> Optional[Selection]:
    if selection is None or isinstance(selection, Selection):
        return selection
    return Selection.parse(selection)


class SelectionIndex:
    """Precomputed comment-id lists per topic and per keyword."""

    def __init__(self, corpus: Corpus, scheme: TopicScheme, span_index: SpanIndex):
        self._corpus = corpus
        self._scheme = scheme
        order = {cid: i for i, cid in enumerate(corpus.ids())}

        self._by_keyword: dict[str, list[str]] = {}
        for kw in scheme.all_keywords():
            ids = span_index.comment_ids(kw.term)
            self._by_keyword[kw.term] = sorted(set(ids), key=order.__getitem__)

        self._by_topic: dict[str, list[str]] = {}
        for topic in scheme.topics:
            merged: set[str] = set()
            for kw in topic.keywords:
                merged.update(self._by_keyword[kw.term])
            self._by_topic[topic.topic_id] = sorted(merged, key=order.__getitem__)

        self._kw_sets = {term: frozenset(ids) for term, ids in self._by_keyword.items()}
        self._topic_sets = {tid: frozenset(ids) for tid, ids in self._by_topic.items()}
        self._all = corpus.ids()

    @property
    def scheme(self) -> TopicScheme:
        return self._scheme

    def topic_ids(self) -> list[str]:
        return [t.topic_id for t in self._scheme.topics]

    def resolve(self, selection: SelectionLike) -> list[str]:
        """Comment ids matching the selection, in canonical corpus order."""
        sel = as_selection(selection)
        if sel is None:
            return list(self._all)
        if sel.kind == "topic":
            if sel.value not in self._by_topic:
                raise UnknownSelection(f"unknown topic {sel.value!r}")
            return list(self._by_topic[sel.value])
        if sel.value not in self._by_keyword:
            raise UnknownSelection(f"unknown keyword {sel.value!r}")
        return list(self._by_keyword[sel.value])

    def keyword_count(self, comment_id: str, topic_id: str) -> int:
        """How many of the topic's keywords match the comment."""
        topic = self._scheme.topic(topic_id)
        return sum(1 for kw in topic.keywords if comment_id in self._kw_sets[kw.term])

    def topics_of(self, comment_id: str) -> list[str]:
        """Topics whose filtered set contains the comment."""
        return [tid for tid in self._by_topic if comment_id in self._topic_sets[tid]]

    def contains(self, selection: SelectionLike, comment_id: str) -> bool:
        sel = as_selection(selection)
        if sel is None:
            return comment_id in self._corpus
        if sel.kind == "topic":
            if sel.value not in self._topic_sets:
                raise UnknownSelection(f"unknown topic {sel.value!r}")
            return comment_id in self._topic_sets[sel.value]
        if sel.value not in self._kw_sets:
            raise UnknownSelection(f"unknown keyword {sel.value!r}")
        return comment_id in self._kw_sets[sel.value]
