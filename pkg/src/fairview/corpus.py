"""Comment corpus model and ingestion.

A corpus is a line-delimited UTF-8 file, one JSON record per line:

    {"id": "c0001", "text": "...", "gold_sentiment": "positive",
     "lang": "en", "source": "..."}

``id`` and ``text`` are required; the rest are optional. ``gold_sentiment``,
when present, pins the sentiment label and bypasses any classifier, which
keeps fixture-driven tests exact. File order is the canonical corpus order
used for deterministic tie-breaking everywhere downstream. See
docs/corpus-format.md for the full schema.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import IO, Iterable, Optional, Sequence, Union


class CorpusError(ValueError):
    """Raised for malformed corpus files; carries the offending line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SentimentLabel(str, enum.Enum):
    POSITIVE = "positive"
    NEUTRAL = "neutral"
    NEGATIVE = "negative"

    @classmethod
    def parse(cls, value: str) -> "SentimentLabel":
        try:
            return cls(value)
        except ValueError:
            raise ValueError(f"unknown sentiment label: {value!r}") from None


@dataclass(frozen=True)
class Comment:
    id: str
    text: str
    sentiment: Optional[SentimentLabel] = None
    lang: Optional[str] = None
    source: Optional[str] = None
    gold_sentiment: Optional[SentimentLabel] = None

    def __post_init__(self):
        if not self.text:
            raise ValueError(f"comment {self.id!r} has empty text")


@dataclass(frozen=True)
class SentimentDistribution:
    """Counts and fractions of the three labels over some comment set.

    Fractions are 0 when the set is empty; callers that divide by them are
    expected to guard on ``n_total`` first.
    """

    n_total: int
    n_pos: int
    n_neu: int
    n_neg: int
    p_pos: float
    p_neu: float
    p_neg: float

    @classmethod
    def from_counts(cls, n_pos: int, n_neu: int, n_neg: int) -> "SentimentDistribution":
        n = n_pos + n_neu + n_neg
        if n > 0:
            return cls(n, n_pos, n_neu, n_neg, n_pos / n, n_neu / n, n_neg / n)
        return cls(0, 0, 0, 0, 0.0, 0.0, 0.0)

    @classmethod
    def from_labels(cls, labels: Iterable[Optional[SentimentLabel]]) -> "SentimentDistribution":
        pos = neu = neg = 0
        for lab in labels:
            if lab is SentimentLabel.POSITIVE:
                pos += 1
            elif lab is SentimentLabel.NEUTRAL:
                neu += 1
            elif lab is SentimentLabel.NEGATIVE:
                neg += 1
        return cls.from_counts(pos, neu, neg)

    def to_dict(self) -> dict:
        return {
            "n_total": self.n_total,
            "n_pos": self.n_pos,
            "n_neu": self.n_neu,
            "n_neg": self.n_neg,
            "p_pos": self.p_pos,
            "p_neu": self.p_neu,
            "p_neg": self.p_neg,
        }


@dataclass(frozen=True)
class Corpus:
    """Immutable ordered collection of comments, safe to share across sessions."""

    comments: tuple[Comment, ...]
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for pos, c in enumerate(self.comments):
            if c.id in index:
                raise ValueError(f"duplicate comment id {c.id!r}")
            index[c.id] = pos
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.comments)

    def __contains__(self, comment_id: str) -> bool:
        return comment_id in self._index

    def get(self, comment_id: str) -> Comment:
        try:
            return self.comments[self._index[comment_id]]
        except KeyError:
            raise KeyError(f"unknown comment id {comment_id!r}") from None

    def position(self, comment_id: str) -> int:
        """Canonical 0-based position of a comment in file order."""
        try:
            return self._index[comment_id]
        except KeyError:
            raise KeyError(f"unknown comment id {comment_id!r}") from None

    def ids(self) -> list[str]:
        return [c.id for c in self.comments]

    @property
    def stats(self) -> SentimentDistribution:
        return SentimentDistribution.from_labels(c.sentiment for c in self.comments)

    def with_sentiments(self, labels: dict[str, SentimentLabel]) -> "Corpus":
        """New corpus with sentiment labels filled in (gold labels win)."""
        updated = []
        for c in self.comments:
            lab = c.gold_sentiment if c.gold_sentiment is not None else labels.get(c.id)
            updated.append(replace(c, sentiment=lab))
        return Corpus(tuple(updated))


_OPTIONAL_FIELDS = ("lang", "source")


def _parse_record(raw: str, lineno: int) -> Comment:
    try:
        rec = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"malformed record: {exc.msg}", lineno) from None
    if not isinstance(rec, dict):
        raise CorpusError("record is not an object", lineno)
    cid = rec.get("id")
    text = rec.get("text")
    if not isinstance(cid, str) or not cid:
        raise CorpusError("missing or invalid 'id'", lineno)
    if not isinstance(text, str) or not text:
        raise CorpusError("missing or empty 'text'", lineno)
    gold = None
    if rec.get("gold_sentiment") is not None:
        try:
            gold = SentimentLabel.parse(rec["gold_sentiment"])
        except ValueError as exc:
            raise CorpusError(str(exc), lineno) from None
    kwargs = {k: rec[k] for k in _OPTIONAL_FIELDS if isinstance(rec.get(k), str)}
    return Comment(id=cid, text=text, sentiment=gold, gold_sentiment=gold, **kwargs)


def ingest_corpus(source: Union[str, Path, IO[str]]) -> Corpus:
    """Read a line-delimited corpus file, preserving file order.

    Rejects duplicate ids, empty texts and malformed lines with the
    offending line number. Blank lines are skipped. Deterministic: the same
    file bytes always produce the same corpus.
    """
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        lines = Path(source).read_text(encoding="utf-8").splitlines()

    comments: list[Comment] = []
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        comment = _parse_record(raw, lineno)
        if comment.id in seen:
            raise CorpusError(
                f"duplicate id {comment.id!r} (first seen on line {seen[comment.id]})",
                lineno,
            )
        seen[comment.id] = lineno
        comments.append(comment)
    return Corpus(tuple(comments))


def serialize_corpus(corpus: Corpus) -> str:
    """Inverse of ingest_corpus: one JSON record per line, file order kept."""
    out = []
    for c in corpus.comments:
        rec: dict = {"id": c.id, "text": c.text}
        if c.gold_sentiment is not None:
            rec["gold_sentiment"] = c.gold_sentiment.value
        if c.lang is not None:
            rec["lang"] = c.lang
        if c.source is not None:
            rec["source"] = c.source
        out.append(json.dumps(rec, ensure_ascii=False))
    return "\n".join(out) + ("\n" if out else "")


def corpus_stats(
    corpus: Corpus, member_ids: Optional[Sequence[str]] = None
) -> SentimentDistribution:
    """Sentiment distribution of the corpus, optionally restricted to a subset.

    ``member_ids`` is typically the set of comments matching one topic; the
    returned fractions are the per-topic global terms used by the balance
    trigger. An empty scope yields all-zero counts and fractions.
    """
    if member_ids is None:
        return corpus.stats
    members = set(member_ids)
    return SentimentDistribution.from_labels(
        c.sentiment for c in corpus.comments if c.id in members
    )
